// scenario.hpp - Scenario configuration with comparison reports and CSV output

#pragma once

#include "cspin/model.hpp"
#include "cspin/trajectory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cspin {

inline constexpr const char* library_version = "0.1.0";

enum class InitialKind { superposition, excited, custom };

// Method labels accepted in configs: exact, tcl2, tcl2mod, largen.
bool is_known_method(const std::string& name);

struct ScenarioConfig {
    int n_bath{10};
    double alpha_ratio{0.01};          // alpha0 / omega0, omega0 = 1
    std::optional<double> k0;          // default N/2
    double exponent{2.0};
    InitialKind initial{InitialKind::superposition};
    Block custom_rho{Block::Zero()};   // used when initial == custom
    BathSpec bath{};                   // used when initial == custom
    std::optional<double> t_max;       // default 0.3 / alpha_ratio^2
    int points{6001};
    std::vector<std::string> methods{"exact", "tcl2"};
    std::string out_dir{"out"};
    std::optional<std::pair<double, double>> window;  // default [0, t_max]
    // sweep grid; empty means "the single value above"
    std::vector<double> sweep_alpha_ratios;
    std::vector<int> sweep_n_values;

    double k0_value() const { return k0 ? *k0 : 0.5 * n_bath; }
    double t_max_value() const { return t_max ? *t_max : 0.3 / (alpha_ratio * alpha_ratio); }
    std::pair<double, double> window_value() const { return window ? *window : std::pair{0.0, t_max_value()}; }
};

// Applies one key=value pair; throws Error(validation) naming the key on bad input.
void set_config_value(ScenarioConfig& config, const std::string& key, const std::string& value);
// Flat text: one key=value per line, '#' starts a comment.
ScenarioConfig parse_config_text(const std::string& text, ScenarioConfig base = {});
ScenarioConfig load_config(const std::string& path, ScenarioConfig base = {});
void validate_config(const ScenarioConfig& config);
// Canonical key=value lines, stable across runs.
std::string config_echo(const ScenarioConfig& config);

CouplingProfile scenario_profile(const ScenarioConfig& config);
BlockDensity scenario_initial(const ScenarioConfig& config);
std::vector<double> scenario_times(const ScenarioConfig& config);

struct DeviationStats {
    double max_abs{0.0};
    double rms{0.0};
};

struct PairReport {
    std::string first;
    std::string second;
    std::size_t samples{0};
    bool has_coherence{true};  // false when either method does not produce coherences
    DeviationStats re_c;
    DeviationStats im_c;
    DeviationStats p_plus;
};

struct MethodTiming {
    std::string method;
    double seconds{0.0};
};

struct ComparisonReport {
    double window_lo{0.0};
    double window_hi{0.0};
    std::vector<PairReport> pairs;
    std::vector<MethodTiming> timings;
};

// Pairwise deviations on the shared grid restricted to [lo, hi].
ComparisonReport compare_records(const std::vector<TrajectoryRecord>& records, double lo, double hi);
std::string format_report(const ComparisonReport& report);

struct ScenarioResult {
    ScenarioConfig config;
    CouplingProfile profile;
    BlockDensity initial;
    std::vector<TrajectoryRecord> records;
    ComparisonReport report;
};

ScenarioResult run_scenario(const ScenarioConfig& config);

struct EmitResult {
    std::vector<std::string> files;
    std::vector<std::string> warnings;
};

// One <method>.csv per record plus manifest.json. The manifest carries no timings so repeated
// runs produce identical bytes; report.json holds the comparison report and timings.
EmitResult emit_csv(const std::vector<TrajectoryRecord>& records, const std::string& dir, const std::string& echo,
                    std::uint64_t fingerprint);
EmitResult emit_scenario(const ScenarioResult& result, const std::string& dir);
std::string format_csv(const TrajectoryRecord& record);
TrajectoryRecord read_csv(const std::string& path);

struct SweepPoint {
    int n_bath{0};
    double alpha_ratio{0.0};
    std::string dir;
    ComparisonReport report;
};

// Grid over sweep_n_values x sweep_alpha_ratios, each point written to <out_dir>/n<N>_a<alpha>.
std::vector<SweepPoint> run_sweep(const ScenarioConfig& config);

} // namespace cspin
