// cspin_cli.cpp - Command-line harness over the C API

#include "cspin/cspin.h"

#include <CLI11.hpp>

#include <cstdio>
#include <deque>
#include <string>
#include <utility>
#include <vector>

namespace {

enum Exit { ok = 0, validation = 1, solver = 2, check_failed = 3 };

int exit_code(cspin_status s) {
    switch (s) {
    case CSPIN_OK: return ok;
    case CSPIN_ERR_INVALID_ARGUMENT:
    case CSPIN_ERR_VALIDATION:
    case CSPIN_ERR_IO: return validation;
    default: return solver;
    }
}

int report_error(cspin_status s) {
    std::fprintf(stderr, "error (%s): %s\n", cspin_status_string(s), cspin_last_error());
    return exit_code(s);
}

struct ScenarioFlags {
    std::string config_path;
    std::vector<std::pair<std::string, CLI::Option*>> options;
    std::deque<std::pair<std::string, std::string>> values;  // stable addresses for CLI11 bindings

    void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        values.emplace_back(key, "");
        options.emplace_back(key, nullptr);
        options.back().second = app->add_option(flag, values.back().second, help);
    }

    void attach(CLI::App* app) {
        app->add_option("config", config_path, "Scenario file with key=value lines");
        add(app, "--n-bath", "n_bath", "Number of bath spins N");
        add(app, "--alpha-ratio", "alpha_ratio", "Coupling scale alpha0/omega0");
        add(app, "--k0", "k0", "Profile width (default N/2)");
        add(app, "--exponent", "exponent", "Profile exponent (default 2)");
        add(app, "--initial", "initial", "superposition | excited | custom");
        add(app, "--rho", "rho", "Custom central state 'p_plus,re_c,im_c'");
        add(app, "--bath-weights", "bath_weights", "Custom sector weights 'm:w,...'");
        add(app, "--t-max", "t_max", "End of the time grid (default 0.3/alpha_ratio^2)");
        add(app, "--points", "points", "Number of grid points (default 6001)");
        add(app, "--methods", "methods", "Comma list of exact,tcl2,tcl2mod,largen");
        add(app, "--out-dir", "out_dir", "Output directory (default out)");
        add(app, "--window", "window", "Comparison window 'lo:hi'");
    }

    cspin_status apply(cspin_scenario* sc) const {
        if (!config_path.empty()) {
            if (auto s = cspin_scenario_load(sc, config_path.c_str()); s != CSPIN_OK) return s;
        }
        for (std::size_t i = 0; i < options.size(); ++i) {
            if (options[i].second->count() == 0) continue;
            if (auto s = cspin_scenario_set(sc, values[i].first.c_str(), values[i].second.c_str()); s != CSPIN_OK) return s;
        }
        return CSPIN_OK;
    }
};

void print_criterion(int id, const char* name, int passed, const char* detail, double seconds, void*) {
    std::printf("[%s] %2d %s (%.1f s): %s\n", passed ? "PASS" : "FAIL", id, name, seconds, detail);
    std::fflush(stdout);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Central spin decoherence: exact propagation and TCL2 master equations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cspin_version()));

    auto* run = app.add_subcommand("run", "Run one scenario and write CSV trajectories");
    ScenarioFlags run_flags;
    run_flags.attach(run);

    auto* sweep = app.add_subcommand("sweep", "Run a grid over alpha0/omega0 and N");
    ScenarioFlags sweep_flags;
    sweep_flags.attach(sweep);
    std::string alpha_ratios;
    std::string n_values;
    auto* alpha_opt = sweep->add_option("--alpha-ratios", alpha_ratios, "Comma list of alpha0/omega0 values");
    auto* n_opt = sweep->add_option("--n-values", n_values, "Comma list of N values");

    auto* check = app.add_subcommand("check", "Run the acceptance suite and print pass/fail per criterion");
    std::vector<int> only;
    check->add_option("--only", only, "Criterion ids to run (default all)")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : validation;
    }

    if (check->parsed()) {
        int failed = 0;
        const cspin_status s = cspin_check(only.data(), only.size(), print_criterion, nullptr, &failed);
        if (s != CSPIN_OK) return report_error(s);
        std::printf("%d of %zu criteria failed\n", failed, only.empty() ? static_cast<std::size_t>(cspin_check_count()) : only.size());
        return failed ? check_failed : ok;
    }

    cspin_scenario* sc = nullptr;
    if (auto s = cspin_scenario_create(&sc); s != CSPIN_OK) return report_error(s);
    struct Guard {
        cspin_scenario* p;
        ~Guard() { cspin_scenario_destroy(p); }
    } guard{sc};

    const bool is_sweep = sweep->parsed();
    cspin_status s = (is_sweep ? sweep_flags : run_flags).apply(sc);
    if (s == CSPIN_OK && is_sweep && alpha_opt->count()) s = cspin_scenario_set(sc, "sweep_alpha_ratios", alpha_ratios.c_str());
    if (s == CSPIN_OK && is_sweep && n_opt->count()) s = cspin_scenario_set(sc, "sweep_n_values", n_values.c_str());
    if (s != CSPIN_OK) return report_error(s);

    s = is_sweep ? cspin_scenario_sweep(sc) : cspin_scenario_run(sc);
    if (s != CSPIN_OK) return report_error(s);
    std::fputs(cspin_scenario_warnings(sc), stderr);
    std::fputs(cspin_scenario_report(sc), stdout);
    return ok;
}
