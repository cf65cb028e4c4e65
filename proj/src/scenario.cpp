// scenario.cpp - Config parsing and solver dispatch

#include "cspin/scenario.hpp"
#include "cspin/error.hpp"
#include "cspin/exact.hpp"
#include "cspin/tcl2.hpp"
#include "cspin/tcl2_modified.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cspin {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> known_methods{"exact", "tcl2", "tcl2mod", "largen"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& why) { fail(ErrorCode::validation, key + ": " + why); }

double to_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) bad(key, "expected a finite number, got '" + text + "'");
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || v < -1000000000L || v > 1000000000L) bad(key, "expected an integer, got '" + text + "'");
    return static_cast<int>(v);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string initial_name(InitialKind k) {
    switch (k) {
    case InitialKind::superposition: return "superposition";
    case InitialKind::excited: return "excited";
    case InitialKind::custom: return "custom";
    }
    return "superposition";
}

DeviationStats finish(double max_abs, double sum_sq, std::size_t n) {
    return {max_abs, n ? std::sqrt(sum_sq / static_cast<double>(n)) : 0.0};
}

bool all_nan(const std::vector<double>& v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [](double x) { return std::isnan(x); });
}

} // namespace

bool is_known_method(const std::string& name) {
    return std::find(known_methods.begin(), known_methods.end(), name) != known_methods.end();
}

void set_config_value(ScenarioConfig& c, const std::string& raw_key, const std::string& value) {
    std::string key = trim(raw_key);
    std::replace(key.begin(), key.end(), '-', '_');
    if (key == "n_bath") {
        c.n_bath = to_int(key, value);
    } else if (key == "alpha_ratio" || key == "alpha0_over_omega0") {
        c.alpha_ratio = to_double(key, value);
    } else if (key == "k0") {
        c.k0 = to_double(key, value);
    } else if (key == "exponent") {
        c.exponent = to_double(key, value);
    } else if (key == "initial") {
        const std::string v = trim(value);
        if (v == "superposition") c.initial = InitialKind::superposition;
        else if (v == "excited") c.initial = InitialKind::excited;
        else if (v == "custom") c.initial = InitialKind::custom;
        else bad(key, "expected superposition, excited or custom, got '" + v + "'");
    } else if (key == "rho") {
        // p_plus, re_c, im_c
        const auto parts = split(value, ',');
        if (parts.size() != 3) bad(key, "expected 'p_plus,re_c,im_c'");
        const double p = to_double(key, parts[0]);
        const Complex coh(to_double(key, parts[1]), to_double(key, parts[2]));
        c.custom_rho << p, coh, std::conj(coh), 1.0 - p;
    } else if (key == "bath_weights") {
        std::map<double, double> w;
        for (const auto& item : split(value, ',')) {
            const auto mw = split(item, ':');
            if (mw.size() != 2) bad(key, "expected comma-separated 'm:weight' pairs");
            w[to_double(key, mw[0])] = to_double(key, mw[1]);
        }
        c.bath = w.empty() ? BathSpec::unpolarized() : BathSpec::sector(std::move(w));
    } else if (key == "t_max") {
        c.t_max = to_double(key, value);
    } else if (key == "points" || key == "n_points") {
        c.points = to_int(key, value);
    } else if (key == "methods") {
        c.methods = split(value, ',');
        for (const auto& m : c.methods) {
            if (!is_known_method(m)) bad(key, "unknown method '" + m + "' (known: exact, tcl2, tcl2mod, largen)");
        }
    } else if (key == "out_dir") {
        c.out_dir = trim(value);
    } else if (key == "window") {
        auto parts = split(value, ':');
        if (parts.size() != 2) parts = split(value, ',');
        if (parts.size() != 2) bad(key, "expected 'lo:hi'");
        c.window = std::pair{to_double(key, parts[0]), to_double(key, parts[1])};
    } else if (key == "sweep_alpha_ratios" || key == "alpha_ratios") {
        c.sweep_alpha_ratios.clear();
        for (const auto& s : split(value, ',')) c.sweep_alpha_ratios.push_back(to_double(key, s));
    } else if (key == "sweep_n_values" || key == "n_values") {
        c.sweep_n_values.clear();
        for (const auto& s : split(value, ',')) c.sweep_n_values.push_back(to_int(key, s));
    } else {
        bad(key.empty() ? std::string("<empty>") : key, "unknown configuration key");
    }
}

ScenarioConfig parse_config_text(const std::string& text, ScenarioConfig base) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(ErrorCode::validation, "config line " + std::to_string(lineno) + ": expected key=value");
        set_config_value(base, line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

ScenarioConfig load_config(const std::string& path, ScenarioConfig base) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), std::move(base));
}

void validate_config(const ScenarioConfig& c) {
    if (c.n_bath < 1) bad("n_bath", "must be >= 1");
    if (!(c.alpha_ratio > 0.0)) bad("alpha_ratio", "must be > 0");
    if (!(c.k0_value() > 0.0)) bad("k0", "must be > 0");
    if (!(c.exponent > 0.0)) bad("exponent", "must be > 0");
    if (!(c.t_max_value() > 0.0)) bad("t_max", "must be > 0");
    if (c.points < 2) bad("points", "must be >= 2");
    if (c.methods.empty()) bad("methods", "must name at least one method");
    std::vector<std::string> seen;
    for (const auto& m : c.methods) {
        if (!is_known_method(m)) bad("methods", "unknown method '" + m + "'");
        if (std::find(seen.begin(), seen.end(), m) != seen.end()) bad("methods", "duplicate method '" + m + "'");
        seen.push_back(m);
    }
    auto wants = [&](const char* m) { return std::find(c.methods.begin(), c.methods.end(), m) != c.methods.end(); };
    if (wants("exact") && c.n_bath > default_exact_cap) {
        bad("n_bath", "exact propagation is limited to n_bath <= " + std::to_string(default_exact_cap));
    }
    if (wants("tcl2") && c.n_bath > default_enumeration_cap) {
        bad("n_bath", "tcl2 sector enumeration is limited to n_bath <= " + std::to_string(default_enumeration_cap));
    }
    if (wants("tcl2mod") && c.n_bath < 2) bad("methods", "tcl2mod requires n_bath >= 2");
    if (wants("largen") && c.initial == InitialKind::superposition) bad("initial", "largen requires an excited initial state");
    const auto [lo, hi] = c.window_value();
    if (!(lo >= 0.0 && hi <= c.t_max_value() && lo < hi)) bad("window", "must satisfy 0 <= lo < hi <= t_max");
    if (c.initial == InitialKind::custom) {
        try {
            validate_density_matrix(c.custom_rho, "rho");
            (void)bath_sector_weights(c.n_bath, c.bath);
        } catch (const Error& e) {
            fail(ErrorCode::validation, std::string("initial: ") + e.what());
        }
    }
}

std::string config_echo(const ScenarioConfig& c) {
    std::ostringstream out;
    out << "n_bath=" << c.n_bath << '\n';
    out << "alpha_ratio=" << fmt(c.alpha_ratio) << '\n';
    out << "k0=" << fmt(c.k0_value()) << '\n';
    out << "exponent=" << fmt(c.exponent) << '\n';
    out << "initial=" << initial_name(c.initial) << '\n';
    if (c.initial == InitialKind::custom) {
        out << "rho=" << fmt(c.custom_rho(0, 0).real()) << ',' << fmt(c.custom_rho(0, 1).real()) << ',' << fmt(c.custom_rho(0, 1).imag()) << '\n';
        if (c.bath.kind == BathSpec::Kind::sector_weights) {
            out << "bath_weights=";
            bool first = true;
            for (const auto& [m, w] : c.bath.weights) {
                out << (first ? "" : ",") << fmt(m) << ':' << fmt(w);
                first = false;
            }
            out << '\n';
        }
    }
    out << "t_max=" << fmt(c.t_max_value()) << '\n';
    out << "points=" << c.points << '\n';
    out << "methods=";
    for (std::size_t i = 0; i < c.methods.size(); ++i) out << (i ? "," : "") << c.methods[i];
    out << '\n';
    const auto [lo, hi] = c.window_value();
    out << "window=" << fmt(lo) << ':' << fmt(hi) << '\n';
    return out.str();
}

CouplingProfile scenario_profile(const ScenarioConfig& c) {
    return build_couplings(c.n_bath, 1.0, c.alpha_ratio, c.k0_value(), c.exponent);
}

BlockDensity scenario_initial(const ScenarioConfig& c) {
    switch (c.initial) {
    case InitialKind::excited: return initial_block_state(excited_state(), c.n_bath, BathSpec::unpolarized());
    case InitialKind::custom: return initial_block_state(c.custom_rho, c.n_bath, c.bath);
    case InitialKind::superposition: break;
    }
    return initial_block_state(superposition_state(), c.n_bath, BathSpec::unpolarized());
}

std::vector<double> scenario_times(const ScenarioConfig& c) {
    const double t_max = c.t_max_value();
    const auto n = static_cast<std::size_t>(c.points);
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
    return t;
}

ComparisonReport compare_records(const std::vector<TrajectoryRecord>& records, double lo, double hi) {
    ComparisonReport rep;
    rep.window_lo = lo;
    rep.window_hi = hi;
    for (std::size_t a = 0; a < records.size(); ++a) {
        for (std::size_t b = a + 1; b < records.size(); ++b) {
            const auto& ra = records[a];
            const auto& rb = records[b];
            if (ra.size() != rb.size()) fail(ErrorCode::invalid_argument, "compare_records: " + ra.method + " and " + rb.method + " use different grids");
            PairReport pr;
            pr.first = ra.method;
            pr.second = rb.method;
            pr.has_coherence = !all_nan(ra.coherence_re) && !all_nan(rb.coherence_re);
            double m_re = 0.0, m_im = 0.0, m_p = 0.0, s_re = 0.0, s_im = 0.0, s_p = 0.0;
            for (std::size_t k = 0; k < ra.size(); ++k) {
                if (ra.times[k] < lo || ra.times[k] > hi) continue;
                if (std::abs(ra.times[k] - rb.times[k]) > 1e-12 * std::max(1.0, std::abs(ra.times[k]))) {
                    fail(ErrorCode::invalid_argument, "compare_records: " + ra.method + " and " + rb.method + " use different grids");
                }
                ++pr.samples;
                const double dp = std::abs(ra.population[k] - rb.population[k]);
                m_p = std::max(m_p, dp);
                s_p += dp * dp;
                if (pr.has_coherence) {
                    const double dr = std::abs(ra.coherence_re[k] - rb.coherence_re[k]);
                    const double di = std::abs(ra.coherence_im[k] - rb.coherence_im[k]);
                    m_re = std::max(m_re, dr);
                    m_im = std::max(m_im, di);
                    s_re += dr * dr;
                    s_im += di * di;
                }
            }
            pr.re_c = finish(m_re, s_re, pr.samples);
            pr.im_c = finish(m_im, s_im, pr.samples);
            pr.p_plus = finish(m_p, s_p, pr.samples);
            rep.pairs.push_back(pr);
        }
    }
    return rep;
}

std::string format_report(const ComparisonReport& rep) {
    std::ostringstream out;
    out << "window [" << fmt(rep.window_lo) << ", " << fmt(rep.window_hi) << "]\n";
    for (const auto& t : rep.timings) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "  %-8s %9.3f s\n", t.method.c_str(), t.seconds);
        out << buf;
    }
    for (const auto& p : rep.pairs) {
        char buf[256];
        if (p.has_coherence) {
            std::snprintf(buf, sizeof buf, "  %s vs %s: max|dReC| %.3e  max|dImC| %.3e  max|dP+| %.3e  (rms %.3e %.3e %.3e)\n", p.first.c_str(),
                          p.second.c_str(), p.re_c.max_abs, p.im_c.max_abs, p.p_plus.max_abs, p.re_c.rms, p.im_c.rms, p.p_plus.rms);
        } else {
            std::snprintf(buf, sizeof buf, "  %s vs %s: max|dP+| %.3e  (rms %.3e)\n", p.first.c_str(), p.second.c_str(), p.p_plus.max_abs,
                          p.p_plus.rms);
        }
        out << buf;
    }
    return out.str();
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
    validate_config(config);
    ScenarioResult res;
    res.config = config;
    res.profile = scenario_profile(config);
    res.initial = scenario_initial(config);
    const auto times = scenario_times(config);

    std::vector<MethodTiming> timings;
    // fixed dispatch order keeps the output order independent of how methods were listed
    for (const auto& method : known_methods) {
        if (std::find(config.methods.begin(), config.methods.end(), method) == config.methods.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        try {
            if (method == "exact") {
                res.records.push_back(evolve_exact(build_sector_hamiltonians(res.profile), res.initial, times));
            } else if (method == "tcl2") {
                res.records.push_back(tcl2_trajectory(make_tcl2_model(res.profile, res.initial), times));
            } else if (method == "tcl2mod") {
                res.records.push_back(mod_trajectory(modified_params(res.profile), res.profile, res.initial, times));
            } else {
                res.records.push_back(large_n_trajectory(res.profile, res.initial, times));
            }
        } catch (const Error& e) {
            fail(e.code(), method + ": " + e.what());
        }
        timings.push_back({method, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
    }
    const auto [lo, hi] = config.window_value();
    res.report = compare_records(res.records, lo, hi);
    res.report.timings = std::move(timings);
    return res;
}

std::string format_csv(const TrajectoryRecord& r) {
    std::string out = "t,re_C,im_C,P_plus,method\n";
    char buf[160];
    for (std::size_t k = 0; k < r.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,", r.times[k], r.coherence_re[k], r.coherence_im[k], r.population[k]);
        out += buf;
        out += r.method;
        out += '\n';
    }
    return out;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::io, "cannot open '" + path.string() + "' for writing");
    out << content;
    out.close();
    if (!out) fail(ErrorCode::io, "failed writing '" + path.string() + "'");
}

void make_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorCode::io, "cannot create directory '" + dir + "': " + ec.message());
}

nlohmann::json report_json(const ComparisonReport& rep) {
    nlohmann::json j;
    j["window"] = {rep.window_lo, rep.window_hi};
    j["pairs"] = nlohmann::json::array();
    for (const auto& p : rep.pairs) {
        nlohmann::json e{{"first", p.first}, {"second", p.second}, {"samples", p.samples}, {"p_plus", {{"max_abs", p.p_plus.max_abs}, {"rms", p.p_plus.rms}}}};
        if (p.has_coherence) {
            e["re_c"] = {{"max_abs", p.re_c.max_abs}, {"rms", p.re_c.rms}};
            e["im_c"] = {{"max_abs", p.im_c.max_abs}, {"rms", p.im_c.rms}};
        }
        j["pairs"].push_back(e);
    }
    j["timings_s"] = nlohmann::json::object();
    for (const auto& t : rep.timings) j["timings_s"][t.method] = t.seconds;
    return j;
}

std::string hex(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

EmitResult emit_csv(const std::vector<TrajectoryRecord>& records, const std::string& dir, const std::string& echo, std::uint64_t fingerprint) {
    make_dir(dir);
    EmitResult res;
    nlohmann::json manifest;
    manifest["tool"] = "cspin";
    manifest["version"] = library_version;
    manifest["fingerprint"] = hex(fingerprint);
    manifest["config"] = echo;
    manifest["files"] = nlohmann::json::array();
    if (records.empty()) res.warnings.push_back("no trajectory records; wrote manifest only");
    for (const auto& r : records) {
        if (!records.empty() && r.times != records.front().times) {
            fail(ErrorCode::invalid_argument, "emit_csv: record '" + r.method + "' does not share the time grid");
        }
        const fs::path path = fs::path(dir) / (r.method + ".csv");
        write_file(path, format_csv(r));
        res.files.push_back(path.string());
        manifest["files"].push_back({{"method", r.method}, {"file", path.filename().string()}, {"rows", r.size()}});
    }
    const fs::path mpath = fs::path(dir) / "manifest.json";
    write_file(mpath, manifest.dump(2) + "\n");
    res.files.push_back(mpath.string());
    return res;
}

EmitResult emit_scenario(const ScenarioResult& result, const std::string& dir) {
    auto res = emit_csv(result.records, dir, config_echo(result.config), model_fingerprint(result.profile, result.initial));
    const fs::path rpath = fs::path(dir) / "report.json";
    write_file(rpath, report_json(result.report).dump(2) + "\n");
    res.files.push_back(rpath.string());
    return res;
}

TrajectoryRecord read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || trim(line) != "t,re_C,im_C,P_plus,method") fail(ErrorCode::io, path + ": missing CSV header");
    TrajectoryRecord r;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 5) fail(ErrorCode::io, path + ":" + std::to_string(lineno) + ": expected 5 columns");
        auto num = [&](const std::string& s) {
            char* end = nullptr;
            const double v = std::strtod(s.c_str(), &end);
            if (end != s.c_str() + s.size()) fail(ErrorCode::io, path + ":" + std::to_string(lineno) + ": bad number '" + s + "'");
            return v;
        };
        r.times.push_back(num(cols[0]));
        r.coherence_re.push_back(num(cols[1]));
        r.coherence_im.push_back(num(cols[2]));
        r.population.push_back(num(cols[3]));
        if (r.method.empty()) r.method = cols[4];
        else if (r.method != cols[4]) fail(ErrorCode::io, path + ":" + std::to_string(lineno) + ": mixed method labels");
    }
    return r;
}

std::vector<SweepPoint> run_sweep(const ScenarioConfig& config) {
    const auto alphas = config.sweep_alpha_ratios.empty() ? std::vector<double>{config.alpha_ratio} : config.sweep_alpha_ratios;
    const auto ns = config.sweep_n_values.empty() ? std::vector<int>{config.n_bath} : config.sweep_n_values;
    std::vector<SweepPoint> out;
    for (int n : ns) {
        for (double a : alphas) {
            ScenarioConfig point = config;
            point.n_bath = n;
            point.alpha_ratio = a;
            point.sweep_alpha_ratios.clear();
            point.sweep_n_values.clear();
            const std::string dir = (fs::path(config.out_dir) / ("n" + std::to_string(n) + "_a" + fmt(a))).string();
            point.out_dir = dir;
            auto result = run_scenario(point);
            emit_scenario(result, dir);
            out.push_back({n, a, dir, std::move(result.report)});
        }
    }
    return out;
}

} // namespace cspin
