// test_scenario.cpp - scenario configs and CSV output

#include "cspin/error.hpp"
#include "cspin/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cspin;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("cspin_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_text(const std::function<void()>& f, ErrorCode expected) {
    try {
        f();
    } catch (const Error& e) {
        CHECK(e.code() == expected);
        return e.what();
    }
    FAIL("expected an error");
    return {};
}

ScenarioConfig small_config() {
    ScenarioConfig c;
    c.n_bath = 4;
    c.alpha_ratio = 0.02;
    c.t_max = 200.0;
    c.points = 41;
    c.initial = InitialKind::excited;
    c.methods = {"exact", "tcl2", "tcl2mod", "largen"};
    return c;
}

} // namespace

TEST_CASE("config text parsing and defaults") {
    const auto c = parse_config_text("# weak coupling\nn_bath = 6\nalpha_ratio=0.01\ninitial=excited  # comment\nmethods=tcl2,exact\n\n");
    CHECK(c.n_bath == 6);
    CHECK(c.k0_value() == 3.0);
    CHECK(c.t_max_value() == doctest::Approx(3000.0));
    CHECK(c.points == 6001);
    CHECK(c.initial == InitialKind::excited);
    CHECK(c.methods == std::vector<std::string>{"tcl2", "exact"});
    CHECK(c.window_value().second == doctest::Approx(3000.0));

    ScenarioConfig d = c;
    set_config_value(d, "t-max", "50");
    set_config_value(d, "window", "10:20");
    CHECK(d.t_max_value() == 50.0);
    CHECK(d.window_value() == std::pair{10.0, 20.0});
    validate_config(d);
}

TEST_CASE("config errors name the field") {
    ScenarioConfig c;
    CHECK(error_text([&] { set_config_value(c, "alpha_ratio", "abc"); }, ErrorCode::validation).find("alpha_ratio") != std::string::npos);
    CHECK(error_text([&] { set_config_value(c, "bogus", "1"); }, ErrorCode::validation).find("bogus") != std::string::npos);
    CHECK(error_text([&] { set_config_value(c, "methods", "exact,magic"); }, ErrorCode::validation).find("magic") != std::string::npos);
    CHECK(error_text([&] { parse_config_text("n_bath 4\n"); }, ErrorCode::validation).find("line 1") != std::string::npos);
    error_text([&] { load_config("/nonexistent/cspin.cfg"); }, ErrorCode::io);

    auto invalid = [&](const std::string& key, const std::string& value, const std::string& field) {
        ScenarioConfig x;
        set_config_value(x, key, value);
        CHECK(error_text([&] { validate_config(x); }, ErrorCode::validation).find(field) != std::string::npos);
    };
    invalid("points", "1", "points");
    invalid("t_max", "-3", "t_max");
    invalid("n_bath", "13", "n_bath");
    invalid("window", "0:5000", "window");
    invalid("alpha_ratio", "0", "alpha_ratio");
    invalid("methods", "largen", "initial");
    ScenarioConfig x;
    x.methods.clear();
    CHECK(error_text([&] { validate_config(x); }, ErrorCode::validation).find("methods") != std::string::npos);
    x = ScenarioConfig{};
    x.n_bath = 1;
    x.methods = {"tcl2mod"};
    CHECK(error_text([&] { validate_config(x); }, ErrorCode::validation).find("tcl2mod") != std::string::npos);
}

TEST_CASE("custom initial state via config keys") {
    auto c = parse_config_text("n_bath=4\ninitial=custom\nrho=0.6,0.1,-0.2\nbath_weights=0:0.5,1:0.5\nt_max=10\npoints=3\nmethods=exact,tcl2\n");
    validate_config(c);
    const auto init = scenario_initial(c);
    CHECK(init.population_plus() == doctest::Approx(0.6));
    CHECK(std::abs(init.coherence() - Complex(0.1, -0.2)) < 1e-15);
    CHECK(init.blocks[2].trace().real() == doctest::Approx(0.5));
    set_config_value(c, "rho", "1.5,0,0");
    CHECK(error_text([&] { validate_config(c); }, ErrorCode::validation).find("initial") != std::string::npos);
}

TEST_CASE("single method run reports timings only") {
    auto c = small_config();
    c.methods = {"tcl2"};
    const auto r = run_scenario(c);
    CHECK(r.records.size() == 1);
    CHECK(r.report.pairs.empty());
    REQUIRE(r.report.timings.size() == 1);
    CHECK(r.report.timings[0].seconds >= 0.0);
}

TEST_CASE("all methods on a shared grid") {
    const auto r = run_scenario(small_config());
    REQUIRE(r.records.size() == 4);
    CHECK(r.records[0].method == "exact");
    CHECK(r.records[3].method == "largen");
    CHECK(r.report.pairs.size() == 6);
    for (const auto& p : r.report.pairs) {
        CHECK(p.samples == 41);
        CHECK(p.p_plus.max_abs >= 0.0);
        CHECK(p.p_plus.rms <= p.p_plus.max_abs);
        CHECK(p.has_coherence == (p.second != "largen"));
    }
    CHECK(format_report(r.report).find("exact vs tcl2") != std::string::npos);
}

TEST_CASE("solver errors carry the method label") {
    auto c = small_config();
    c.initial = InitialKind::custom;
    c.custom_rho << 0.5, 0.0, 0.0, 0.5;
    c.methods = {"largen"};
    const auto msg = error_text([&] { run_scenario(c); }, ErrorCode::unsupported_state);
    CHECK(msg.rfind("largen:", 0) == 0);
}

TEST_CASE("CSV round trip is deterministic") {
    const auto dir = scratch("emit");
    auto c = small_config();
    const auto r = run_scenario(c);
    const auto files = emit_scenario(r, dir.string());
    CHECK(files.warnings.empty());
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(fs::exists(dir / "report.json"));
    const std::string manifest = slurp(dir / "manifest.json");
    CHECK(manifest.find("\"fingerprint\"") != std::string::npos);
    CHECK(manifest.find("n_bath=4") != std::string::npos);
    CHECK(manifest.find(library_version) != std::string::npos);

    std::vector<TrajectoryRecord> back;
    for (const auto& rec : r.records) {
        const auto parsed = read_csv((dir / (rec.method + ".csv")).string());
        CHECK(parsed.method == rec.method);
        REQUIRE(parsed.size() == rec.size());
        auto close = [](double a, double b) { return (std::isnan(a) && std::isnan(b)) || std::abs(a - b) <= 1e-11 * std::max(1.0, std::abs(a)); };
        for (std::size_t k = 0; k < rec.size(); ++k) {
            CHECK(close(parsed.times[k], rec.times[k]));
            CHECK(close(parsed.coherence_re[k], rec.coherence_re[k]));
            CHECK(close(parsed.coherence_im[k], rec.coherence_im[k]));
            CHECK(close(parsed.population[k], rec.population[k]));
        }
        back.push_back(parsed);
    }
    // the report recomputed from files matches the in-memory one
    const auto [lo, hi] = c.window_value();
    const auto again = compare_records(back, lo, hi);
    for (std::size_t i = 0; i < again.pairs.size(); ++i) {
        CHECK(std::abs(again.pairs[i].p_plus.max_abs - r.report.pairs[i].p_plus.max_abs) < 1e-10);
        CHECK(std::abs(again.pairs[i].p_plus.rms - r.report.pairs[i].p_plus.rms) < 1e-10);
        CHECK(std::abs(again.pairs[i].re_c.max_abs - r.report.pairs[i].re_c.max_abs) < 1e-10);
        CHECK(std::abs(again.pairs[i].im_c.rms - r.report.pairs[i].im_c.rms) < 1e-10);
    }

    const auto dir2 = scratch("emit2");
    emit_scenario(run_scenario(c), dir2.string());
    for (const auto& rec : r.records) CHECK(slurp(dir / (rec.method + ".csv")) == slurp(dir2 / (rec.method + ".csv")));
    CHECK(manifest == slurp(dir2 / "manifest.json"));
    fs::remove_all(dir);
    fs::remove_all(dir2);
}

TEST_CASE("CSV edge cases") {
    const auto dir = scratch("edge");
    const auto res = emit_csv({}, dir.string(), "n_bath=1\n", 42);
    CHECK(res.warnings.size() == 1);
    CHECK(res.files.size() == 1);
    CHECK(fs::exists(dir / "manifest.json"));

    TrajectoryRecord r;
    r.method = "tcl2";
    r.resize(2);
    r.times = {0.0, 0.5};
    r.set(0, Complex(0.5, 0.0), 1.0);
    r.set(1, Complex(0.25, -0.125), 0.75);
    const std::string csv = format_csv(r);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.rfind("t,re_C,im_C,P_plus,method\n", 0) == 0);
    CHECK(csv.find("0.5,0.25,-0.125,0.75,tcl2") != std::string::npos);

    // a directory path that runs through a regular file cannot be created
    std::ofstream(dir / "blocker") << "x";
    const auto msg = error_text([&] { emit_csv({r}, (dir / "blocker" / "sub").string(), "", 0); }, ErrorCode::io);
    CHECK(msg.find("blocker") != std::string::npos);
    error_text([&] { read_csv((dir / "missing.csv").string()); }, ErrorCode::io);
    fs::remove_all(dir);
}

TEST_CASE("sweep writes one directory per grid point") {
    const auto dir = scratch("sweep");
    auto c = small_config();
    c.methods = {"exact", "tcl2"};
    c.t_max.reset();
    c.points = 21;
    c.out_dir = dir.string();
    c.sweep_alpha_ratios = {0.05, 0.1};
    c.sweep_n_values = {2, 3};
    const auto pts = run_sweep(c);
    REQUIRE(pts.size() == 4);
    for (const auto& p : pts) {
        CHECK(fs::exists(fs::path(p.dir) / "exact.csv"));
        CHECK(p.report.pairs.size() == 1);
    }
    CHECK(pts[1].n_bath == 2);
    CHECK(pts[1].alpha_ratio == 0.1);
    fs::remove_all(dir);
}
