// c_api.cpp - extern "C" wrappers: exceptions become status codes, objects become opaque handles

#include "cspin/cspin.h"

#include "cspin/acceptance.hpp"
#include "cspin/error.hpp"
#include "cspin/exact.hpp"
#include "cspin/scenario.hpp"
#include "cspin/tcl2.hpp"
#include "cspin/tcl2_modified.hpp"

#include <new>
#include <string>

struct cspin_model {
    cspin::CouplingProfile profile;
};

struct cspin_trajectory {
    cspin::TrajectoryRecord record;
};

struct cspin_scenario {
    cspin::ScenarioConfig config;
    std::string echo;
    std::string report;
    std::string warnings;
};

namespace {

thread_local std::string last_error;

cspin_status to_status(cspin::ErrorCode code) {
    switch (code) {
    case cspin::ErrorCode::invalid_argument: return CSPIN_ERR_INVALID_ARGUMENT;
    case cspin::ErrorCode::resource_limit: return CSPIN_ERR_RESOURCE_LIMIT;
    case cspin::ErrorCode::unsupported_state: return CSPIN_ERR_UNSUPPORTED_STATE;
    case cspin::ErrorCode::integrator_failure: return CSPIN_ERR_INTEGRATOR;
    case cspin::ErrorCode::io: return CSPIN_ERR_IO;
    case cspin::ErrorCode::validation: return CSPIN_ERR_VALIDATION;
    }
    return CSPIN_ERR_INTERNAL;
}

template <class F>
cspin_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return CSPIN_OK;
    } catch (const cspin::Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return CSPIN_ERR_RESOURCE_LIMIT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return CSPIN_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return CSPIN_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) cspin::fail(cspin::ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

cspin::BlockDensity make_initial(int n, const cspin_initial* init) {
    if (!init) return cspin::initial_block_state(cspin::excited_state(), n, cspin::BathSpec::unpolarized());
    const cspin::Complex c(init->coherence_re, init->coherence_im);
    cspin::Block rho;
    rho << init->p_plus, c, std::conj(c), 1.0 - init->p_plus;
    cspin::BathSpec bath;
    if (init->sector_weights) {
        std::map<double, double> w;
        for (int j = 0; j <= n; ++j) w[cspin::sector_m(n, j)] = init->sector_weights[j];
        bath = cspin::BathSpec::sector(std::move(w));
    }
    return cspin::initial_block_state(rho, n, bath);
}

} // namespace

extern "C" {

const char* cspin_last_error(void) { return last_error.c_str(); }

const char* cspin_version(void) { return cspin::library_version; }

const char* cspin_status_string(cspin_status status) {
    switch (status) {
    case CSPIN_OK: return "ok";
    case CSPIN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CSPIN_ERR_RESOURCE_LIMIT: return "resource limit";
    case CSPIN_ERR_UNSUPPORTED_STATE: return "unsupported state";
    case CSPIN_ERR_INTEGRATOR: return "integrator failure";
    case CSPIN_ERR_IO: return "i/o error";
    case CSPIN_ERR_VALIDATION: return "validation error";
    case CSPIN_ERR_INTERNAL: break;
    }
    return "internal error";
}

cspin_status cspin_state_space_dimension(int n_bath, uint64_t* out) {
    return guarded([&] {
        need(out, "out");
        *out = cspin::state_space_dimension(n_bath);
    });
}

cspin_status cspin_model_create(int n_bath, double omega0, double alpha0, double k0, double exponent, cspin_model** out) {
    return guarded([&] {
        need(out, "out");
        *out = new cspin_model{cspin::build_couplings(n_bath, omega0, alpha0, k0, exponent)};
    });
}

cspin_status cspin_model_create_from_couplings(const double* alphas, int n_bath, double omega0, cspin_model** out) {
    return guarded([&] {
        need(out, "out");
        need(alphas, "alphas");
        if (n_bath < 1) cspin::fail(cspin::ErrorCode::invalid_argument, "n_bath must be >= 1");
        *out = new cspin_model{cspin::couplings_from_values(std::span<const double>(alphas, static_cast<std::size_t>(n_bath)), omega0)};
    });
}

void cspin_model_destroy(cspin_model* model) { delete model; }

cspin_status cspin_model_n_bath(const cspin_model* model, int* out) {
    return guarded([&] {
        need(model, "model");
        need(out, "out");
        *out = model->profile.n_bath;
    });
}

cspin_status cspin_model_beta(const cspin_model* model, double* out) {
    return guarded([&] {
        need(model, "model");
        need(out, "out");
        *out = model->profile.beta();
    });
}

cspin_status cspin_model_moments(const cspin_model* model, double* a1, double* a2) {
    return guarded([&] {
        need(model, "model");
        if (a1) *a1 = model->profile.a1;
        if (a2) *a2 = model->profile.a2;
    });
}

cspin_status cspin_solve(const cspin_model* model, cspin_method method, const cspin_initial* initial, const double* times, size_t n_times,
                         cspin_trajectory** out) {
    return guarded([&] {
        need(model, "model");
        need(out, "out");
        if (n_times > 0) need(times, "times");
        *out = nullptr;
        const auto& prof = model->profile;
        const auto init = make_initial(prof.n_bath, initial);
        const std::vector<double> t(times, times + n_times);
        cspin::TrajectoryRecord rec;
        switch (method) {
        case CSPIN_METHOD_EXACT: rec = cspin::evolve_exact(cspin::build_sector_hamiltonians(prof), init, t); break;
        case CSPIN_METHOD_TCL2: rec = cspin::tcl2_trajectory(cspin::make_tcl2_model(prof, init), t); break;
        case CSPIN_METHOD_TCL2MOD: {
            if (prof.n_bath < 2) cspin::fail(cspin::ErrorCode::unsupported_state, "tcl2mod requires n_bath >= 2");
            rec = cspin::mod_trajectory(cspin::modified_params(prof), prof, init, t);
            break;
        }
        case CSPIN_METHOD_LARGEN: rec = cspin::large_n_trajectory(prof, init, t); break;
        case CSPIN_METHOD_TCL2_ODE: {
            const auto m = cspin::make_tcl2_model(prof, init);
            rec = cspin::tcl2_record_from_blocks(m, cspin::integrate_blocks(m, t));
            break;
        }
        case CSPIN_METHOD_TCL2MOD_ODE: {
            const auto p = cspin::modified_params(prof);
            rec = cspin::mod_record_from_blocks(p, prof, init, cspin::integrate_blocks_mod(p, prof, init, t));
            break;
        }
        default: cspin::fail(cspin::ErrorCode::invalid_argument, "unknown method");
        }
        *out = new cspin_trajectory{std::move(rec)};
    });
}

void cspin_trajectory_destroy(cspin_trajectory* traj) { delete traj; }

size_t cspin_trajectory_size(const cspin_trajectory* traj) { return traj ? traj->record.size() : 0; }

const char* cspin_trajectory_method(const cspin_trajectory* traj) { return traj ? traj->record.method.c_str() : ""; }

cspin_status cspin_trajectory_copy(const cspin_trajectory* traj, double* t, double* coherence_re, double* coherence_im, double* population) {
    return guarded([&] {
        need(traj, "trajectory");
        const auto& r = traj->record;
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (t) t[k] = r.times[k];
            if (coherence_re) coherence_re[k] = r.coherence_re[k];
            if (coherence_im) coherence_im[k] = r.coherence_im[k];
            if (population) population[k] = r.population[k];
        }
    });
}

cspin_status cspin_scenario_create(cspin_scenario** out) {
    return guarded([&] {
        need(out, "out");
        *out = new cspin_scenario{};
    });
}

void cspin_scenario_destroy(cspin_scenario* scenario) { delete scenario; }

cspin_status cspin_scenario_load(cspin_scenario* scenario, const char* path) {
    return guarded([&] {
        need(scenario, "scenario");
        need(path, "path");
        scenario->config = cspin::load_config(path, scenario->config);
    });
}

cspin_status cspin_scenario_set(cspin_scenario* scenario, const char* key, const char* value) {
    return guarded([&] {
        need(scenario, "scenario");
        need(key, "key");
        need(value, "value");
        cspin::set_config_value(scenario->config, key, value);
    });
}

const char* cspin_scenario_echo(cspin_scenario* scenario) {
    if (!scenario) return "";
    scenario->echo = cspin::config_echo(scenario->config);
    return scenario->echo.c_str();
}

cspin_status cspin_scenario_run(cspin_scenario* scenario) {
    return guarded([&] {
        need(scenario, "scenario");
        scenario->report.clear();
        scenario->warnings.clear();
        const auto result = cspin::run_scenario(scenario->config);
        const auto emitted = cspin::emit_scenario(result, scenario->config.out_dir);
        scenario->report = cspin::format_report(result.report);
        for (const auto& w : emitted.warnings) scenario->warnings += w + "\n";
    });
}

cspin_status cspin_scenario_sweep(cspin_scenario* scenario) {
    return guarded([&] {
        need(scenario, "scenario");
        scenario->report.clear();
        scenario->warnings.clear();
        for (const auto& point : cspin::run_sweep(scenario->config)) {
            scenario->report += "n_bath=" + std::to_string(point.n_bath) + " alpha_ratio=" + std::to_string(point.alpha_ratio) + " -> " + point.dir + "\n";
            scenario->report += cspin::format_report(point.report);
        }
    });
}

const char* cspin_scenario_report(const cspin_scenario* scenario) { return scenario ? scenario->report.c_str() : ""; }

const char* cspin_scenario_warnings(const cspin_scenario* scenario) { return scenario ? scenario->warnings.c_str() : ""; }

int cspin_check_count(void) { return cspin::acceptance_criterion_count; }

cspin_status cspin_check(const int* ids, size_t n_ids, cspin_check_callback callback, void* user, int* n_failed) {
    return guarded([&] {
        if (n_ids > 0) need(ids, "ids");
        const std::vector<int> sel(ids, ids + n_ids);
        int failed = 0;
        cspin::run_acceptance(sel, [&](const cspin::CriterionResult& r) {
            if (!r.passed) ++failed;
            if (callback) callback(r.id, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), r.seconds, user);
        });
        if (n_failed) *n_failed = failed;
    });
}

} // extern "C"
