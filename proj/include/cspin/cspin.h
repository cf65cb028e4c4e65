/* cspin.h - C interface to the central spin solver library */
#pragma once

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CSPIN_API __declspec(dllexport)
#else
#define CSPIN_API __attribute__((visibility("default")))
#endif

typedef enum cspin_status {
    CSPIN_OK = 0,
    CSPIN_ERR_INVALID_ARGUMENT = 1,
    CSPIN_ERR_RESOURCE_LIMIT = 2,
    CSPIN_ERR_UNSUPPORTED_STATE = 3,
    CSPIN_ERR_INTEGRATOR = 4,
    CSPIN_ERR_IO = 5,
    CSPIN_ERR_VALIDATION = 6,
    CSPIN_ERR_INTERNAL = 7
} cspin_status;

typedef enum cspin_method {
    CSPIN_METHOD_EXACT = 0,
    CSPIN_METHOD_TCL2 = 1,
    CSPIN_METHOD_TCL2MOD = 2,
    CSPIN_METHOD_LARGEN = 3,
    CSPIN_METHOD_TCL2_ODE = 4,
    CSPIN_METHOD_TCL2MOD_ODE = 5
} cspin_method;

typedef struct cspin_model cspin_model;
typedef struct cspin_trajectory cspin_trajectory;
typedef struct cspin_scenario cspin_scenario;

/* Central spin state rho_S = [[p_plus, c], [c*, 1 - p_plus]] times a bath that is block diagonal in
 * the J3 sectors. sector_weights holds n_bath + 1 weights indexed by the number of up bath spins,
 * or NULL for the unpolarized bath. */
typedef struct cspin_initial {
    double p_plus;
    double coherence_re;
    double coherence_im;
    const double* sector_weights;
} cspin_initial;

/* Thread-local message for the most recent failing call on this thread. */
CSPIN_API const char* cspin_last_error(void);
CSPIN_API const char* cspin_version(void);
CSPIN_API const char* cspin_status_string(cspin_status status);

CSPIN_API cspin_status cspin_state_space_dimension(int n_bath, uint64_t* out);

/* alpha_k = alpha0 exp(-(k/k0)^exponent), k = 1..n_bath */
CSPIN_API cspin_status cspin_model_create(int n_bath, double omega0, double alpha0, double k0, double exponent, cspin_model** out);
CSPIN_API cspin_status cspin_model_create_from_couplings(const double* alphas, int n_bath, double omega0, cspin_model** out);
CSPIN_API void cspin_model_destroy(cspin_model* model);
CSPIN_API cspin_status cspin_model_n_bath(const cspin_model* model, int* out);
CSPIN_API cspin_status cspin_model_beta(const cspin_model* model, double* out);
CSPIN_API cspin_status cspin_model_moments(const cspin_model* model, double* a1, double* a2);

/* Solves on the given time grid (ascending, t >= 0). A NULL initial means |+><+| with an unpolarized bath. */
CSPIN_API cspin_status cspin_solve(const cspin_model* model, cspin_method method, const cspin_initial* initial, const double* times,
                                   size_t n_times, cspin_trajectory** out);
CSPIN_API void cspin_trajectory_destroy(cspin_trajectory* traj);
CSPIN_API size_t cspin_trajectory_size(const cspin_trajectory* traj);
CSPIN_API const char* cspin_trajectory_method(const cspin_trajectory* traj);
/* Copies columns into caller buffers of cspin_trajectory_size() entries; any pointer may be NULL. */
CSPIN_API cspin_status cspin_trajectory_copy(const cspin_trajectory* traj, double* t, double* coherence_re, double* coherence_im,
                                             double* population);

CSPIN_API cspin_status cspin_scenario_create(cspin_scenario** out);
CSPIN_API void cspin_scenario_destroy(cspin_scenario* scenario);
/* Flat key=value config file; later calls and cspin_scenario_set override earlier values. */
CSPIN_API cspin_status cspin_scenario_load(cspin_scenario* scenario, const char* path);
CSPIN_API cspin_status cspin_scenario_set(cspin_scenario* scenario, const char* key, const char* value);
/* Canonical config text; valid until the next call on this scenario. */
CSPIN_API const char* cspin_scenario_echo(cspin_scenario* scenario);
/* Runs every requested method and writes one CSV per method plus manifest.json and report.json to out_dir. */
CSPIN_API cspin_status cspin_scenario_run(cspin_scenario* scenario);
/* Grid over the sweep_n_values x sweep_alpha_ratios keys, one subdirectory per point. */
CSPIN_API cspin_status cspin_scenario_sweep(cspin_scenario* scenario);
/* Human-readable report of the last run or sweep; valid until the next call on this scenario. */
CSPIN_API const char* cspin_scenario_report(const cspin_scenario* scenario);
/* Warnings raised by the last run (newline separated, possibly empty). */
CSPIN_API const char* cspin_scenario_warnings(const cspin_scenario* scenario);

typedef void (*cspin_check_callback)(int id, const char* name, int passed, const char* detail, double seconds, void* user);

CSPIN_API int cspin_check_count(void);
/* Runs the acceptance suite (all criteria when n_ids == 0); n_failed receives the number of failures. */
CSPIN_API cspin_status cspin_check(const int* ids, size_t n_ids, cspin_check_callback callback, void* user, int* n_failed);

#ifdef __cplusplus
}
#endif
