#ifndef SIXBQ_SIXBQ_H
#define SIXBQ_SIXBQ_H

/* C interface to libsixbq. Every function returns a sixbq_status; on failure
 * sixbq_last_error() holds a message for the calling thread until its next
 * call into the library. Handles are opaque and owned by the caller, who
 * releases them with the matching *_destroy function (NULL is accepted). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SIXBQ_API __declspec(dllexport)
#else
#define SIXBQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sixbq_status {
  SIXBQ_OK = 0,
  SIXBQ_INVALID_ARGUMENT = 1,
  SIXBQ_GRID_MISMATCH = 2,
  SIXBQ_NON_FINITE = 3,
  SIXBQ_INVALID_BETA = 4,
  SIXBQ_ZERO_MODE_VIOLATION = 5,
  SIXBQ_DIVERGENCE = 6,
  SIXBQ_EMPTY_TRAJECTORY = 7,
  SIXBQ_GRID_TOO_LARGE = 8,
  SIXBQ_UNDERSAMPLED = 9,
  SIXBQ_CONFIG_PARSE = 10,
  SIXBQ_CONFIG_SEMANTIC = 11,
  SIXBQ_IO = 12,
  SIXBQ_FIT_FAILURE = 13,
  SIXBQ_INTERNAL = 99
} sixbq_status;

typedef struct sixbq_grid sixbq_grid;
typedef struct sixbq_state sixbq_state;
typedef struct sixbq_trajectory sixbq_trajectory;
typedef struct sixbq_config sixbq_config;
typedef struct sixbq_campaign sixbq_campaign;

typedef struct sixbq_params {
  double beta;
  int k;
  int sign; /* +1 defocusing, -1 focusing */
  double s;
  double N;
} sixbq_params;

/* Columns of one snapshot, in timeseries.csv order. */
enum { SIXBQ_SNAPSHOT_COLUMNS = 11 };

SIXBQ_API const char* sixbq_version(void);
SIXBQ_API const char* sixbq_last_error(void);
SIXBQ_API const char* sixbq_status_name(sixbq_status status);

/* beta = 1, k = 2, defocusing, s = 2, N = 1 */
SIXBQ_API sixbq_params sixbq_default_params(void);

SIXBQ_API sixbq_status sixbq_grid_create(double length, size_t n, sixbq_grid** out);
SIXBQ_API void sixbq_grid_destroy(sixbq_grid* grid);
SIXBQ_API size_t sixbq_grid_size(const sixbq_grid* grid);
SIXBQ_API double sixbq_grid_length(const sixbq_grid* grid);
/* Writes the n collocation points. */
SIXBQ_API sixbq_status sixbq_grid_points(const sixbq_grid* grid, double* out, size_t n);

/* u(0) = g and u_t(0) = h_x from samples at the collocation points. */
SIXBQ_API sixbq_status sixbq_state_create(const sixbq_grid* grid, const double* g, const double* h,
                                          size_t n, sixbq_state** out);
SIXBQ_API void sixbq_state_destroy(sixbq_state* state);
SIXBQ_API double sixbq_state_time(const sixbq_state* state);
/* Samples of u at the collocation points. */
SIXBQ_API sixbq_status sixbq_state_samples(const sixbq_state* state, double* out, size_t n);
/* out[0..5]: u_xx term, u_x term, u term, kinetic, potential, total. */
SIXBQ_API sixbq_status sixbq_state_energy(const sixbq_state* state, const sixbq_params* params,
                                          double out[6]);
/* Exact linear flow over dt (either sign); returns a new state. */
SIXBQ_API sixbq_status sixbq_propagate_linear(const sixbq_state* state, double beta, double dt,
                                              sixbq_state** out);

/* dt <= 0 selects the default step. */
SIXBQ_API sixbq_status sixbq_simulate(const sixbq_state* initial, const sixbq_params* params,
                                      double T, double dt, size_t snapshot_every,
                                      sixbq_trajectory** out);
SIXBQ_API void sixbq_trajectory_destroy(sixbq_trajectory* traj);
SIXBQ_API size_t sixbq_trajectory_length(const sixbq_trajectory* traj);
/* "completed", "blowup_detected" or "step_failure". */
SIXBQ_API const char* sixbq_trajectory_status(const sixbq_trajectory* traj);
SIXBQ_API sixbq_status sixbq_trajectory_row(const sixbq_trajectory* traj, size_t i,
                                            double out[SIXBQ_SNAPSHOT_COLUMNS]);
/* New state holding snapshot i. */
SIXBQ_API sixbq_status sixbq_trajectory_state(const sixbq_trajectory* traj, size_t i,
                                              sixbq_state** out);
/* E(Iu) increment: direct difference and the frequency-sum oracle (n <= 32). */
SIXBQ_API sixbq_status sixbq_increment_direct(const sixbq_trajectory* traj, double* out);
SIXBQ_API sixbq_status sixbq_increment_oracle(const sixbq_trajectory* traj, double* out);

SIXBQ_API sixbq_status sixbq_admissible_s_range(int k, double* lower, double* upper);
SIXBQ_API sixbq_status sixbq_growth_exponent(int k, double s, double* out);
SIXBQ_API double sixbq_m_multiplier(double x);

SIXBQ_API sixbq_status sixbq_config_load(const char* path, sixbq_config** out);
SIXBQ_API sixbq_status sixbq_config_parse(const char* text, sixbq_config** out);
SIXBQ_API void sixbq_config_destroy(sixbq_config* cfg);
/* Forces the experiment kind ("simulate", "almost-conservation-scan",
 * "estimate-suite", "growth-check"). */
SIXBQ_API sixbq_status sixbq_config_set_kind(sixbq_config* cfg, const char* kind);
SIXBQ_API const char* sixbq_config_kind(const sixbq_config* cfg);
/* Canonical text with all defaults; valid until the handle is destroyed. */
SIXBQ_API const char* sixbq_config_canonical(const sixbq_config* cfg);

/* output_root may be NULL (config, then SIXBQ_OUTPUT_ROOT, then ./sixbq_runs);
 * seed may be NULL to keep the config's seed. */
SIXBQ_API sixbq_status sixbq_campaign_run(const sixbq_config* cfg, const char* output_root,
                                          const uint64_t* seed, size_t workers, int quiet,
                                          sixbq_campaign** out);
/* Loads the campaign recorded under output_root. */
SIXBQ_API sixbq_status sixbq_campaign_load(const char* output_root, sixbq_campaign** out);
SIXBQ_API void sixbq_campaign_destroy(sixbq_campaign* c);
SIXBQ_API size_t sixbq_campaign_run_count(const sixbq_campaign* c);
SIXBQ_API const char* sixbq_campaign_run_label(const sixbq_campaign* c, size_t i);
SIXBQ_API const char* sixbq_campaign_run_hash(const sixbq_campaign* c, size_t i);
SIXBQ_API const char* sixbq_campaign_run_status(const sixbq_campaign* c, size_t i);
SIXBQ_API int sixbq_campaign_run_passed(const sixbq_campaign* c, size_t i);
/* Summary scalar by name; SIXBQ_INVALID_ARGUMENT when absent. */
SIXBQ_API sixbq_status sixbq_campaign_run_summary(const sixbq_campaign* c, size_t i,
                                                  const char* key, double* out);
/* Writes report.md and summary.json under output_root (NULL: the campaign's
 * own root); *all_pass is 1 when every run passed. */
SIXBQ_API sixbq_status sixbq_campaign_report(const sixbq_campaign* c, const char* output_root,
                                             int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
