/*
 * beamlab C API: damped Euler-Bernoulli beam laboratory.
 *
 * All functions return blab_status; on failure blab_last_error() carries a
 * human-readable message (thread-local). Objects are opaque handles created
 * and destroyed through this interface only.
 */
#ifndef BEAMLAB_H
#define BEAMLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BLAB_API __declspec(dllexport)
#else
#define BLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum blab_status {
  BLAB_OK = 0,
  BLAB_ERR_ARGUMENT = 1,
  BLAB_ERR_CONFIG = 2,
  BLAB_ERR_NUMERIC = 3,
  BLAB_ERR_IO = 4
} blab_status;

BLAB_API const char* blab_version(void);
BLAB_API const char* blab_last_error(void);

typedef struct blab_config blab_config;
typedef struct blab_system blab_system;
typedef struct blab_trajectory blab_trajectory;

/* --- configuration ------------------------------------------------------ */

/* New configuration with library defaults. */
BLAB_API blab_status blab_config_create(blab_config** out);
/* Parse a flat key-value config file (keys: alpha, kappa, n_elements,
 * grading, quad_tol, time_horizon, dt; unknown keys are errors). */
BLAB_API blab_status blab_config_load(const char* path, blab_config** out);
BLAB_API blab_status blab_config_set(blab_config* cfg, const char* key,
                                     const char* value);
BLAB_API blab_status blab_config_get(const blab_config* cfg, const char* key,
                                     double* out);
/* Writes newline-separated violations into msg (may be NULL); returns the
 * violation count, or -1 on argument error. Empty result = valid. */
BLAB_API int blab_config_validate(const blab_config* cfg, char* msg,
                                  size_t msg_len);
BLAB_API void blab_config_free(blab_config* cfg);

/* --- damping coefficient ------------------------------------------------ */

/* b(x) for x in [-1,1]: zero on (-1,0], kappa*x^alpha on (0,1). */
BLAB_API blab_status blab_damping_eval(const blab_config* cfg, double x,
                                       double* out);

/* --- assembled system and simulation ------------------------------------ */

BLAB_API blab_status blab_system_build(const blab_config* cfg,
                                       blab_system** out);
BLAB_API size_t blab_system_ndof(const blab_system* sys);
/* which: "mass" | "stiffness" | "damping"; coordinate triplet text format. */
BLAB_API blab_status blab_system_export_matrix(const blab_system* sys,
                                               const char* which,
                                               const char* path);
BLAB_API void blab_system_free(blab_system* sys);

/* Implicit-midpoint run over the config time horizon from the default
 * smooth initial data. */
BLAB_API blab_status blab_simulate(const blab_system* sys,
                                   blab_trajectory** out);
BLAB_API size_t blab_trajectory_length(const blab_trajectory* traj);
BLAB_API blab_status blab_trajectory_get(const blab_trajectory* traj, size_t i,
                                         double* t, double* energy,
                                         double* dissipation);
/* Least-squares exponent r of E(t) ~ C (1+t)^-r over a fractional window. */
BLAB_API blab_status blab_fit_decay(const blab_trajectory* traj,
                                    double window_lo_frac,
                                    double window_hi_frac, double* exponent,
                                    double* prefactor, double* residual);
BLAB_API void blab_trajectory_free(blab_trajectory* traj);

/* --- resolvent probe ----------------------------------------------------- */

/* Operator norm of (i*lambda - A_h)^-1 in the energy norm via power
 * iteration; converged reports whether the tolerance was certified. */
BLAB_API blab_status blab_resolvent_norm(const blab_system* sys, double lambda,
                                         double tol, int max_iter,
                                         double* norm_out, int* iterations_out,
                                         int* converged_out);

/* --- decay-rate program -------------------------------------------------- */

/* Closed-form decay exponent tau(alpha), alpha in (0,5). */
BLAB_API blab_status blab_tau(double alpha, double* out);
/* Closed-form resolvent growth exponent gamma(alpha) = 2/tau(alpha). */
BLAB_API blab_status blab_gamma(double alpha, double* out);
/* Numerical minimax solution of the rate program. */
BLAB_API blab_status blab_optimize_gamma(double alpha, double resolution,
                                         double* gamma_star,
                                         double* delta_star);

/* --- Hardy bracket constant ---------------------------------------------- */

/* K with K <= C <= 2K for the weighted Hardy inequality on (0,L);
 * +infinity when the (alpha,beta) side conditions fail. */
BLAB_API blab_status blab_hardy_constant(double alpha, double beta, double L,
                                         double* k_out);

/* --- experiment driver (CLI backend) ------------------------------------- */

/* command: simulate | resolvent | rates | ineq | figure1.
 * config_path may be NULL (defaults). overrides are "key=value" strings.
 * Writes artifacts plus manifest.json into out_dir. */
BLAB_API blab_status blab_run(const char* command, const char* config_path,
                              const char* out_dir,
                              const char* const* overrides, size_t n_overrides,
                              int jobs);

#ifdef __cplusplus
}
#endif

#endif /* BEAMLAB_H */
