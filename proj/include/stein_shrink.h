/*
 * stein_shrink.h - C interface to the shrinkage-risk library.
 *
 * Every function returns an ssk_status. On failure the out-parameters are
 * left untouched and ssk_last_error() returns a one-line reason for the
 * failing call on the current thread.
 *
 * Handles (ssk_estimator, ssk_simulator) are opaque, owned by the caller and
 * released with the matching *_destroy function. A simulator may be shared
 * between threads for reading; the estimate functions do not mutate it.
 */
#ifndef STEIN_SHRINK_H
#define STEIN_SHRINK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SSK_BUILDING_LIBRARY)
#    define SSK_API __declspec(dllexport)
#  else
#    define SSK_API __declspec(dllimport)
#  endif
#else
#  define SSK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ssk_status {
  SSK_OK = 0,
  SSK_ERR_DOMAIN = 1,        /* mathematical precondition violated */
  SSK_ERR_INVALID_ARGUMENT = 2,
  SSK_ERR_NOT_CONVERGED = 3, /* series hit its term cap */
  SSK_ERR_UNSUPPORTED = 4,   /* no closed form for this estimator */
  SSK_ERR_INTERNAL = 5
} ssk_status;

typedef enum ssk_estimator_kind {
  SSK_IDENTITY = 0,
  SSK_SHRINK_C = 1,
  SSK_SHRINK_CA = 2,
  SSK_NGO = 3
} ssk_estimator_kind;

typedef enum ssk_sampling_path {
  SSK_PATH_REDUCED = 0,
  SSK_PATH_FULL = 1
} ssk_sampling_path;

typedef struct ssk_estimator ssk_estimator;
typedef struct ssk_simulator ssk_simulator;

typedef struct ssk_vec2 {
  double x;
  double y;
} ssk_vec2;

typedef struct ssk_risk_estimate {
  double mean;
  double std_error;
  long n;
} ssk_risk_estimate;

typedef struct ssk_xi_pair {
  ssk_vec2 xi_plus;
  ssk_vec2 xi_minus;
  double norm_sq_plus;
  double norm_sq_minus;
} ssk_xi_pair;

typedef struct ssk_conditional_breakdown {
  double l_plus_1;
  double l_plus_2;
  double l_minus_1;
  double l_minus_2;
  double r_cond_1;
  double r_cond_2;
  double delta;
} ssk_conditional_breakdown;

typedef struct ssk_geometry_report {
  ssk_vec2 a;
  ssk_vec2 b;
  ssk_vec2 c_point;
  double len_ab;
  double len_ob;
  double len_bc;
  double len_ac;
  double shrink_factor;
} ssk_geometry_report;

typedef struct ssk_series_control {
  double rel_tol;
  long max_terms;
} ssk_series_control;

/* ---- diagnostics ------------------------------------------------------ */

SSK_API const char* ssk_last_error(void);
SSK_API const char* ssk_status_name(ssk_status status);
/* Default series control: rel_tol 1e-12, max_terms 100000. */
SSK_API ssk_series_control ssk_series_control_default(void);

/* ---- core model ------------------------------------------------------- */

SSK_API ssk_status ssk_z_reduce(const double* x, const double* theta, size_t p, ssk_vec2* out);
SSK_API ssk_status ssk_squared_error(const double* estimate, const double* theta, size_t p,
                                     double* out);
SSK_API ssk_status ssk_squared_error_z(ssk_vec2 estimate, double theta_norm, double* out);

/* ---- estimators ------------------------------------------------------- */

SSK_API ssk_status ssk_estimator_create(ssk_estimator_kind kind, double c, double a,
                                        ssk_estimator** out);
/* Accepts identity | ngo | shrink:C=<real> | shrink:C=<real>,a=<real>. */
SSK_API ssk_status ssk_estimator_parse(const char* text, ssk_estimator** out);
SSK_API void ssk_estimator_destroy(ssk_estimator* est);
SSK_API ssk_estimator_kind ssk_estimator_get_kind(const ssk_estimator* est);
/* Writes the canonical text form; *needed receives the required size incl. NUL. */
SSK_API ssk_status ssk_estimator_format(const ssk_estimator* est, char* buf, size_t len,
                                        size_t* needed);

SSK_API ssk_status ssk_shrink_factor(const ssk_estimator* est, double norm_sq, int p,
                                     double* out);
SSK_API ssk_status ssk_apply_z(const ssk_estimator* est, ssk_vec2 point, int p, ssk_vec2* out);
/* out may alias x. */
SSK_API ssk_status ssk_apply_full(const ssk_estimator* est, const double* x, size_t len, int p,
                                  double* out);

/* ---- special functions ------------------------------------------------ */

SSK_API ssk_status ssk_log_gamma(double x, double* out);
SSK_API ssk_status ssk_expected_chi_norm(int p, double* out);
SSK_API ssk_status ssk_expected_chi_norm_asymptotic(int p, double* out);
/* ctl may be NULL for defaults. On SSK_ERR_NOT_CONVERGED, *out receives the partial sum. */
SSK_API ssk_status ssk_inv_noncentral_chisq_mean(int p, double lambda,
                                                 const ssk_series_control* ctl, double* out);
SSK_API uint64_t ssk_derive_seed(uint64_t seed, uint64_t index);

/* ---- exact risk ------------------------------------------------------- */

SSK_API ssk_status ssk_risk_delta_exact(int p, double theta_norm, double c,
                                        const ssk_series_control* ctl, double* out);
SSK_API ssk_status ssk_risk_delta_approx(int p, double theta_norm, double c, double* out);
SSK_API ssk_status ssk_risk_exact(int p, double theta_norm, const ssk_estimator* est,
                                  const ssk_series_control* ctl, double* out);
SSK_API ssk_status ssk_norm_sq_mean(int p, double theta_norm, double* out);

/* ---- two-point conditional model -------------------------------------- */

SSK_API ssk_status ssk_xi_points(double p, double theta_norm, ssk_xi_pair* out);
SSK_API ssk_status ssk_conditional_losses(double p, double theta_norm, double c,
                                          ssk_conditional_breakdown* out);
SSK_API ssk_status ssk_conditional_delta_closed(double p, double theta_norm, double c,
                                                double* out);
SSK_API ssk_status ssk_conditional_cross_term(double p, double theta_norm, double c,
                                              double* out);
/* Open interval (lo, hi); *empty is 1 when hi <= lo. */
SSK_API ssk_status ssk_dominance_window(double p, double* lo, double* hi, int* empty);

/* ---- geometry --------------------------------------------------------- */

SSK_API ssk_status ssk_ngo_projection(int p, double theta_norm, ssk_geometry_report* out);

/* ---- Monte Carlo ------------------------------------------------------ */

SSK_API ssk_status ssk_simulator_create(int p, double theta_norm, uint64_t seed,
                                        ssk_simulator** out);
SSK_API void ssk_simulator_destroy(ssk_simulator* sim);
/* 0 selects the hardware concurrency. Results never depend on this value. */
SSK_API ssk_status ssk_simulator_set_threads(ssk_simulator* sim, unsigned threads);
SSK_API ssk_status ssk_simulator_set_path(ssk_simulator* sim, ssk_sampling_path path);

/* Fills x1[0..n) and r[0..n). */
SSK_API ssk_status ssk_simulate_cloud(const ssk_simulator* sim, size_t n, double* x1, double* r);
SSK_API ssk_status ssk_estimate_risk(const ssk_simulator* sim, const ssk_estimator* est,
                                     size_t n, ssk_risk_estimate* out);
/* Paired loss(identity) - loss(shrink:C=c) on common draws. */
SSK_API ssk_status ssk_estimate_delta(const ssk_simulator* sim, double c, size_t n,
                                      ssk_risk_estimate* out);
/* Paired loss(identity) - loss(est) on common draws. */
SSK_API ssk_status ssk_estimate_delta_for(const ssk_simulator* sim, const ssk_estimator* est,
                                          size_t n, ssk_risk_estimate* out);
SSK_API ssk_status ssk_estimate_exceedance(const ssk_simulator* sim, size_t n,
                                           ssk_risk_estimate* out);
SSK_API ssk_status ssk_estimate_norm_sq(const ssk_simulator* sim, size_t n,
                                        ssk_risk_estimate* out);

#ifdef __cplusplus
}
#endif

#endif /* STEIN_SHRINK_H */
