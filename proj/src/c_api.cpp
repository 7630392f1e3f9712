#include "stein_shrink.h"

#include <cstring>
#include <new>
#include <span>
#include <string>

#include "conditional_two_point.hpp"
#include "errors.hpp"
#include "estimators.hpp"
#include "exact_risk.hpp"
#include "geometry.hpp"
#include "monte_carlo.hpp"
#include "special_functions.hpp"

struct ssk_estimator {
  stein::EstimatorSpec spec;
};

struct ssk_simulator {
  stein::ProblemConfig config;
  stein::McOptions opts;
};

static_assert(static_cast<int>(stein::EstimatorKind::ShrinkC) == SSK_SHRINK_C &&
              static_cast<int>(stein::EstimatorKind::ShrinkCa) == SSK_SHRINK_CA &&
              static_cast<int>(stein::EstimatorKind::NGO) == SSK_NGO);

namespace {

thread_local std::string g_last_error;

ssk_status fail(ssk_status code, const char* what) {
  g_last_error = what;
  return code;
}

// Runs fn, mapping the library's exception types onto status codes.
template <class Fn>
ssk_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return SSK_OK;
  } catch (const stein::DomainError& e) {
    return fail(SSK_ERR_DOMAIN, e.what());
  } catch (const stein::InvalidArgument& e) {
    return fail(SSK_ERR_INVALID_ARGUMENT, e.what());
  } catch (const stein::Unsupported& e) {
    return fail(SSK_ERR_UNSUPPORTED, e.what());
  } catch (const stein::NotConverged& e) {
    return fail(SSK_ERR_NOT_CONVERGED, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SSK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SSK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SSK_ERR_INTERNAL, "unknown error");
  }
}

template <class T>
void require(const T* ptr, const char* name) {
  if (!ptr)
    throw stein::InvalidArgument(std::string(name) + " must not be null");
}

stein::SeriesControl control(const ssk_series_control* ctl) {
  if (!ctl)
    return {};
  return {ctl->rel_tol, ctl->max_terms};
}

ssk_vec2 to_c(stein::Vec2 v) { return {v.x, v.y}; }

ssk_risk_estimate to_c(const stein::RiskEstimate& e) { return {e.mean, e.std_error, e.n}; }

} // namespace

extern "C" {

const char* ssk_last_error(void) { return g_last_error.c_str(); }

const char* ssk_status_name(ssk_status status) {
  switch (status) {
  case SSK_OK:
    return "ok";
  case SSK_ERR_DOMAIN:
    return "domain error";
  case SSK_ERR_INVALID_ARGUMENT:
    return "invalid argument";
  case SSK_ERR_NOT_CONVERGED:
    return "not converged";
  case SSK_ERR_UNSUPPORTED:
    return "unsupported";
  case SSK_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

ssk_series_control ssk_series_control_default(void) {
  const stein::SeriesControl d;
  return {d.rel_tol, d.max_terms};
}

ssk_status ssk_z_reduce(const double* x, const double* theta, size_t p, ssk_vec2* out) {
  return guarded([&] {
    require(x, "x");
    require(theta, "theta");
    require(out, "out");
    const auto z = stein::z_reduce(std::span(x, p), std::span(theta, p));
    *out = {z.x1, z.r};
  });
}

ssk_status ssk_squared_error(const double* estimate, const double* theta, size_t p, double* out) {
  return guarded([&] {
    require(estimate, "estimate");
    require(theta, "theta");
    require(out, "out");
    *out = stein::squared_error(std::span(estimate, p), std::span(theta, p));
  });
}

ssk_status ssk_squared_error_z(ssk_vec2 estimate, double theta_norm, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = stein::squared_error_z({estimate.x, estimate.y}, theta_norm);
  });
}

ssk_status ssk_estimator_create(ssk_estimator_kind kind, double c, double a, ssk_estimator** out) {
  return guarded([&] {
    require(out, "out");
    stein::EstimatorSpec spec;
    switch (kind) {
    case SSK_IDENTITY:
      spec = stein::EstimatorSpec::identity();
      break;
    case SSK_SHRINK_C:
      spec = stein::EstimatorSpec::shrink(c);
      break;
    case SSK_SHRINK_CA:
      spec = stein::EstimatorSpec::shrink(c, a);
      break;
    case SSK_NGO:
      spec = stein::EstimatorSpec::ngo();
      break;
    default:
      throw stein::InvalidArgument("unknown estimator kind");
    }
    *out = new ssk_estimator{spec};
  });
}

ssk_status ssk_estimator_parse(const char* text, ssk_estimator** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new ssk_estimator{stein::EstimatorSpec::parse(text)};
  });
}

void ssk_estimator_destroy(ssk_estimator* est) { delete est; }

ssk_estimator_kind ssk_estimator_get_kind(const ssk_estimator* est) {
  if (!est)
    return SSK_IDENTITY;
  return static_cast<ssk_estimator_kind>(est->spec.kind);
}

ssk_status ssk_estimator_format(const ssk_estimator* est, char* buf, size_t len, size_t* needed) {
  return guarded([&] {
    require(est, "estimator");
    const std::string text = est->spec.to_string();
    if (needed)
      *needed = text.size() + 1;
    if (!buf)
      return;
    if (len < text.size() + 1)
      throw stein::InvalidArgument("buffer too small for estimator text");
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

ssk_status ssk_shrink_factor(const ssk_estimator* est, double norm_sq, int p, double* out) {
  return guarded([&] {
    require(est, "estimator");
    require(out, "out");
    *out = stein::shrink_factor(est->spec, norm_sq, p);
  });
}

ssk_status ssk_apply_z(const ssk_estimator* est, ssk_vec2 point, int p, ssk_vec2* out) {
  return guarded([&] {
    require(est, "estimator");
    require(out, "out");
    *out = to_c(stein::apply(est->spec, stein::Vec2{point.x, point.y}, p));
  });
}

ssk_status ssk_apply_full(const ssk_estimator* est, const double* x, size_t len, int p,
                          double* out) {
  return guarded([&] {
    require(est, "estimator");
    require(x, "x");
    require(out, "out");
    const auto res = stein::apply(est->spec, std::span(x, len), p);
    std::memmove(out, res.data(), len * sizeof(double));
  });
}

ssk_status ssk_log_gamma(double x, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = stein::log_gamma(x);
  });
}

ssk_status ssk_expected_chi_norm(int p, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = stein::expected_chi_norm(p);
  });
}

ssk_status ssk_expected_chi_norm_asymptotic(int p, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = stein::expected_chi_norm_asymptotic(p);
  });
}

ssk_status ssk_inv_noncentral_chisq_mean(int p, double lambda, const ssk_series_control* ctl,
                                         double* out) {
  if (!out)
    return fail(SSK_ERR_INVALID_ARGUMENT, "out must not be null");
  try {
    *out = stein::inv_noncentral_chisq_mean(p, lambda, control(ctl));
    g_last_error.clear();
    return SSK_OK;
  } catch (const stein::NotConverged& e) {
    *out = e.partial_sum();
    return fail(SSK_ERR_NOT_CONVERGED, e.what());
  } catch (...) {
    return guarded([] { throw; });
  }
}

uint64_t ssk_derive_seed(uint64_t seed, uint64_t index) { return stein::derive_seed(seed, index); }

ssk_status ssk_risk_delta_exact(int p, double theta_norm, double c, const ssk_series_control* ctl,
                                double* out) {
  return guarded([&] {
    require(out, "out");
    *out = stein::risk_delta_exact(p, theta_norm, c, control(ctl));
  });
}

ssk_status ssk_risk_delta_approx(int p, double theta_norm, double c, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = stein::risk_delta_approx(p, theta_norm, c);
  });
}

ssk_status ssk_risk_exact(int p, double theta_norm, const ssk_estimator* est,
                          const ssk_series_control* ctl, double* out) {
  return guarded([&] {
    require(est, "estimator");
    require(out, "out");
    *out = stein::risk_exact(p, theta_norm, est->spec, control(ctl));
  });
}

ssk_status ssk_norm_sq_mean(int p, double theta_norm, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = stein::norm_sq_mean(p, theta_norm);
  });
}

ssk_status ssk_xi_points(double p, double theta_norm, ssk_xi_pair* out) {
  return guarded([&] {
    require(out, "out");
    const auto xi = stein::xi_points(p, theta_norm);
    *out = {to_c(xi.xi_plus), to_c(xi.xi_minus), xi.norm_sq_plus, xi.norm_sq_minus};
  });
}

ssk_status ssk_conditional_losses(double p, double theta_norm, double c,
                                  ssk_conditional_breakdown* out) {
  return guarded([&] {
    require(out, "out");
    const auto b = stein::conditional_losses(p, theta_norm, c);
    *out = {b.l_plus_1, b.l_plus_2, b.l_minus_1, b.l_minus_2, b.r_cond_1, b.r_cond_2, b.delta};
  });
}

ssk_status ssk_conditional_delta_closed(double p, double theta_norm, double c, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = stein::conditional_delta_closed(p, theta_norm, c);
  });
}

ssk_status ssk_conditional_cross_term(double p, double theta_norm, double c, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = stein::conditional_cross_term(p, theta_norm, c);
  });
}

ssk_status ssk_dominance_window(double p, double* lo, double* hi, int* empty) {
  return guarded([&] {
    require(lo, "lo");
    require(hi, "hi");
    const auto w = stein::dominance_window(p);
    *lo = w.lo;
    *hi = w.hi;
    if (empty)
      *empty = w.empty() ? 1 : 0;
  });
}

ssk_status ssk_ngo_projection(int p, double theta_norm, ssk_geometry_report* out) {
  return guarded([&] {
    require(out, "out");
    const auto g = stein::ngo_projection(p, theta_norm);
    *out = {to_c(g.a),  to_c(g.b),  to_c(g.c_point), g.len_ab,
            g.len_ob,   g.len_bc,   g.len_ac,        g.shrink_factor};
  });
}

ssk_status ssk_simulator_create(int p, double theta_norm, uint64_t seed, ssk_simulator** out) {
  return guarded([&] {
    require(out, "out");
    stein::ProblemConfig cfg{p, theta_norm, seed};
    cfg.validate();
    *out = new ssk_simulator{cfg, {}};
  });
}

void ssk_simulator_destroy(ssk_simulator* sim) { delete sim; }

ssk_status ssk_simulator_set_threads(ssk_simulator* sim, unsigned threads) {
  return guarded([&] {
    require(sim, "simulator");
    sim->opts.threads = threads;
  });
}

ssk_status ssk_simulator_set_path(ssk_simulator* sim, ssk_sampling_path path) {
  return guarded([&] {
    require(sim, "simulator");
    if (path != SSK_PATH_REDUCED && path != SSK_PATH_FULL)
      throw stein::InvalidArgument("unknown sampling path");
    sim->opts.path = path == SSK_PATH_FULL ? stein::SamplingPath::Full
                                           : stein::SamplingPath::Reduced;
  });
}

ssk_status ssk_simulate_cloud(const ssk_simulator* sim, size_t n, double* x1, double* r) {
  return guarded([&] {
    require(sim, "simulator");
    require(x1, "x1");
    require(r, "r");
    const auto cloud = stein::simulate_cloud(sim->config, n, sim->opts);
    for (size_t i = 0; i < n; ++i) {
      x1[i] = cloud.points[i].x1;
      r[i] = cloud.points[i].r;
    }
  });
}

ssk_status ssk_estimate_risk(const ssk_simulator* sim, const ssk_estimator* est, size_t n,
                             ssk_risk_estimate* out) {
  return guarded([&] {
    require(sim, "simulator");
    require(est, "estimator");
    require(out, "out");
    *out = to_c(stein::estimate_risk_mc(sim->config, est->spec, n, sim->opts));
  });
}

ssk_status ssk_estimate_delta(const ssk_simulator* sim, double c, size_t n,
                              ssk_risk_estimate* out) {
  return guarded([&] {
    require(sim, "simulator");
    require(out, "out");
    *out = to_c(stein::estimate_delta_mc(sim->config, c, n, sim->opts));
  });
}

ssk_status ssk_estimate_delta_for(const ssk_simulator* sim, const ssk_estimator* est, size_t n,
                                  ssk_risk_estimate* out) {
  return guarded([&] {
    require(sim, "simulator");
    require(est, "estimator");
    require(out, "out");
    *out = to_c(stein::estimate_delta_mc(sim->config, est->spec, n, sim->opts));
  });
}

ssk_status ssk_estimate_exceedance(const ssk_simulator* sim, size_t n, ssk_risk_estimate* out) {
  return guarded([&] {
    require(sim, "simulator");
    require(out, "out");
    *out = to_c(stein::estimate_exceedance_prob(sim->config, n, sim->opts));
  });
}

ssk_status ssk_estimate_norm_sq(const ssk_simulator* sim, size_t n, ssk_risk_estimate* out) {
  return guarded([&] {
    require(sim, "simulator");
    require(out, "out");
    *out = to_c(stein::estimate_norm_sq_mc(sim->config, n, sim->opts));
  });
}

} // extern "C"
