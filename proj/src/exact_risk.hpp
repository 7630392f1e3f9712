#pragma once

#include "estimators.hpp"
#include "special_functions.hpp"

namespace stein {

/// Exact and heuristic risk improvement of delta_C over the usual estimator.
struct RiskDelta {
  double exact = 0.0;
  double approx = 0.0;
  int p = 0;
  double theta_norm = 0.0;
  double c = 0.0;
};

/// c(p-2) - c^2/2, the factor shared by every risk-difference formula here.
inline double shrinkage_gain(double p, double c) { return c * (p - 2.0) - 0.5 * c * c; }

/// R(theta, delta_0) - R(theta, delta_C) = 2 E[1/|X|^2] (c(p-2) - c^2/2).
double risk_delta_exact(int p, double theta_norm, double c, const SeriesControl& ctl = {});

/// 2/(|theta|^2 + p) (c(p-2) - c^2/2).
double risk_delta_approx(int p, double theta_norm, double c);

RiskDelta risk_delta(int p, double theta_norm, double c, const SeriesControl& ctl = {});

/// Exact risk for Identity and ShrinkC. Other kinds throw Unsupported.
double risk_exact(int p, double theta_norm, const EstimatorSpec& spec,
                  const SeriesControl& ctl = {});

/// E|X|^2 = |theta|^2 + p.
double norm_sq_mean(int p, double theta_norm);

} // namespace stein
