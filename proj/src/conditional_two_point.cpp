#include "conditional_two_point.hpp"

#include <cmath>

#include "errors.hpp"

namespace stein {

namespace {

void check_args(double p, double theta_norm) {
  if (!(p >= 2.0))
    throw DomainError("two-point model requires p >= 2");
  if (!(theta_norm >= 0.0))
    throw DomainError("theta norm must be non-negative");
}

} // namespace

XiPair xi_points(double p, double theta_norm) {
  check_args(p, theta_norm);
  const double r = std::sqrt(p - 1.0);
  XiPair out;
  out.xi_plus = {theta_norm + 1.0, r};
  out.xi_minus = {theta_norm - 1.0, r};
  out.norm_sq_plus = (theta_norm + 1.0) * (theta_norm + 1.0) + (p - 1.0);
  out.norm_sq_minus = (theta_norm - 1.0) * (theta_norm - 1.0) + (p - 1.0);
  return out;
}

ConditionalBreakdown conditional_losses(double p, double theta_norm, double c) {
  const XiPair xi = xi_points(p, theta_norm);
  const double s_plus = c / xi.norm_sq_plus;
  const double s_minus = c / xi.norm_sq_minus;

  ConditionalBreakdown b;
  b.l_plus_1 = std::pow(1.0 - s_plus * (theta_norm + 1.0), 2);
  b.l_minus_1 = std::pow(-1.0 - s_minus * (theta_norm - 1.0), 2);
  b.l_plus_2 = std::pow(1.0 - s_plus, 2) * (p - 1.0);
  b.l_minus_2 = std::pow(1.0 - s_minus, 2) * (p - 1.0);
  b.r_cond_1 = 0.5 * (b.l_plus_1 + b.l_minus_1);
  b.r_cond_2 = 0.5 * (b.l_plus_2 + b.l_minus_2);
  b.delta = p - (b.r_cond_1 + b.r_cond_2);
  return b;
}

double conditional_delta_closed(double p, double theta_norm, double c) {
  const XiPair xi = xi_points(p, theta_norm);
  const double t2 = theta_norm * theta_norm;
  const double bracket = (c * (p - 2.0) - 0.5 * c * c) * t2 + (c * p - 0.5 * c * c) * p;
  return 2.0 / (xi.norm_sq_plus * xi.norm_sq_minus) * bracket;
}

double conditional_cross_term(double p, double theta_norm, double c) {
  const XiPair xi = xi_points(p, theta_norm);
  return c * theta_norm * (1.0 / xi.norm_sq_plus - 1.0 / xi.norm_sq_minus);
}

DominanceWindow dominance_window(double p) {
  if (!(p >= 2.0))
    throw DomainError("dominance window requires p >= 2");
  return {0.0, 2.0 * (p - 2.0)};
}

} // namespace stein
