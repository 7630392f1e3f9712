#include "exact_risk.hpp"

#include "errors.hpp"

namespace stein {

namespace {

void check_theta(double theta_norm) {
  if (!(theta_norm >= 0.0))
    throw DomainError("theta norm must be non-negative");
}

} // namespace

double risk_delta_exact(int p, double theta_norm, double c, const SeriesControl& ctl) {
  if (p <= 2)
    throw DomainError("exact risk difference requires p >= 3");
  check_theta(theta_norm);
  const double gain = shrinkage_gain(p, c);
  if (gain == 0.0)
    return 0.0;
  return 2.0 * inv_noncentral_chisq_mean(p, theta_norm * theta_norm, ctl) * gain;
}

double risk_delta_approx(int p, double theta_norm, double c) {
  if (p < 1)
    throw DomainError("p must be >= 1");
  check_theta(theta_norm);
  return 2.0 / (theta_norm * theta_norm + p) * shrinkage_gain(p, c);
}

RiskDelta risk_delta(int p, double theta_norm, double c, const SeriesControl& ctl) {
  return {risk_delta_exact(p, theta_norm, c, ctl), risk_delta_approx(p, theta_norm, c), p,
          theta_norm, c};
}

double risk_exact(int p, double theta_norm, const EstimatorSpec& spec, const SeriesControl& ctl) {
  switch (spec.kind) {
  case EstimatorKind::Identity:
    if (p < 1)
      throw DomainError("p must be >= 1");
    return p;
  case EstimatorKind::ShrinkC:
    return p - risk_delta_exact(p, theta_norm, spec.c, ctl);
  case EstimatorKind::NGO:
    throw Unsupported("no closed-form risk for 'ngo'; use shrink:C=" + std::to_string(p - 1) +
                      " or Monte Carlo");
  case EstimatorKind::ShrinkCa:
    throw Unsupported("no closed-form risk for shrink:C,a; use Monte Carlo");
  }
  throw InvalidArgument("unknown estimator kind");
}

double norm_sq_mean(int p, double theta_norm) {
  if (p < 1)
    throw DomainError("p must be >= 1");
  check_theta(theta_norm);
  return theta_norm * theta_norm + p;
}

} // namespace stein
