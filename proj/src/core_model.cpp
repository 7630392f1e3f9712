#include "core_model.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace stein {

void ProblemConfig::validate() const {
  if (p < 1)
    throw DomainError("dimension p must be >= 1, got " + std::to_string(p));
  if (!(theta_norm >= 0.0))
    throw DomainError("theta norm must be non-negative");
}

double FullVector::norm_sq() const {
  return std::inner_product(coords.begin(), coords.end(), coords.begin(), 0.0);
}

ZPoint z_reduce(std::span<const double> x, std::span<const double> theta) {
  if (x.size() != theta.size())
    throw InvalidArgument("z_reduce: length mismatch (" + std::to_string(x.size()) + " vs " +
                          std::to_string(theta.size()) + ")");
  if (x.size() < 2)
    throw InvalidArgument("z_reduce: dimension must be >= 2");

  const double theta_sq = std::inner_product(theta.begin(), theta.end(), theta.begin(), 0.0);
  if (!(theta_sq > 0.0))
    throw DomainError("z_reduce: direction undefined for zero-norm theta");
  const double theta_len = std::sqrt(theta_sq);

  const double along = std::inner_product(x.begin(), x.end(), theta.begin(), 0.0) / theta_len;

  // Residual computed explicitly rather than via |x|^2 - along^2, which cancels badly.
  double resid_sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - along * theta[i] / theta_len;
    resid_sq += d * d;
  }
  return {along, std::sqrt(resid_sq)};
}

double squared_error(std::span<const double> estimate, std::span<const double> theta) {
  if (estimate.size() != theta.size())
    throw InvalidArgument("squared_error: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double d = estimate[i] - theta[i];
    acc += d * d;
  }
  return acc;
}

double squared_error_z(Vec2 estimate, double theta_norm) {
  const double d = estimate.x - theta_norm;
  return d * d + estimate.y * estimate.y;
}

} // namespace stein
