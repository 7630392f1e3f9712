#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stein {

// Unit variance throughout; the model is X ~ N(theta, I_p).
struct ProblemConfig {
  int p = 1;
  double theta_norm = 0.0;
  std::uint64_t seed = 0;

  /// Throws DomainError unless p >= 1 and theta_norm >= 0.
  void validate() const;
};

/// Reduced observation: coordinate along theta and the orthogonal residual length.
struct ZPoint {
  double x1 = 0.0;
  double r = 0.0;
};

/// Plain planar vector. Estimates in the reduced plane live here, since
/// shrinking past the origin can flip the sign of the second coordinate.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm_sq() const { return x * x + y * y; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 to_vec(ZPoint z) { return {z.x1, z.r}; }

struct FullVector {
  std::vector<double> coords;

  std::size_t size() const { return coords.size(); }
  double norm_sq() const;
};

/// Scalar projection of x on theta/|theta| and the length of the residual.
ZPoint z_reduce(std::span<const double> x, std::span<const double> theta);
inline ZPoint z_reduce(const FullVector& x, const FullVector& theta) {
  return z_reduce(x.coords, theta.coords);
}

double squared_error(std::span<const double> estimate, std::span<const double> theta);
inline double squared_error(const FullVector& estimate, const FullVector& theta) {
  return squared_error(estimate.coords, theta.coords);
}

/// Loss against the canonical target (theta_norm, 0) in the reduced plane.
double squared_error_z(Vec2 estimate, double theta_norm);

} // namespace stein
