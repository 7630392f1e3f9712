#include "geometry.hpp"

#include <cmath>

#include "errors.hpp"

namespace stein {

GeometryReport ngo_projection(int p, double theta_norm) {
  if (p < 2)
    throw DomainError("projection requires p >= 2");
  if (!(theta_norm > 0.0))
    throw DomainError("projection degenerate at theta = 0");

  GeometryReport g;
  g.a = {theta_norm, 0.0};
  g.b = {theta_norm, std::sqrt(static_cast<double>(p - 1))};

  const double ob_sq = g.b.norm_sq();
  // <A,B>/|B|^2 = theta^2/|xi|^2; its complement (p-1)/|xi|^2 is formed directly
  // because B - C = (1 - shrink) B loses all digits to cancellation for large theta.
  g.shrink_factor = (g.a.x * g.b.x + g.a.y * g.b.y) / ob_sq;
  const double complement = (g.b.y * g.b.y) / ob_sq;
  g.c_point = {g.shrink_factor * g.b.x, g.shrink_factor * g.b.y};

  g.len_ab = g.b.y;
  g.len_ob = std::sqrt(ob_sq);
  g.len_bc = complement * g.len_ob;
  g.len_ac = std::hypot(complement * g.a.x, g.c_point.y);
  return g;
}

} // namespace stein
