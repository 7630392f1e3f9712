#pragma once

#include "core_model.hpp"

namespace stein {

/// Planar construction with O the origin, A = (theta, 0) the target,
/// B = (theta, sqrt(p-1)) the typical observation and C the foot of the
/// perpendicular from A onto the line OB.
struct GeometryReport {
  Vec2 a;
  Vec2 b;
  Vec2 c_point;
  double len_ab = 0.0;
  double len_ob = 0.0;
  double len_bc = 0.0;
  double len_ac = 0.0;
  double shrink_factor = 0.0; // C = shrink_factor * B
};

GeometryReport ngo_projection(int p, double theta_norm);

} // namespace stein
