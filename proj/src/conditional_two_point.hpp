#pragma once

#include "core_model.hpp"

namespace stein {

// Two equally likely surrogate observations (theta_norm +/- 1, sqrt(p-1)).
// p is real-valued here: the algebra is polynomial in p and sampling never happens.

struct XiPair {
  Vec2 xi_plus;
  Vec2 xi_minus;
  double norm_sq_plus = 0.0;
  double norm_sq_minus = 0.0;
};

struct ConditionalBreakdown {
  double l_plus_1 = 0.0;
  double l_plus_2 = 0.0;
  double l_minus_1 = 0.0;
  double l_minus_2 = 0.0;
  double r_cond_1 = 0.0;
  double r_cond_2 = 0.0;
  double delta = 0.0;
};

/// Open interval (lo, hi) of admissible-improvement constants; empty when hi <= lo.
struct DominanceWindow {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const { return !(hi > lo); }
  bool contains(double c) const { return c > lo && c < hi; }
};

XiPair xi_points(double p, double theta_norm);

/// Per-coordinate losses of delta_C at xi_+ and xi_-, their averages and
/// delta = p - (r_cond_1 + r_cond_2).
ConditionalBreakdown conditional_losses(double p, double theta_norm, double c);

/// 2/(|xi+|^2 |xi-|^2) * ((c(p-2) - c^2/2) theta^2 + (cp - c^2/2) p).
double conditional_delta_closed(double p, double theta_norm, double c);

/// c theta (1/|xi+|^2 - 1/|xi-|^2); non-positive for c, theta >= 0.
double conditional_cross_term(double p, double theta_norm, double c);

DominanceWindow dominance_window(double p);

} // namespace stein
