#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core_model.hpp"

namespace stein {

enum class EstimatorKind { Identity, ShrinkC, ShrinkCa, NGO };

/// One member of the spherically symmetric family tau(|X|^2) * X.
///
///   Identity : tau = 1
///   ShrinkC  : tau = 1 - c / |X|^2
///   ShrinkCa : tau = 1 - c / (a + |X|^2)
///   NGO      : tau = 1 - (p - 1) / |X|^2
///
/// c may be any real; negative or oversized values are deliberately allowed.
/// No positive-part truncation is applied.
struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::Identity;
  double c = 0.0;
  double a = 0.0;

  static EstimatorSpec identity() { return {}; }
  static EstimatorSpec shrink(double c) { return {EstimatorKind::ShrinkC, c, 0.0}; }
  static EstimatorSpec shrink(double c, double a);
  static EstimatorSpec ngo() { return {EstimatorKind::NGO, 0.0, 0.0}; }

  /// Parses `identity`, `ngo`, `shrink:C=<real>` or `shrink:C=<real>,a=<real>`.
  static EstimatorSpec parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const EstimatorSpec&, const EstimatorSpec&) = default;
};

double shrink_factor(const EstimatorSpec& spec, double norm_sq, int p);

Vec2 apply(const EstimatorSpec& spec, Vec2 point, int p);
inline Vec2 apply(const EstimatorSpec& spec, ZPoint point, int p) {
  return apply(spec, to_vec(point), p);
}
std::vector<double> apply(const EstimatorSpec& spec, std::span<const double> x, int p);

} // namespace stein
