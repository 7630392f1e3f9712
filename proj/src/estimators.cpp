#include "estimators.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "errors.hpp"

namespace stein {

namespace {

bool parse_real(std::string_view text, double& out) {
  if (text.empty())
    return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::string format_real(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

[[noreturn]] void bad_spec(std::string_view text) {
  throw InvalidArgument("unrecognised estimator '" + std::string(text) +
                        "' (expected identity, ngo, shrink:C=<real> or shrink:C=<real>,a=<real>)");
}

} // namespace

EstimatorSpec EstimatorSpec::shrink(double c, double a) {
  if (!(a >= 0.0))
    throw DomainError("regularisation a must be non-negative");
  return {EstimatorKind::ShrinkCa, c, a};
}

EstimatorSpec EstimatorSpec::parse(std::string_view text) {
  if (text == "identity")
    return identity();
  if (text == "ngo")
    return ngo();

  constexpr std::string_view prefix = "shrink:C=";
  if (!text.starts_with(prefix))
    bad_spec(text);
  std::string_view rest = text.substr(prefix.size());

  const auto comma = rest.find(',');
  double c = 0.0;
  if (comma == std::string_view::npos) {
    if (!parse_real(rest, c))
      bad_spec(text);
    return shrink(c);
  }

  std::string_view a_part = rest.substr(comma + 1);
  constexpr std::string_view a_prefix = "a=";
  double a = 0.0;
  if (!parse_real(rest.substr(0, comma), c) || !a_part.starts_with(a_prefix) ||
      !parse_real(a_part.substr(a_prefix.size()), a))
    bad_spec(text);
  if (a < 0.0)
    throw InvalidArgument("estimator '" + std::string(text) + "': a must be non-negative");
  return shrink(c, a);
}

std::string EstimatorSpec::to_string() const {
  switch (kind) {
  case EstimatorKind::Identity:
    return "identity";
  case EstimatorKind::NGO:
    return "ngo";
  case EstimatorKind::ShrinkC:
    return "shrink:C=" + format_real(c);
  case EstimatorKind::ShrinkCa:
    return "shrink:C=" + format_real(c) + ",a=" + format_real(a);
  }
  return {};
}

double shrink_factor(const EstimatorSpec& spec, double norm_sq, int p) {
  if (!(norm_sq >= 0.0))
    throw DomainError("squared norm must be non-negative");
  switch (spec.kind) {
  case EstimatorKind::Identity:
    return 1.0;
  case EstimatorKind::ShrinkC:
    if (norm_sq == 0.0)
      throw DomainError("shrinkage undefined at origin");
    return 1.0 - spec.c / norm_sq;
  case EstimatorKind::ShrinkCa: {
    const double denom = spec.a + norm_sq;
    if (denom == 0.0)
      throw DomainError("shrinkage undefined at origin");
    return 1.0 - spec.c / denom;
  }
  case EstimatorKind::NGO:
    if (norm_sq == 0.0)
      throw DomainError("shrinkage undefined at origin");
    return 1.0 - static_cast<double>(p - 1) / norm_sq;
  }
  throw InvalidArgument("unknown estimator kind");
}

Vec2 apply(const EstimatorSpec& spec, Vec2 point, int p) {
  const double tau = shrink_factor(spec, point.norm_sq(), p);
  return {tau * point.x, tau * point.y};
}

std::vector<double> apply(const EstimatorSpec& spec, std::span<const double> x, int p) {
  const double nsq = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
  const double tau = shrink_factor(spec, nsq, p);
  std::vector<double> out(x.begin(), x.end());
  for (auto& v : out)
    v *= tau;
  return out;
}

} // namespace stein
