#include "special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace stein {

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw InvalidArgument("series rel_tol must lie in (0, 1)");
  if (max_terms < 1)
    throw InvalidArgument("series max_terms must be >= 1");
}

double log_gamma(double x) {
  if (!(x > 0.0))
    throw DomainError("log_gamma: argument must be positive");
  int sign = 0;
  // lgamma_r does not touch the global signgam.
  return ::lgamma_r(x, &sign);
}

double expected_chi_norm(int p) {
  if (p < 2)
    throw DomainError("expected_chi_norm: p must be >= 2");
  return std::numbers::sqrt2 * std::exp(log_gamma(p / 2.0) - log_gamma((p - 1) / 2.0));
}

double expected_chi_norm_asymptotic(int p) {
  if (p < 2)
    throw DomainError("expected_chi_norm_asymptotic: p must be >= 2");
  const double s = std::sqrt(static_cast<double>(p - 1));
  return s - 1.0 / (4.0 * s);
}

double inv_noncentral_chisq_mean(int p, double lambda, const SeriesControl& ctl) {
  if (p <= 2)
    throw DomainError("inverse moment diverges for p <= 2");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw DomainError("noncentrality must be finite and non-negative");
  ctl.validate();

  const double base = p - 2.0;
  if (lambda == 0.0)
    return 1.0 / base;

  // K ~ Poisson(mu); sum outward from the mode so the leading weights never underflow.
  const double mu = lambda / 2.0;
  const double mode = std::floor(mu);
  const double w_mode = std::exp(-mu + mode * std::log(mu) - log_gamma(mode + 1.0));

  double sum = w_mode / (base + 2.0 * mode);
  long terms = 1;

  // Upward: terms decrease in k; the tail mass past k is bounded geometrically once
  // the ratio mu/(k+2) drops below 1, and each remaining term is at most w/(base+2(k+1)).
  double w = w_mode;
  double k = mode;
  bool up_done = false;
  // Downward: terms below the mode; tail mass below k bounded by w_{k-1}/(1 - (k-1)/mu),
  // each term at most w/base.
  double w_down = w_mode;
  double k_down = mode;
  bool down_done = (mode == 0.0);

  auto reserve_term = [&] {
    if (terms >= ctl.max_terms)
      throw NotConverged("inverse noncentral chi-square moment: series did not converge in " +
                             std::to_string(ctl.max_terms) + " terms",
                         sum, terms);
  };

  while (!(up_done && down_done)) {
    if (!up_done) {
      reserve_term();
      w *= mu / (k + 1.0);
      k += 1.0;
      sum += w / (base + 2.0 * k);
      ++terms;
      const double ratio = mu / (k + 2.0);
      if (ratio < 1.0) {
        const double tail_mass = w * (mu / (k + 1.0)) / (1.0 - ratio);
        if (tail_mass / (base + 2.0 * (k + 1.0)) <= 0.5 * ctl.rel_tol * sum)
          up_done = true;
      }
    }
    if (!down_done) {
      reserve_term();
      w_down *= k_down / mu;
      k_down -= 1.0;
      sum += w_down / (base + 2.0 * k_down);
      ++terms;
      if (k_down == 0.0) {
        down_done = true;
      } else {
        const double ratio = (k_down - 1.0) / mu;
        const double tail_mass = w_down * (k_down / mu) / (1.0 - ratio);
        if (tail_mass / base <= 0.5 * ctl.rel_tol * sum)
          down_done = true;
      }
    }
  }
  return sum;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

double RngStream::chi_squared(double df) {
  if (df == 0.0)
    return 0.0;
  if (!(df > 0.0))
    throw DomainError("chi-square degrees of freedom must be positive");
  if (df != gamma_.alpha() * 2.0)
    gamma_.param(std::gamma_distribution<double>::param_type(df / 2.0, 2.0));
  return gamma_(engine_);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x5eedu};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

} // namespace stein
