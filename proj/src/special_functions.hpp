#pragma once

#include <cstdint>
#include <random>

namespace stein {

struct SeriesControl {
  double rel_tol = 1e-12;
  long max_terms = 100000;

  void validate() const;
};

double log_gamma(double x);

/// E(R) for R^2 ~ chi^2_{p-1}: sqrt(2) Gamma(p/2) / Gamma((p-1)/2).
double expected_chi_norm(int p);

/// sqrt(p-1) - 1/(4 sqrt(p-1)).
double expected_chi_norm_asymptotic(int p);

/// E[1/Y] for Y ~ noncentral chi^2 with p degrees of freedom and noncentrality
/// lambda, summed as the Poisson(lambda/2) mixture of 1/(p - 2 + 2k).
/// Requires p >= 3; throws NotConverged with the partial sum if max_terms runs out.
double inv_noncentral_chisq_mean(int p, double lambda, const SeriesControl& ctl = {});

/// One independent random stream. Streams are single-owner; two streams
/// built from the same (seed, index) produce the same sequence.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t index);

  double standard_normal() { return normal_(engine_); }
  /// df == 0 is accepted and yields 0 (degenerate chi-square).
  double chi_squared(double df);

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::gamma_distribution<double> gamma_{1.0, 2.0};
};

inline double sample_standard_normal(RngStream& rng) { return rng.standard_normal(); }
inline double sample_chi_squared(RngStream& rng, double df) { return rng.chi_squared(df); }

/// Child seed for task `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace stein
