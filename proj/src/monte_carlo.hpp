#pragma once

#include <cstddef>
#include <vector>

#include "core_model.hpp"
#include "estimators.hpp"

namespace stein {

struct RiskEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long n = 0;
};

struct CloudSample {
  std::vector<ZPoint> points;
  ProblemConfig config;
};

enum class SamplingPath {
  Reduced, // one N(theta,1) and one chi^2_{p-1} draw per replicate
  Full,    // p normal draws around theta = theta_norm * (1,...,1)/sqrt(p)
};

struct McOptions {
  unsigned threads = 0; // 0: hardware concurrency
  SamplingPath path = SamplingPath::Reduced;
};

/// Replicates per RNG stream. Chunk i always uses stream (seed, i), so
/// results do not depend on the thread count.
inline constexpr std::size_t kChunkSize = 1u << 15;

CloudSample simulate_cloud(const ProblemConfig& config, std::size_t n, const McOptions& opts = {});

/// Empirical risk E|delta(Z) - (theta, 0)|^2.
RiskEstimate estimate_risk_mc(const ProblemConfig& config, const EstimatorSpec& spec,
                              std::size_t n, const McOptions& opts = {});

/// Paired loss(delta_0) - loss(delta_C) on common draws.
RiskEstimate estimate_delta_mc(const ProblemConfig& config, double c, std::size_t n,
                               const McOptions& opts = {});

/// Paired loss(delta_0) - loss(spec) on common draws.
RiskEstimate estimate_delta_mc(const ProblemConfig& config, const EstimatorSpec& spec,
                               std::size_t n, const McOptions& opts = {});

/// Frequency of |X| >= |theta|; std_error from the binomial formula.
RiskEstimate estimate_exceedance_prob(const ProblemConfig& config, std::size_t n,
                                      const McOptions& opts = {});

/// Sample mean of |X|^2.
RiskEstimate estimate_norm_sq_mc(const ProblemConfig& config, std::size_t n,
                                 const McOptions& opts = {});

} // namespace stein
