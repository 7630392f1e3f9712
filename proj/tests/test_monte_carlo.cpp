#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "exact_risk.hpp"
#include "monte_carlo.hpp"

using namespace stein;

namespace {

bool within(const RiskEstimate& e, double target, double sigmas = 4.0) {
  return std::abs(e.mean - target) <= sigmas * e.std_error;
}

bool same_cloud(const CloudSample& a, const CloudSample& b) {
  if (a.points.size() != b.points.size())
    return false;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    if (a.points[i].x1 != b.points[i].x1 || a.points[i].r != b.points[i].r)
      return false;
  return true;
}

bool same_estimate(const RiskEstimate& a, const RiskEstimate& b) {
  return a.mean == b.mean && a.std_error == b.std_error && a.n == b.n;
}

} // namespace

TEST_CASE("cloud of 2000 points at p = 20, theta = 25") {
  const ProblemConfig cfg{20, 25.0, 7};
  const CloudSample cloud = simulate_cloud(cfg, 2000);
  REQUIRE(cloud.points.size() == 2000);
  double sx = 0.0, sr2 = 0.0;
  for (const auto& z : cloud.points) {
    CHECK(z.r >= 0.0);
    sx += z.x1;
    sr2 += z.r * z.r;
  }
  CHECK(std::abs(sx / 2000.0 - 25.0) <= 4.0 / std::sqrt(2000.0));
  CHECK(std::abs(sr2 / 2000.0 - 19.0) <= 4.0 * std::sqrt(38.0) / std::sqrt(2000.0));
  CHECK(cloud.config.p == 20);
  CHECK(same_cloud(cloud, simulate_cloud(cfg, 2000)));

  const CloudSample one = simulate_cloud(cfg, 1);
  REQUIRE(one.points.size() == 1);
  CHECK(one.points[0].r >= 0.0);
  CHECK(one.points[0].x1 == cloud.points[0].x1);
}

TEST_CASE("sampling preconditions") {
  CHECK_THROWS_AS(simulate_cloud({1, 1.0, 0}, 10), DomainError);
  CHECK_THROWS_AS(simulate_cloud({3, 1.0, 0}, 0), InvalidArgument);
  CHECK_THROWS_AS(simulate_cloud({3, -1.0, 0}, 10), DomainError);
  CHECK_THROWS_AS(estimate_risk_mc({3, 1.0, 0}, EstimatorSpec::identity(), 1), InvalidArgument);
  CHECK_THROWS_AS(estimate_delta_mc({1, 1.0, 0}, 1.0, 10), DomainError);
  CHECK_NOTHROW(estimate_exceedance_prob({1, 1.0, 0}, 10));
}

TEST_CASE("results do not depend on the thread count") {
  const ProblemConfig cfg{10, 3.0, 42};
  const std::size_t n = 5 * kChunkSize + 123;
  const CloudSample base = simulate_cloud(cfg, n, {1});
  const RiskEstimate risk = estimate_risk_mc(cfg, EstimatorSpec::shrink(6.0), n, {1});
  const RiskEstimate delta = estimate_delta_mc(cfg, 8.0, n, {1});
  const RiskEstimate exceed = estimate_exceedance_prob(cfg, n, {1});
  for (unsigned threads : {2u, 3u, 8u, 0u}) {
    CAPTURE(threads);
    CHECK(same_cloud(base, simulate_cloud(cfg, n, {threads})));
    CHECK(same_estimate(risk, estimate_risk_mc(cfg, EstimatorSpec::shrink(6.0), n, {threads})));
    CHECK(same_estimate(delta, estimate_delta_mc(cfg, 8.0, n, {threads})));
    CHECK(same_estimate(exceed, estimate_exceedance_prob(cfg, n, {threads})));
  }
  CHECK_FALSE(same_cloud(base, simulate_cloud({10, 3.0, 43}, n)));
}

TEST_CASE("usual estimator has risk p") {
  for (int p : {2, 5, 20}) {
    const RiskEstimate e = estimate_risk_mc({p, 4.0, 1}, EstimatorSpec::identity(), 1'000'000);
    CHECK(e.n == 1'000'000);
    CHECK(within(e, p));
  }
}

TEST_CASE("risk at the origin and at the window edge") {
  const RiskEstimate origin = estimate_risk_mc({3, 0.0, 7}, EstimatorSpec::shrink(1.0), 1'000'000);
  CHECK(within(origin, 2.0));
  for (int p : {4, 8}) {
    const RiskEstimate edge =
        estimate_risk_mc({p, 2.0, 5}, EstimatorSpec::shrink(2.0 * (p - 2)), 1'000'000);
    CHECK(within(edge, p));
  }
}

TEST_CASE("paired risk difference") {
  const RiskEstimate zero = estimate_delta_mc({6, 2.0, 3}, 0.0, 10000);
  CHECK(zero.mean == 0.0);
  CHECK(zero.std_error == 0.0);

  const RiskEstimate far = estimate_delta_mc({20, 25.0, 7}, 18.0, 1'000'000);
  CHECK(within(far, risk_delta_exact(20, 25.0, 18.0)));

  const RiskEstimate origin = estimate_delta_mc({3, 0.0, 7}, 1.0, 1'000'000);
  CHECK(within(origin, 1.0));
  CHECK_FALSE(within(origin, 0.5));

  for (int p : {3, 5, 10})
    for (double t : {0.0, 1.0, 5.0}) {
      CAPTURE(p);
      CAPTURE(t);
      const double c = p - 2.0;
      CHECK(within(estimate_delta_mc({p, t, 11}, c, 400'000), risk_delta_exact(p, t, c), 4.5));
    }
}

TEST_CASE("pairing reduces the standard error") {
  const ProblemConfig cfg{8, 2.0, 21};
  const std::size_t n = 200'000;
  const RiskEstimate paired = estimate_delta_mc(cfg, 6.0, n);
  const RiskEstimate r0 = estimate_risk_mc({8, 2.0, 22}, EstimatorSpec::identity(), n);
  const RiskEstimate r1 = estimate_risk_mc({8, 2.0, 23}, EstimatorSpec::shrink(6.0), n);
  CHECK(paired.std_error < std::hypot(r0.std_error, r1.std_error));
}

TEST_CASE("reduced and full sampling paths agree") {
  for (int p : {3, 7, 15})
    for (double t : {0.0, 2.0, 6.0}) {
      CAPTURE(p);
      CAPTURE(t);
      const ProblemConfig cfg{p, t, 31};
      const EstimatorSpec spec = EstimatorSpec::shrink(p - 1.5);
      const RiskEstimate z = estimate_risk_mc(cfg, spec, 200'000, {0, SamplingPath::Reduced});
      const RiskEstimate x = estimate_risk_mc({p, t, 32}, spec, 200'000, {0, SamplingPath::Full});
      CHECK(std::abs(z.mean - x.mean) <= 4.0 * std::hypot(z.std_error, x.std_error));
    }

  const CloudSample full = simulate_cloud({5, 3.0, 1}, 1000, {0, SamplingPath::Full});
  for (const auto& z : full.points)
    CHECK(z.r >= 0.0);
}

TEST_CASE("exceedance probability") {
  const RiskEstimate zero = estimate_exceedance_prob({5, 0.0, 1}, 1000);
  CHECK(zero.mean == 1.0);
  CHECK(zero.std_error == 0.0);

  const RiskEstimate far = estimate_exceedance_prob({20, 1e4, 7}, 1'000'000);
  CHECK(within(far, 0.5));
  CHECK(far.std_error == doctest::Approx(std::sqrt(far.mean * (1.0 - far.mean) / 1e6)));

  CHECK(estimate_exceedance_prob({20, 1.0, 7}, 1'000'000).mean > 0.99);
}

TEST_CASE("squared norm mean") {
  const std::size_t n = 100'000;
  const RiskEstimate e = estimate_norm_sq_mc({100, 5.0, 9}, n);
  CHECK(std::abs(e.mean - 125.0) <= 4.0 * std::sqrt((200.0 + 100.0) / n));
}

TEST_CASE("smoothed shrinkage matches its quadrature values") {
  // Frozen from one-dimensional quadrature of the Stein-identity form of the
  // risk difference, p = 5, c = 3, a = 10.
  const struct { double theta, delta; } frozen[] = {
      {20.0, 0.02314679084955896},
      {40.0, 0.005667613979734344},
      {80.0, 0.0014089482687468713},
  };
  const EstimatorSpec spec = EstimatorSpec::shrink(3.0, 10.0);
  for (const auto& f : frozen) {
    CAPTURE(f.theta);
    const RiskEstimate e = estimate_delta_mc({5, f.theta, 7}, spec, 1'000'000);
    CHECK(within(e, f.delta));
    // The scaled difference approaches 2(c(p-2) - c^2/2) = 9 from above.
    CHECK((10.0 + f.theta * f.theta) * f.delta > 9.0);
  }
}
