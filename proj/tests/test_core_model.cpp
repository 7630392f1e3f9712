#include <doctest.h>

#include <cmath>
#include <random>

#include "core_model.hpp"
#include "errors.hpp"
#include "test_support.hpp"

using namespace stein;
using stein::test::dot;
using stein::test::random_vector;
using stein::test::rel_diff;

TEST_CASE("z_reduce: worked examples") {
  SUBCASE("theta already on an axis") {
    const auto z = z_reduce(FullVector{{3, 4, 0}}, FullVector{{1, 0, 0}});
    CHECK(z.x1 == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(z.r == doctest::Approx(4.0).epsilon(1e-15));
  }
  SUBCASE("x on the theta ray") {
    const auto z = z_reduce(FullVector{{2, 2}}, FullVector{{2, 2}});
    CHECK(z.x1 == doctest::Approx(std::sqrt(8.0)).epsilon(1e-15));
    CHECK(z.r == doctest::Approx(0.0));
  }
  SUBCASE("off-axis theta, projection by hand") {
    const auto z = z_reduce(FullVector{{1, 2, 2}}, FullVector{{0, 3, 0}});
    CHECK(z.x1 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(z.r == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  }
}

TEST_CASE("z_reduce: errors") {
  CHECK_THROWS_AS(z_reduce(FullVector{{1, 2}}, FullVector{{0, 0}}), DomainError);
  CHECK_THROWS_WITH_AS(z_reduce(FullVector{{1, 2}}, FullVector{{0, 0}}),
                       doctest::Contains("direction undefined"), DomainError);
  CHECK_THROWS_AS(z_reduce(FullVector{{1, 2, 3}}, FullVector{{1, 0}}), InvalidArgument);
}

TEST_CASE("squared_error examples") {
  CHECK(squared_error(FullVector{{1, 2}}, FullVector{{1, 2}}) == 0.0);
  CHECK(squared_error(FullVector{{1, 1}}, FullVector{{0, 0}}) == 2.0);
  CHECK(squared_error(FullVector{{1, 2, 3}}, FullVector{{0, 0, 0}}) == 14.0);
  CHECK_THROWS_AS(squared_error(FullVector{{1}}, FullVector{{0, 0}}), InvalidArgument);

  CHECK(squared_error_z({7.5, 0}, 7.5) == 0.0);
  CHECK(squared_error_z({25, std::sqrt(19.0)}, 25) == doctest::Approx(19.0).epsilon(1e-14));
  CHECK(squared_error_z({2, 2}, 3) == 5.0);
}

TEST_CASE("ProblemConfig validation") {
  CHECK_NOTHROW((ProblemConfig{1, 0.0, 0}.validate()));
  CHECK_THROWS_AS((ProblemConfig{0, 1.0, 0}.validate()), DomainError);
  CHECK_THROWS_AS((ProblemConfig{3, -1.0, 0}.validate()), DomainError);
}

TEST_CASE("reduction preserves distances for scaled observations") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(2, 40);
  std::uniform_real_distribution<double> tau_d(-2.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = static_cast<std::size_t>(dim(rng));
    const auto x = random_vector(rng, p);
    const auto theta = random_vector(rng, p);
    const double tau = tau_d(rng);

    std::vector<double> est(x);
    for (auto& v : est)
      v *= tau;
    const double full = squared_error(est, theta);

    const ZPoint z = z_reduce(x, theta);
    const double reduced = squared_error_z({tau * z.x1, tau * z.r}, std::sqrt(dot(theta, theta)));
    REQUIRE(rel_diff(full, reduced) < 1e-10);
    REQUIRE(rel_diff(z.x1 * z.x1 + z.r * z.r, dot(x, x)) < 1e-10);
  }
}

TEST_CASE("reduction is unchanged by rotations fixing theta") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t p = 3 + trial % 20;
    const auto x = random_vector(rng, p);
    const auto theta = random_vector(rng, p);

    // Reflect across a hyperplane whose normal is orthogonal to theta.
    auto u = random_vector(rng, p, 1.0);
    const double k = dot(u, theta) / dot(theta, theta);
    for (std::size_t i = 0; i < p; ++i)
      u[i] -= k * theta[i];
    const double u_sq = dot(u, u);
    const double proj = 2.0 * dot(u, x) / u_sq;
    std::vector<double> x_rot(x);
    for (std::size_t i = 0; i < p; ++i)
      x_rot[i] -= proj * u[i];

    const ZPoint a = z_reduce(x, theta);
    const ZPoint b = z_reduce(x_rot, theta);
    REQUIRE(std::abs(a.x1 - b.x1) < 1e-10);
    REQUIRE(std::abs(a.r - b.r) < 1e-10);
  }
}
