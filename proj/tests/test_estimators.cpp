#include <doctest.h>

#include <cmath>
#include <random>

#include "errors.hpp"
#include "estimators.hpp"
#include "test_support.hpp"

using namespace stein;

TEST_CASE("shrink_factor values") {
  CHECK(shrink_factor(EstimatorSpec::identity(), 0.0, 3) == 1.0);
  CHECK(shrink_factor(EstimatorSpec::identity(), 42.0, 3) == 1.0);
  CHECK(shrink_factor(EstimatorSpec::shrink(4.0), 13.0, 5) == doctest::Approx(9.0 / 13.0));
  CHECK(shrink_factor(EstimatorSpec::shrink(3.0, 2.0), 4.0, 5) == doctest::Approx(0.5));
  CHECK(shrink_factor(EstimatorSpec::shrink(3.0, 2.0), 0.0, 5) == doctest::Approx(-0.5));

  // NGO is the p-1 member of the family, at (theta, sqrt(p-1)) and everywhere else.
  for (int p : {2, 3, 5, 20})
    for (double nsq : {0.1, 1.0, 13.0, 645.0, 1e6})
      CHECK(shrink_factor(EstimatorSpec::ngo(), nsq, p) ==
            shrink_factor(EstimatorSpec::shrink(p - 1.0), nsq, p));
}

TEST_CASE("shrink_factor at the origin") {
  CHECK_THROWS_WITH_AS(shrink_factor(EstimatorSpec::shrink(1.0), 0.0, 3),
                       doctest::Contains("undefined at origin"), DomainError);
  CHECK_THROWS_AS(shrink_factor(EstimatorSpec::ngo(), 0.0, 3), DomainError);
  CHECK_THROWS_AS(shrink_factor(EstimatorSpec::shrink(1.0, 0.0), 0.0, 3), DomainError);
  CHECK_THROWS_AS(shrink_factor(EstimatorSpec::shrink(1.0), -1.0, 3), DomainError);
  CHECK_THROWS_AS(EstimatorSpec::shrink(1.0, -0.5), DomainError);
}

TEST_CASE("apply in the reduced plane") {
  CHECK(apply(EstimatorSpec::identity(), Vec2{3.0, -1.5}, 4) == Vec2{3.0, -1.5});

  const Vec2 plus = apply(EstimatorSpec::shrink(1.0), Vec2{3.0, std::sqrt(2.0)}, 3);
  CHECK(plus.x == doctest::Approx(30.0 / 11.0).epsilon(1e-15));
  CHECK(plus.y == doctest::Approx(10.0 * std::sqrt(2.0) / 11.0).epsilon(1e-15));

  const Vec2 ngo = apply(EstimatorSpec::ngo(), Vec2{3.0, 2.0}, 5);
  CHECK(ngo.x == doctest::Approx(27.0 / 13.0).epsilon(1e-15));
  CHECK(ngo.y == doctest::Approx(18.0 / 13.0).epsilon(1e-15));

  // Over-shrinking flips the point through the origin.
  const Vec2 flipped = apply(EstimatorSpec::shrink(10.0), ZPoint{1.0, 1.0}, 3);
  CHECK(flipped.x == doctest::Approx(-4.0));
  CHECK(flipped.y == doctest::Approx(-4.0));
}

TEST_CASE("regularised shrinkage tends to plain shrinkage as a -> 0") {
  for (double c : {-1.0, 0.5, 3.0, 17.0})
    for (double nsq : {0.5, 2.0, 40.0})
      CHECK(std::abs(shrink_factor(EstimatorSpec::shrink(c, 1e-12), nsq, 5) -
                     shrink_factor(EstimatorSpec::shrink(c), nsq, 5)) < 1e-9);
}

TEST_CASE("estimates are collinear with the observation and rotate with it") {
  std::mt19937_64 rng(21);
  const EstimatorSpec specs[] = {EstimatorSpec::identity(), EstimatorSpec::shrink(2.5),
                                 EstimatorSpec::shrink(-1.0), EstimatorSpec::shrink(4.0, 3.0),
                                 EstimatorSpec::ngo()};
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 2 + trial % 15;
    const auto x = test::random_vector(rng, p);
    const test::RandomRotation rot(rng, p);
    for (const auto& spec : specs) {
      const auto est = apply(spec, x, p);
      // Pairwise cross products vanish for parallel vectors.
      for (int i = 0; i + 1 < p; ++i)
        REQUIRE(std::abs(est[i] * x[i + 1] - est[i + 1] * x[i]) <
                1e-10 * (1.0 + std::abs(x[i] * x[i + 1])));

      const auto lhs = apply(spec, rot(x), p);
      const auto rhs = rot(est);
      for (int i = 0; i < p; ++i)
        REQUIRE(std::abs(lhs[i] - rhs[i]) < 1e-10 * (1.0 + std::abs(rhs[i])));
    }
  }
}

TEST_CASE("estimator text form") {
  CHECK(EstimatorSpec::parse("identity") == EstimatorSpec::identity());
  CHECK(EstimatorSpec::parse("ngo") == EstimatorSpec::ngo());
  CHECK(EstimatorSpec::parse("shrink:C=3") == EstimatorSpec::shrink(3.0));
  CHECK(EstimatorSpec::parse("shrink:C=-0.5") == EstimatorSpec::shrink(-0.5));
  CHECK(EstimatorSpec::parse("shrink:C=3,a=10") == EstimatorSpec::shrink(3.0, 10.0));
  CHECK(EstimatorSpec::parse("shrink:C=1e-3,a=0") == EstimatorSpec::shrink(1e-3, 0.0));

  for (const char* bad : {"", "Identity", "shrink", "shrink:C=", "shrink:c=1", "shrink:C=1,",
                          "shrink:C=1,a=", "shrink:C=1,b=2", "shrink:C=1,a=-2", "shrink:C=x",
                          " ngo", "shrink:C=1 ", "shrink:C=nan"})
    CHECK_THROWS_AS(EstimatorSpec::parse(bad), InvalidArgument);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ud(-100.0, 100.0);
  for (int i = 0; i < 500; ++i) {
    const EstimatorSpec s = (i % 2) ? EstimatorSpec::shrink(ud(rng))
                                    : EstimatorSpec::shrink(ud(rng), std::abs(ud(rng)));
    REQUIRE(EstimatorSpec::parse(s.to_string()) == s);
  }
}
