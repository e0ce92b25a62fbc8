#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mixedmi/numerics.hpp"

using mixedmi::digamma;
using mixedmi::lp_ball_log_volume_constant;
using mixedmi::mean;

TEST_CASE("digamma at small integers") {
  const double euler = 0.57721566490153286;
  CHECK(digamma(1.0) == Catch::Approx(-euler).margin(1e-12));
  CHECK(digamma(2.0) == Catch::Approx(1.0 - euler).margin(1e-12));
  // psi(1/2) = -euler - 2 log 2
  CHECK(digamma(0.5) ==
        Catch::Approx(-euler - 2.0 * std::log(2.0)).margin(1e-10));
}

TEST_CASE("digamma recurrence psi(x+1) - psi(x) = 1/x") {
  for (double x = 1.0; x <= 1e4; x *= 1.37) {
    CHECK(digamma(x + 1.0) - digamma(x) == Catch::Approx(1.0 / x).margin(1e-10));
  }
  for (double x = 1.0; x <= 50.0; x += 1.0) {
    CHECK(digamma(x + 1.0) - digamma(x) == Catch::Approx(1.0 / x).margin(1e-10));
  }
}

TEST_CASE("digamma stays within 1/x of log x") {
  for (double x : {1.0, 2.0, 5.0, 10.0, 100.0}) {
    CHECK(std::abs(std::log(x) - digamma(x)) <= 1.0 / x + 1e-12);
  }
}

TEST_CASE("digamma rejects nonpositive arguments") {
  CHECK_THROWS_AS(digamma(0.0), std::domain_error);
  CHECK_THROWS_AS(digamma(-3.0), std::domain_error);
}

TEST_CASE("lp ball volume constants") {
  CHECK(lp_ball_log_volume_constant(1, 2.0) ==
        Catch::Approx(std::log(2.0)).margin(1e-12));
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(lp_ball_log_volume_constant(2, inf) ==
        Catch::Approx(std::log(4.0)).margin(1e-12));
  // Unit disc: evaluate the Gamma formula independently.
  const double expected =
      2.0 * std::log(2.0) + 2.0 * std::lgamma(1.5) - std::lgamma(2.0);
  CHECK(expected == Catch::Approx(std::log(std::numbers::pi)).margin(1e-12));
  CHECK(lp_ball_log_volume_constant(2, 2.0) ==
        Catch::Approx(std::log(std::numbers::pi)).margin(1e-12));
  CHECK_THROWS_AS(lp_ball_log_volume_constant(0, 2.0), std::invalid_argument);
}

TEST_CASE("mean basics and order insensitivity") {
  CHECK(mean({0.0, 0.0, 0.0}) == 0.0);
  CHECK(mean({1.0, 2.0, 3.0}) == Catch::Approx(2.0).margin(1e-15));
  CHECK_THROWS_AS(mean({}), std::invalid_argument);

  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> values(5000);
  for (double& v : values) v = dist(gen);
  const double m1 = mean(values);
  std::vector<double> shuffled = values;
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  std::sort(values.begin(), values.end());
  CHECK(mean(shuffled) == Catch::Approx(m1).epsilon(1e-12));
  CHECK(mean(values) == Catch::Approx(m1).epsilon(1e-12));
}
