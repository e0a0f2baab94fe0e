#include <doctest.h>

#include <cmath>
#include <limits>

#include "aroc/special.hpp"
#include "oracles.hpp"

using namespace aroc;

TEST_CASE("normal cdf matches the series oracle") {
  CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  // Frozen from the erf series: Phi(1.959964) = 0.97500000...
  CHECK(std::fabs(std_normal_cdf(1.959964) - 0.975) < 1e-9);
  for (const double x : {-4.0, -2.5, -1.0, -0.1, 0.3, 1.0, 2.2, 3.7, 5.5}) {
    CHECK(std::fabs(std_normal_cdf(x) - oracles::normal_cdf_series(x)) < 1e-13);
  }
}

TEST_CASE("normal cdf deep tail obeys the Mills ratio bounds") {
  // phi(x) x / (1 + x^2) < Phi(-x) < phi(x) / x for x > 0.
  const double x = 8.0;
  const double phi = std_normal_pdf(x);
  const double tail = std_normal_cdf(-x);
  CHECK(tail > phi * x / (1.0 + x * x));
  CHECK(tail < phi / x);
  CHECK(tail > 0.0);
  CHECK(tail < 1e-14);
}

TEST_CASE("normal cdf symmetry and monotonicity") {
  for (double x = -8.0; x <= 8.0; x += 0.01) {
    CHECK(std::fabs(std_normal_cdf(-x) - (1.0 - std_normal_cdf(x))) <= 1e-15);
  }
  // Nondecreasing at a fine step; strictly increasing at a step wide enough
  // for the increment to be representable next to 1.
  double prev = std_normal_cdf(-8.0);
  for (double x = -8.0 + 1e-3; x <= 8.0; x += 1e-3) {
    const double cur = std_normal_cdf(x);
    CHECK(cur >= prev);
    prev = cur;
  }
  prev = std_normal_cdf(-8.0);
  for (double x = -7.9; x <= 8.0; x += 0.1) {
    const double cur = std_normal_cdf(x);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("normal cdf rejects non-finite input") {
  CHECK_THROWS_AS(std_normal_cdf(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(std_normal_cdf(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("normal quantile agrees with bisection on the cdf") {
  CHECK(std::fabs(std_normal_quantile(0.5)) < 1e-12);
  const double q = std_normal_quantile(0.975);
  const double bisect = oracles::quantile_bisect([](double x) { return std_normal_cdf(x); }, 0.975);
  CHECK(std::fabs(q - bisect) < 1e-9);
  CHECK(std::fabs(q - 1.959964) < 1e-6);
}

TEST_CASE("normal quantile symmetry, monotonicity, and round trips") {
  for (double p = 0.001; p < 0.5; p += 0.0007) {
    CHECK(std::fabs(std_normal_quantile(p) + std_normal_quantile(1.0 - p)) <= 1e-12);
  }
  double prev = -std::numeric_limits<double>::infinity();
  for (double p = 1e-4; p < 1.0 - 1e-4; p += 1e-3) {
    const double x = std_normal_quantile(p);
    CHECK(x > prev);
    prev = x;
    CHECK(std::fabs(std_normal_cdf(x) - p) <= 1e-10);
  }
  for (double x = -6.0; x <= 6.0 + 1e-12; x += 1e-3) {
    CHECK(std::fabs(x - std_normal_quantile(std_normal_cdf(x))) <= 1e-8);
  }
}

TEST_CASE("normal quantile rejects the closed endpoints") {
  CHECK_THROWS_AS(std_normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(std_normal_quantile(1.0), std::domain_error);
  CHECK_THROWS_AS(std_normal_quantile(-0.1), std::domain_error);
  CHECK_THROWS_AS(std_normal_quantile(1.1), std::domain_error);
  CHECK_THROWS_AS(std_normal_quantile(std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
}

TEST_CASE("softplus endpoints and tails") {
  CHECK(softplus(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(std::fabs(softplus(100.0) - 100.0) < 1e-10);
  // Extended-precision oracle: log1p(exp(-20)).
  const double expect = static_cast<double>(std::log1p(std::exp(-20.0L)));
  CHECK(std::fabs(softplus(-20.0) - expect) < 1e-22);
  CHECK(std::fabs(softplus(-20.0) - 2.0612e-9) < 1e-13);
  for (const double x : {31.0, 50.0, 300.0, 700.0}) {
    CHECK(std::fabs(softplus(x) - x) <= 1e-12 * x);
  }
}

TEST_CASE("softplus positivity and monotonicity") {
  double prev = 0.0;
  bool first = true;
  for (double x = -40.0; x <= 40.0; x += 0.05) {
    const double v = softplus(x);
    CHECK(v > 0.0);
    if (!first) CHECK(v > prev);
    prev = v;
    first = false;
  }
  CHECK_THROWS_AS(softplus(std::numeric_limits<double>::infinity()), std::domain_error);
}
