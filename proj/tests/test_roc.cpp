#include <doctest.h>

#include <cmath>
#include <vector>

#include "aroc/roc.hpp"
#include "aroc/rng.hpp"
#include "aroc/special.hpp"
#include "oracles.hpp"

using namespace aroc;

TEST_CASE("pooled roc on tiny samples") {
  SUBCASE("perfect separation") {
    const std::vector<double> y0{1, 2};
    const std::vector<double> y1{3, 4};
    CHECK(empirical_pooled_roc(y0, y1).auc == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("identical groups sit on the chance line") {
    const std::vector<double> y{1.5, 2.5, 2.5, 9.0};
    CHECK(empirical_pooled_roc(y, y).auc == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("interleaved values") {
    const std::vector<double> y0{1, 3};
    const std::vector<double> y1{2, 4};
    CHECK(empirical_pooled_roc(y0, y1).auc == doctest::Approx(0.75).epsilon(1e-15));
  }
  SUBCASE("empty group is an error") {
    const std::vector<double> y{1.0};
    CHECK_THROWS(empirical_pooled_roc({}, y));
    CHECK_THROWS(empirical_pooled_roc(y, {}));
  }
}

TEST_CASE("trapezoid auc equals the tie-adjusted Mann-Whitney statistic") {
  RngStream rng(321, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n0 = 2 + rng.next_below(40);
    const std::size_t n1 = 2 + rng.next_below(40);
    std::vector<double> y0(n0);
    std::vector<double> y1(n1);
    // Integer-valued draws force plenty of ties, both within and across groups.
    for (double& v : y0) v = static_cast<double>(rng.next_below(10));
    for (double& v : y1) v = static_cast<double>(rng.next_below(10)) + 1.0;
    const PooledROC roc = empirical_pooled_roc(y0, y1);
    const double mw = oracles::mann_whitney(y0, y1);
    CHECK(std::fabs(roc.auc - mw) <= 1e-12);

    for (std::size_t i = 0; i < roc.curve.fpr.size(); ++i) {
      CHECK(roc.curve.fpr[i] >= 0.0);
      CHECK(roc.curve.tpr[i] <= 1.0);
      if (i > 0) {
        CHECK(roc.curve.fpr[i] >= roc.curve.fpr[i - 1]);
        CHECK(roc.curve.tpr[i] >= roc.curve.tpr[i - 1]);
      }
    }
    CHECK(roc.curve.fpr.front() == 0.0);
    CHECK(roc.curve.tpr.front() == 0.0);
    CHECK(roc.curve.fpr.back() == 1.0);
    CHECK(roc.curve.tpr.back() == 1.0);
  }
}

TEST_CASE("aroc value: chance line, pinned endpoints, direct evaluation") {
  const LocationScaleParams chance{0.0, 1.0};
  for (int i = 1; i <= 999; ++i) {
    const double p = static_cast<double>(i) / 1000.0;
    CHECK(std::fabs(aroc_value(chance, p) - p) <= 1e-12);
  }
  CHECK(aroc_value(chance, 0.0) == 0.0);
  CHECK(aroc_value(chance, 1.0) == 1.0);

  // Independent route: series cdf with a bisected quantile.
  const LocationScaleParams params{0.5, 0.5};
  const double z = oracles::quantile_bisect([](double x) { return std_normal_cdf(x); }, 0.8);
  const double expect = 1.0 - oracles::normal_cdf_series(0.5 * z - 0.5);
  CHECK(std::fabs(aroc_value(params, 0.2) - expect) < 1e-9);

  const LocationScaleParams strong{40.0, 1.0};
  CHECK(aroc_value(strong, 0.37) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("aroc value is monotone in p and in a") {
  const LocationScaleParams params{0.7, 1.6};
  double prev = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double cur = aroc_value(params, i / 200.0 * 0.995);
    CHECK(cur >= prev);
    prev = cur;
  }
  double prev_a = 0.0;
  for (double a = -3.0; a <= 3.0; a += 0.05) {
    const double cur = aroc_value({a, 0.8}, 0.3);
    if (a > -3.0) CHECK(cur > prev_a);
    prev_a = cur;
  }
}

TEST_CASE("closed-form auc identities") {
  CHECK(auc_closed_form({0.0, 0.37}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(auc_closed_form({0.0, 4.2}) == doctest::Approx(0.5).epsilon(1e-15));

  // Phi(0.5 / sqrt(1.25)) via the series oracle, frozen to 0.67264.
  const double expect = oracles::normal_cdf_series(0.5 / std::sqrt(1.25));
  CHECK(expect == doctest::Approx(0.67264).epsilon(2e-5));
  CHECK(std::fabs(auc_closed_form({0.5, 0.5}) - expect) < 1e-12);

  CHECK(std::fabs(auc_closed_form({1.7, 1e6}) - 0.5) < 1e-5);

  for (double a = -3.0; a <= 3.0; a += 0.31)
    for (double b : {0.25, 0.7, 1.0, 2.0, 4.0})
      CHECK(std::fabs(auc_closed_form({-a, b}) - (1.0 - auc_closed_form({a, b}))) <= 1e-12);

  CHECK_THROWS_AS(auc_closed_form({0.0, -1.0}), std::domain_error);
}

TEST_CASE("numeric auc agrees with the closed form across the parameter box") {
  CHECK(std::fabs(auc_numeric({0.0, 1.0}, 10001) - 0.5) <= 1e-9);
  CHECK(std::fabs(auc_numeric({0.5, 0.5}, 10001) - auc_closed_form({0.5, 0.5})) <= 1e-6);
  CHECK(std::fabs(auc_numeric({2.0, 1.0}, 10001) -
                  oracles::normal_cdf_series(2.0 / std::sqrt(2.0))) <= 1e-5);

  for (const double a : {-3.0, -1.0, 0.0, 0.5, 1.0, 3.0})
    for (const double b : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const LocationScaleParams params{a, b};
      CHECK(std::fabs(auc_numeric(params, 10001) - auc_closed_form(params)) <= 1e-6);
    }
  CHECK_THROWS(auc_numeric({0.0, 1.0}, 100));
}

TEST_CASE("sampled curve carries pinned endpoints and monotone tpr") {
  const ROCCurve curve = sample_aroc_curve({1.2, 0.8}, 101);
  REQUIRE(curve.fpr.size() == 101);
  CHECK(curve.fpr.front() == 0.0);
  CHECK(curve.tpr.front() == 0.0);
  CHECK(curve.fpr.back() == 1.0);
  CHECK(curve.tpr.back() == 1.0);
  for (std::size_t i = 1; i < curve.tpr.size(); ++i) CHECK(curve.tpr[i] >= curve.tpr[i - 1]);
}
