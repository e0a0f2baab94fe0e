#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "aroc/samplers.hpp"
#include "aroc/special.hpp"
#include "oracles.hpp"

using namespace aroc;

namespace {

constexpr int kN = 100'000;

std::vector<double> draw(int n, double (*sampler)(RngStream&), std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<double> v(n);
  for (double& x : v) x = sampler(rng);
  return v;
}

}  // namespace

TEST_CASE("skew normal with zero shape reduces to the normal") {
  const auto sample = draw(
      kN, [](RngStream& r) { return sample_skew_normal(0.3, 0.7, 0.0, r); }, 101);
  const auto ms = oracles::mean_sd(sample);
  CHECK(std::fabs(ms.mean - 0.3) < 4.0 * 0.7 / std::sqrt(static_cast<double>(kN)));
  CHECK(std::fabs(ms.sd - 0.7) < 4.0 * oracles::sd_standard_error(sample));
}

TEST_CASE("skew normal mean matches the delta-moment formula") {
  // SN(0, 0.25, 2): mean = 0.25 * (2/sqrt(5)) * sqrt(2/pi) ~= 0.178412.
  const double delta = 2.0 / std::sqrt(5.0);
  const double expect = 0.25 * delta * std::sqrt(2.0 / std::numbers::pi);
  CHECK(expect == doctest::Approx(0.178412).epsilon(1e-5));
  const auto sample = draw(
      kN, [](RngStream& r) { return sample_skew_normal(0.0, 0.25, 2.0, r); }, 103);
  const auto ms = oracles::mean_sd(sample);
  CHECK(std::fabs(ms.mean - expect) < 4.0 * ms.sd / std::sqrt(static_cast<double>(kN)));
}

TEST_CASE("skew normal is exactly location equivariant") {
  RngStream a(7, 1);
  RngStream b(7, 1);
  for (int i = 0; i < 1000; ++i) {
    const double base = sample_skew_normal(0.0, 0.25, 2.0, a);
    const double shifted = sample_skew_normal(1.0, 0.25, 2.0, b);
    REQUIRE(shifted == 1.0 + base);
  }
}

TEST_CASE("student t at huge df is indistinguishable from the normal") {
  RngStream rng(48, 0);
  std::vector<double> sample(20'000);
  for (double& x : sample) x = sample_student_t(0.0, 1.0, 1e6, rng);
  const double ks = oracles::ks_statistic(sample, [](double x) { return std_normal_cdf(x); });
  CHECK(ks < 0.01);
}

TEST_CASE("student t variance matches df/(df-2)") {
  // t(0, 0.25, 5): variance = 0.25^2 * 5/3 ~= 0.104167.
  const double expect_var = 0.0625 * 5.0 / 3.0;
  const auto sample = draw(
      kN, [](RngStream& r) { return sample_student_t(0.0, 0.25, 5.0, r); }, 105);
  const auto ms = oracles::mean_sd(sample);
  const double sd_se = oracles::sd_standard_error(sample);
  CHECK(std::fabs(ms.sd - std::sqrt(expect_var)) < 4.0 * sd_se);
}

TEST_CASE("student t location shift is exact") {
  RngStream a(7, 2);
  RngStream b(7, 2);
  for (int i = 0; i < 1000; ++i) {
    const double base = sample_student_t(0.0, 0.25, 5.0, a);
    const double shifted = sample_student_t(3.0, 0.25, 5.0, b);
    REQUIRE(shifted == 3.0 + base);
  }
}

TEST_CASE("gamma and chi-square first moments") {
  RngStream rng(11, 4);
  double acc = 0.0;
  for (int i = 0; i < kN; ++i) acc += sample_gamma(2.5, 2.0, rng);
  CHECK(std::fabs(acc / kN - 5.0) < 4.0 * 2.0 * std::sqrt(2.5 / kN));

  double acc2 = 0.0;
  for (int i = 0; i < kN; ++i) acc2 += sample_chi_square(5.0, rng);
  CHECK(std::fabs(acc2 / kN - 5.0) < 4.0 * std::sqrt(10.0 / kN));

  // Shape below one goes through the boosting branch.
  double acc3 = 0.0;
  for (int i = 0; i < kN; ++i) acc3 += sample_gamma(0.4, 1.0, rng);
  CHECK(std::fabs(acc3 / kN - 0.4) < 4.0 * std::sqrt(0.4 / kN));
}

TEST_CASE("samplers validate their parameters") {
  RngStream rng(1, 1);
  CHECK_THROWS_AS(sample_normal(0.0, 0.0, rng), std::domain_error);
  CHECK_THROWS_AS(sample_skew_normal(0.0, -1.0, 2.0, rng), std::domain_error);
  CHECK_THROWS_AS(sample_student_t(0.0, 1.0, 0.0, rng), std::domain_error);
  CHECK_THROWS_AS(sample_gamma(0.0, 1.0, rng), std::domain_error);
}
