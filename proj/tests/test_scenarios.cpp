#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "aroc/scenarios.hpp"
#include "oracles.hpp"

using namespace aroc;
using scenarios::generate;
using scenarios::sample_conditional_y;
using scenarios::spec;
using scenarios::true_moments;

TEST_CASE("scenario specs expose the covariate layout") {
  CHECK(spec(1).dim == 1);
  CHECK(spec(5).column_names == std::vector<std::string>{"x1", "x2"});
  CHECK(spec(6).column_names == std::vector<std::string>{"x1", "x3"});
  CHECK(spec(7).column_names == std::vector<std::string>{"x4"});
  CHECK(spec(8).dim == 5);
  CHECK(spec(9).column_names == std::vector<std::string>{"x5", "x6", "x7", "x8"});
  CHECK(spec(1).informative.empty());
  CHECK_THROWS(spec(0));
  CHECK_THROWS(spec(10));
}

TEST_CASE("scenario 1 marginals match the baseline law") {
  RngStream rng(10, 0);
  const Dataset data = generate(1, 0, 100'000, rng);
  const auto ms = oracles::mean_sd(data.y);
  const double n = 100'000.0;
  CHECK(std::fabs(ms.mean - 0.5) < 4.0 * 0.5 / std::sqrt(n));
  CHECK(std::fabs(ms.sd - 0.5) < 4.0 * oracles::sd_standard_error(data.y));

  RngStream rng1(10, 1);
  const Dataset diseased = generate(1, 1, 100'000, rng1);
  const auto ms1 = oracles::mean_sd(diseased.y);
  CHECK(std::fabs(ms1.mean - 1.0) < 4.0 / std::sqrt(n));
  CHECK(std::fabs(ms1.sd - 1.0) < 4.0 * oracles::sd_standard_error(diseased.y));
  CHECK(diseased.d.front() == 1);
}

TEST_CASE("scenario 2 conditional slice at x1 near zero") {
  RngStream rng(11, 0);
  const Dataset data = generate(2, 0, 200'000, rng);
  std::vector<double> slice;
  for (std::size_t i = 0; i < data.n(); ++i)
    if (std::fabs(data.X.at(i, 0)) < 0.01) slice.push_back(data.y[i]);
  REQUIRE(slice.size() > 500);
  const auto ms = oracles::mean_sd(slice);
  // Frozen from the printed mean at x1 = 0: 0.5 - 10/23 = 0.0652174; the
  // band half-width 0.01 perturbs the mean by at most 2*0.01/23.
  const double tol = 4.0 * ms.sd / std::sqrt(static_cast<double>(slice.size())) + 0.001;
  CHECK(std::fabs(ms.mean - 0.0652174) < tol);
}

TEST_CASE("scenario true moments at pinned points") {
  const std::vector<double> x0{0.0};
  CHECK(true_moments(1, 0, x0).first == 0.5);
  CHECK(true_moments(1, 0, x0).second == 0.5);
  CHECK(true_moments(1, 1, x0).first == 1.0);
  CHECK(true_moments(1, 1, x0).second == 1.0);

  // Scenario 3 diseased at x1 = 0: 0.75 - 10/23.
  const auto m3 = true_moments(3, 1, x0);
  CHECK(m3.first == doctest::Approx(0.31522).epsilon(1e-4));
  CHECK(m3.second == 1.0);

  // Scenario 7 diseased carries sd 0.5.
  const auto m7 = true_moments(7, 1, std::vector<double>{0.25});
  CHECK(m7.first ==
        doctest::Approx(std::sin(2.0 * std::numbers::pi * 0.25) + 1.5).epsilon(1e-12));
  CHECK(m7.second == 0.5);
}

TEST_CASE("every scenario's conditional law matches its moments") {
  RngStream slice_rng(2026, 0);
  for (int id = 1; id <= 9; ++id) {
    for (const int group : {0, 1}) {
      for (int rep = 0; rep < 2; ++rep) {
        std::vector<double> x(spec(id).dim);
        for (double& v : x) v = 1.9 * slice_rng.next_double() - 0.95;
        const auto [mu, sigma] = true_moments(id, group, x);

        RngStream rng(derive_stream_id({static_cast<std::uint64_t>(id),
                                        static_cast<std::uint64_t>(group),
                                        static_cast<std::uint64_t>(rep)}),
                      7);
        const int n = 60'000;
        std::vector<double> draws(n);
        for (double& v : draws) v = sample_conditional_y(id, group, x, rng);
        const auto ms = oracles::mean_sd(draws);
        CAPTURE(id);
        CAPTURE(group);
        CHECK(std::fabs(ms.mean - mu) < 4.0 * ms.sd / std::sqrt(static_cast<double>(n)));
        CHECK(std::fabs(ms.sd - sigma) < 4.0 * oracles::sd_standard_error(draws));
      }
    }
  }
}

TEST_CASE("scenario 9 diseased mean recovers the printed basis coefficients") {
  RngStream rng(12, 0);
  const Dataset data = generate(9, 1, 100'000, rng);
  std::vector<std::vector<double>> design(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) {
    const double x5 = data.X.at(i, 0);
    const double x6 = data.X.at(i, 1);
    const double x7 = data.X.at(i, 2);
    const double x8 = data.X.at(i, 3);
    design[i] = {1.0, std::exp(2.0 * x5), x6 * x6, x7 * x7, x8};
  }
  const auto beta = oracles::least_squares(design, data.y);
  const std::vector<double> expect{0.5, 0.5, -1.0, 0.5, 1.0};
  for (std::size_t j = 0; j < expect.size(); ++j)
    CHECK(std::fabs(beta[j] - expect[j]) < 0.05);
}

TEST_CASE("scenario 8 noise covariates are uncorrelated with the response") {
  RngStream rng(13, 0);
  const Dataset data = generate(8, 0, 100'000, rng);
  REQUIRE(data.dim() == 5);
  const auto my = oracles::mean_sd(data.y);
  for (std::size_t j = 0; j < 5; ++j) {
    std::vector<double> col(data.n());
    for (std::size_t i = 0; i < data.n(); ++i) col[i] = data.X.at(i, j);
    const auto mx = oracles::mean_sd(col);
    double cov = 0.0;
    for (std::size_t i = 0; i < data.n(); ++i)
      cov += (col[i] - mx.mean) * (data.y[i] - my.mean);
    cov /= static_cast<double>(data.n() - 1);
    CHECK(std::fabs(cov / (mx.sd * my.sd)) < 0.03);
  }
}

TEST_CASE("scenario 7 healthy mixture moments at a fixed slice") {
  // x4 = 0.5: weight w = exp(-1).
  const std::vector<double> x{0.5};
  const auto [mu, sigma] = true_moments(7, 0, x);
  const double w = std::exp(-1.0);
  const double delta = 2.0 / std::sqrt(5.0);
  const double mu_sn = 0.25 + 0.25 * delta * std::sqrt(2.0 / std::numbers::pi);
  const double var_sn = 0.0625 * (1.0 - 2.0 * delta * delta / std::numbers::pi);
  const double mu_t = std::sin(std::numbers::pi * 0.5);
  const double var_t = 0.0625 * 5.0 / 3.0;
  const double mean = w * mu_sn + (1.0 - w) * mu_t;
  const double second = w * (var_sn + mu_sn * mu_sn) + (1.0 - w) * (var_t + mu_t * mu_t);
  CHECK(mu == doctest::Approx(mean).epsilon(1e-14));
  CHECK(sigma == doctest::Approx(std::sqrt(second - mean * mean)).epsilon(1e-14));

  RngStream rng(14, 0);
  const int n = 400'000;
  std::vector<double> draws(n);
  for (double& v : draws) v = sample_conditional_y(7, 0, x, rng);
  const auto ms = oracles::mean_sd(draws);
  CHECK(std::fabs(ms.mean - mu) < 4.0 * ms.sd / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(ms.sd - sigma) < 4.0 * oracles::sd_standard_error(draws));

  // The weight saturates at 1 for negative x4: pure skew-normal branch.
  const auto [mu_neg, sigma_neg] = true_moments(7, 0, std::vector<double>{-0.5});
  CHECK(mu_neg == doctest::Approx(0.25 + 0.25 * delta * std::sqrt(2.0 / std::numbers::pi))
                      .epsilon(1e-14));
  CHECK(sigma_neg == doctest::Approx(std::sqrt(var_sn)).epsilon(1e-14));
}

TEST_CASE("generation is deterministic and validates input") {
  RngStream a(15, 3);
  RngStream b(15, 3);
  const Dataset d1 = generate(5, 0, 500, a);
  const Dataset d2 = generate(5, 0, 500, b);
  CHECK(d1.X.data == d2.X.data);
  CHECK(d1.y == d2.y);
  d1.validate();

  RngStream rng(1, 1);
  CHECK_THROWS(generate(0, 0, 10, rng));
  CHECK_THROWS(generate(3, 2, 10, rng));
  CHECK_THROWS(generate(3, 0, 0, rng));
  CHECK_THROWS(true_moments(2, 0, std::vector<double>{0.1, 0.2}));
}
