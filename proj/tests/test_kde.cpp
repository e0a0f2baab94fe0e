#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aroc/kde.hpp"
#include "aroc/rng.hpp"

using namespace aroc;

namespace {

std::vector<std::pair<double, double>> gaussian_cloud(std::size_t n, double cx, double cy,
                                                      double sd, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) {
    p.first = cx + sd * rng.next_normal();
    p.second = cy + sd * rng.next_normal();
  }
  return pts;
}

std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

}  // namespace

TEST_CASE("kde peaks at the grid node nearest a tight cluster") {
  const auto pts = gaussian_cloud(200, 0.0, 0.0, 0.05, 2);
  const auto grid =
      bivariate_kde(pts, {1.0, 1.0}, linspace(-5.0, 5.0, 21), linspace(-5.0, 5.0, 21));
  const std::size_t peak = argmax(grid.density);
  CHECK(grid.x_grid[peak / grid.y_grid.size()] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(grid.y_grid[peak % grid.y_grid.size()] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("kde of a standard bivariate normal tracks the analytic density") {
  const auto pts = gaussian_cloud(10'000, 0.0, 0.0, 1.0, 31);
  const Bandwidths bw = silverman_bandwidths(pts);
  CHECK(bw.x == doctest::Approx(std::pow(10'000.0, -1.0 / 6.0)).epsilon(0.05));

  const auto xs = linspace(-3.0, 3.0, 61);
  const auto grid = bivariate_kde(pts, bw, xs, xs);
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double r2 = xs[i] * xs[i] + xs[j] * xs[j];
      const double truth = std::exp(-0.5 * r2) / (2.0 * std::numbers::pi);
      worst = std::max(worst, std::fabs(grid.value(i, j) - truth));
    }
  CHECK(worst < 0.02);
}

TEST_CASE("kde integrates to about one when the grid covers the data") {
  const auto pts = gaussian_cloud(2'000, 1.0, -2.0, 1.0, 5);
  const Bandwidths bw = silverman_bandwidths(pts);
  double xmin = pts[0].first, xmax = xmin, ymin = pts[0].second, ymax = ymin;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.first);
    xmax = std::max(xmax, p.first);
    ymin = std::min(ymin, p.second);
    ymax = std::max(ymax, p.second);
  }
  const auto grid = bivariate_kde(pts, bw, linspace(xmin - 4 * bw.x, xmax + 4 * bw.x, 101),
                                  linspace(ymin - 4 * bw.y, ymax + 4 * bw.y, 101));
  grid.validate();
  CHECK(grid.trapezoid_mass() == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("translating the points translates the argmax node") {
  const auto pts = gaussian_cloud(500, 0.0, 0.0, 0.4, 17);
  auto shifted = pts;
  for (auto& p : shifted) {
    p.first += 2.0;
    p.second += -1.0;
  }
  const auto g1 = bivariate_kde(pts, {0.3, 0.3}, linspace(-3, 3, 25), linspace(-3, 3, 25));
  const auto g2 =
      bivariate_kde(shifted, {0.3, 0.3}, linspace(-1, 5, 25), linspace(-4, 2, 25));
  const std::size_t p1 = argmax(g1.density);
  const std::size_t p2 = argmax(g2.density);
  CHECK(g2.x_grid[p2 / 25] == doctest::Approx(g1.x_grid[p1 / 25] + 2.0).epsilon(1e-12));
  CHECK(g2.y_grid[p2 % 25] == doctest::Approx(g1.y_grid[p1 % 25] - 1.0).epsilon(1e-12));
}

TEST_CASE("kde rejects degenerate input") {
  CHECK_THROWS(bivariate_kde({}, {1, 1}, linspace(0, 1, 5), linspace(0, 1, 5)));
  CHECK_THROWS(bivariate_kde({{1.0, 2.0}}, {1, 1}, linspace(0, 1, 5), linspace(0, 1, 5)));
  const std::vector<std::pair<double, double>> same(10, {0.5, 0.5});
  CHECK_THROWS(bivariate_kde(same, {1, 1}, linspace(0, 1, 5), linspace(0, 1, 5)));
  CHECK_THROWS(silverman_bandwidths(same));
  const auto pts = gaussian_cloud(20, 0, 0, 1, 9);
  CHECK_THROWS(bivariate_kde(pts, {0.0, 1.0}, linspace(0, 1, 5), linspace(0, 1, 5)));
}
