#include "aroc/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aroc/kernels.hpp"

namespace aroc {

namespace {

bool ascending(const std::vector<double>& g) {
  for (std::size_t i = 1; i < g.size(); ++i)
    if (!(g[i] > g[i - 1])) return false;
  return true;
}

double sample_sd(const std::vector<std::pair<double, double>>& pts, bool first) {
  double mean = 0.0;
  for (const auto& p : pts) mean += first ? p.first : p.second;
  mean /= static_cast<double>(pts.size());
  double ss = 0.0;
  for (const auto& p : pts) {
    const double d = (first ? p.first : p.second) - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(pts.size() - 1));
}

}  // namespace

double DensityGrid::trapezoid_mass() const {
  const std::size_t nx = x_grid.size();
  const std::size_t ny = y_grid.size();
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    const double dx = x_grid[i + 1] - x_grid[i];
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      const double dy = y_grid[j + 1] - y_grid[j];
      const double cell =
          value(i, j) + value(i, j + 1) + value(i + 1, j) + value(i + 1, j + 1);
      mass += 0.25 * cell * dx * dy;
    }
  }
  return mass;
}

void DensityGrid::validate() const {
  if (density.size() != x_grid.size() * y_grid.size())
    throw std::logic_error("DensityGrid: density size does not match the grid");
  for (double v : density)
    if (!(v >= 0.0)) throw std::logic_error("DensityGrid: negative density value");
  const double mass = trapezoid_mass();
  if (!(mass > 0.0 && mass <= 1.05))
    throw std::logic_error("DensityGrid: trapezoid mass outside (0, 1.05]");
}

Bandwidths silverman_bandwidths(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2)
    throw std::invalid_argument("silverman_bandwidths: need at least two points");
  const double n = static_cast<double>(points.size());
  const double factor = std::pow(n, -1.0 / 6.0);
  Bandwidths bw{sample_sd(points, true) * factor, sample_sd(points, false) * factor};
  if (!(bw.x > 0.0) || !(bw.y > 0.0))
    throw std::invalid_argument("silverman_bandwidths: degenerate axis (zero spread)");
  return bw;
}

DensityGrid bivariate_kde(const std::vector<std::pair<double, double>>& points, Bandwidths bw,
                          std::vector<double> x_grid, std::vector<double> y_grid) {
  if (points.size() < 2) throw std::invalid_argument("bivariate_kde: need at least two points");
  if (!(bw.x > 0.0) || !(bw.y > 0.0))
    throw std::invalid_argument("bivariate_kde: bandwidths must be positive");
  if (x_grid.size() < 2 || y_grid.size() < 2 || !ascending(x_grid) || !ascending(y_grid))
    throw std::invalid_argument("bivariate_kde: grids must be ascending with >= 2 nodes");
  const bool all_equal = std::all_of(points.begin(), points.end(), [&](const auto& p) {
    return p.first == points.front().first && p.second == points.front().second;
  });
  if (all_equal) throw std::invalid_argument("bivariate_kde: all points identical");

  const std::size_t nx = x_grid.size();
  const std::size_t ny = y_grid.size();
  DensityGrid grid{std::move(x_grid), std::move(y_grid), std::vector<double>(nx * ny, 0.0)};

  // Separable kernel: per point, evaluate the two 1-d kernel vectors and
  // accumulate their outer product into the grid.
  std::vector<double> kx(nx), ky(ny);
  const double inv_hx = 1.0 / bw.x;
  const double inv_hy = 1.0 / bw.y;
  const double norm = 1.0 / (2.0 * std::numbers::pi * bw.x * bw.y *
                             static_cast<double>(points.size()));
  for (const auto& p : points) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double u = (grid.x_grid[i] - p.first) * inv_hx;
      kx[i] = std::exp(-0.5 * u * u);
    }
    for (std::size_t j = 0; j < ny; ++j) {
      const double v = (grid.y_grid[j] - p.second) * inv_hy;
      ky[j] = std::exp(-0.5 * v * v);
    }
    for (std::size_t i = 0; i < nx; ++i)
      kernels::axpy(kx[i], ky.data(), grid.density.data() + i * ny, ny);
  }
  for (double& v : grid.density) v *= norm;
  return grid;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least two nodes");
  std::vector<double> g(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
  g.back() = hi;
  return g;
}

}  // namespace aroc
