#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace aroc {

/// Density sampled on a rectangular grid; density is row-major with the x
/// index major, i.e. value(ix, iy) = density[ix * y_grid.size() + iy].
struct DensityGrid {
  std::vector<double> x_grid;
  std::vector<double> y_grid;
  std::vector<double> density;

  double value(std::size_t ix, std::size_t iy) const { return density[ix * y_grid.size() + iy]; }

  /// Trapezoidal double integral of the density over the grid.
  double trapezoid_mass() const;

  /// Checks non-negativity and that the mass does not exceed 1.05.
  void validate() const;
};

struct Bandwidths {
  double x = 0.0;
  double y = 0.0;
};

/// Per-axis normal-reference (Silverman) bandwidths for a product Gaussian
/// kernel in two dimensions: h_j = sd_j * n^(-1/6). Throws if an axis is
/// degenerate.
Bandwidths silverman_bandwidths(const std::vector<std::pair<double, double>>& points);

/// Product-Gaussian-kernel density estimate evaluated on the given grid.
/// Requires at least two non-identical points, positive bandwidths, and
/// ascending grids.
DensityGrid bivariate_kde(const std::vector<std::pair<double, double>>& points, Bandwidths bw,
                          std::vector<double> x_grid, std::vector<double> y_grid);

/// n evenly spaced values over [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace aroc
