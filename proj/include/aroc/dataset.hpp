#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace aroc {

/// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double* row(std::size_t i) { return data.data() + i * cols; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }
  std::span<const double> row_span(std::size_t i) const { return {row(i), cols}; }
  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Covariates, biomarker, and binary status for one cohort.
struct Dataset {
  Matrix X;
  std::vector<double> y;
  std::vector<int> d;
  std::vector<std::string> column_names;  // one per covariate column

  std::size_t n() const { return y.size(); }
  std::size_t dim() const { return X.cols; }

  /// Checks shape consistency, finiteness, and {0,1} status values.
  void validate() const;

  /// True if both status classes are present.
  bool has_both_classes() const;

  Dataset select_rows(const std::vector<std::size_t>& rows) const;
};

}  // namespace aroc
