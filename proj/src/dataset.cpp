#include "aroc/dataset.hpp"

#include <cmath>
#include <stdexcept>

namespace aroc {

void Dataset::validate() const {
  if (X.rows != y.size() || X.rows != d.size())
    throw std::invalid_argument("Dataset: inconsistent row counts");
  if (column_names.size() != X.cols)
    throw std::invalid_argument("Dataset: column name count does not match X");
  for (double v : X.data)
    if (!std::isfinite(v)) throw std::invalid_argument("Dataset: non-finite covariate entry");
  for (double v : y)
    if (!std::isfinite(v)) throw std::invalid_argument("Dataset: non-finite biomarker entry");
  for (int v : d)
    if (v != 0 && v != 1) throw std::invalid_argument("Dataset: status values must be 0 or 1");
}

bool Dataset::has_both_classes() const {
  bool saw0 = false;
  bool saw1 = false;
  for (int v : d) {
    saw0 |= v == 0;
    saw1 |= v == 1;
  }
  return saw0 && saw1;
}

Dataset Dataset::select_rows(const std::vector<std::size_t>& rows) const {
  Dataset out;
  out.column_names = column_names;
  out.X = Matrix(rows.size(), X.cols);
  out.y.resize(rows.size());
  out.d.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t r = rows[i];
    for (std::size_t j = 0; j < X.cols; ++j) out.X.at(i, j) = X.at(r, j);
    out.y[i] = y[r];
    out.d[i] = d[r];
  }
  return out;
}

}  // namespace aroc
