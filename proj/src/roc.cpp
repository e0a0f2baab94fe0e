#include "aroc/roc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aroc/special.hpp"

namespace aroc {

namespace {

void require_params(const LocationScaleParams& params) {
  if (!std::isfinite(params.a) || !std::isfinite(params.b) || !(params.b > 0.0))
    throw std::domain_error("LocationScaleParams: a must be finite and b positive");
}

}  // namespace

PooledROC empirical_pooled_roc(std::span<const double> y0, std::span<const double> y1) {
  if (y0.empty() || y1.empty())
    throw std::invalid_argument("empirical_pooled_roc: both groups must be non-empty");

  std::vector<double> pooled(y0.begin(), y0.end());
  pooled.insert(pooled.end(), y1.begin(), y1.end());
  std::sort(pooled.begin(), pooled.end());
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

  std::vector<double> s0(y0.begin(), y0.end());
  std::vector<double> s1(y1.begin(), y1.end());
  std::sort(s0.begin(), s0.end());
  std::sort(s1.begin(), s1.end());

  auto exceed_fraction = [](const std::vector<double>& sorted, double c) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), c);
    return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
  };

  // Thresholds from the largest pooled value down to below the smallest,
  // so the curve runs from (0,0) to (1,1) with fpr ascending.
  PooledROC out;
  out.curve.fpr.reserve(pooled.size() + 1);
  out.curve.tpr.reserve(pooled.size() + 1);
  for (auto it = pooled.rbegin(); it != pooled.rend(); ++it) {
    out.curve.fpr.push_back(exceed_fraction(s0, *it));
    out.curve.tpr.push_back(exceed_fraction(s1, *it));
  }
  out.curve.fpr.push_back(1.0);
  out.curve.tpr.push_back(1.0);

  double auc = 0.0;
  for (std::size_t i = 1; i < out.curve.fpr.size(); ++i) {
    const double width = out.curve.fpr[i] - out.curve.fpr[i - 1];
    auc += 0.5 * width * (out.curve.tpr[i] + out.curve.tpr[i - 1]);
  }
  out.auc = auc;
  return out;
}

double aroc_value(const LocationScaleParams& params, double p) {
  require_params(params);
  if (!std::isfinite(p) || p < 0.0 || p > 1.0)
    throw std::domain_error("aroc_value: p must lie in [0, 1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  return 1.0 - std_normal_cdf(params.b * std_normal_quantile(1.0 - p) - params.a);
}

double auc_closed_form(const LocationScaleParams& params) {
  require_params(params);
  return std_normal_cdf(params.a / std::sqrt(1.0 + params.b * params.b));
}

double auc_numeric(const LocationScaleParams& params, std::size_t grid_size) {
  require_params(params);
  if (grid_size < 101) throw std::invalid_argument("auc_numeric: grid size must be >= 101");
  // integral_0^1 roc(p) dp with p = 1 - Phi(z):
  //   integral_R (1 - Phi(b z - a)) phi(z) dz,
  // evaluated by the composite trapezoid rule on a uniform z grid. The
  // integrand decays like phi beyond |z| ~ 8.5, so the truncated tails are
  // below 1e-16.
  constexpr double z_max = 8.5;
  const double h = 2.0 * z_max / static_cast<double>(grid_size - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double z = -z_max + h * static_cast<double>(i);
    const double value = (1.0 - std_normal_cdf(params.b * z - params.a)) * std_normal_pdf(z);
    sum += (i == 0 || i + 1 == grid_size) ? 0.5 * value : value;
  }
  return sum * h;
}

ROCCurve sample_aroc_curve(const LocationScaleParams& params, std::size_t grid_points) {
  require_params(params);
  if (grid_points < 2)
    throw std::invalid_argument("sample_aroc_curve: need at least two grid points");
  ROCCurve curve;
  curve.fpr.resize(grid_points);
  curve.tpr.resize(grid_points);
  const double step = 1.0 / static_cast<double>(grid_points - 1);
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double p = (i + 1 == grid_points) ? 1.0 : step * static_cast<double>(i);
    curve.fpr[i] = p;
    curve.tpr[i] = aroc_value(params, p);
  }
  return curve;
}

}  // namespace aroc
