#pragma once

#include <span>
#include <vector>

namespace aroc {

/// Sampled ROC curve; tpr[i] corresponds to fpr[i], both in [0, 1] with fpr
/// ascending.
struct ROCCurve {
  std::vector<double> fpr;
  std::vector<double> tpr;
};

struct PooledROC {
  ROCCurve curve;
  double auc = 0.0;
};

/// Location contrast a and scale ratio b of a Gaussian location-scale pair
/// of marker distributions.
struct LocationScaleParams {
  double a = 0.0;
  double b = 1.0;
};

/// Empirical pooled ROC with thresholds at every unique pooled marker value.
/// The trapezoid AUC of the returned curve coincides with the tie-adjusted
/// Mann-Whitney statistic.
PooledROC empirical_pooled_roc(std::span<const double> y0, std::span<const double> y1);

/// Model-based ROC value at false positive rate p. The endpoints are pinned
/// to their limits: aroc_value(., 0) = 0 and aroc_value(., 1) = 1.
double aroc_value(const LocationScaleParams& params, double p);

/// AUC of the location-scale ROC in closed form.
double auc_closed_form(const LocationScaleParams& params);

/// AUC by composite trapezoid quadrature with grid_size nodes. The integral
/// over p is taken through the exact substitution p = 1 - Phi(z), which maps
/// the open unit interval onto a uniform z grid and keeps the rule accurate
/// even when the curve has steep corner layers (b far from 1); agreement
/// with the closed form is ~1e-9 at grid 10001 over a in [-3,3], b in
/// [0.25,4]. Requires grid_size >= 101.
double auc_numeric(const LocationScaleParams& params, std::size_t grid_size);

/// Curve sampled on a uniform p grid of grid_points nodes including both
/// pinned endpoints (0,0) and (1,1).
ROCCurve sample_aroc_curve(const LocationScaleParams& params, std::size_t grid_points = 101);

}  // namespace aroc
