#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aroc/dataset.hpp"
#include "aroc/forest.hpp"
#include "aroc/nn.hpp"
#include "aroc/roc.hpp"

namespace aroc {

enum class RegressorKind { fnn, forest };

std::string_view kind_name(RegressorKind kind) noexcept;
RegressorKind parse_kind(const std::string& name);  // throws on unknown name

/// Per-column standardization fitted on training covariates and applied
/// transparently at prediction time.
struct StandardScaler {
  std::vector<double> mean;
  std::vector<double> sd;

  void fit(const Matrix& X);
  void transform_row(std::span<const double> x, std::span<double> out) const;
  Matrix transform(const Matrix& X) const;
};

struct FitConfig {
  MLPConfig mlp;
  ForestConfig forest;
  std::size_t min_group_size = 50;
  double variance_floor = 1e-8;
  double validation_fraction = 0.1;
};

/// Conditional mean and variance models for one status group. The variance
/// route is always positive: a softplus output head for the network, a
/// clamp at the floor for the forest.
struct GroupModel {
  RegressorKind kind = RegressorKind::fnn;
  int label = 0;
  StandardScaler scaler;
  double variance_floor = 1e-8;

  std::optional<MLPNetwork> mean_net;
  std::optional<MLPNetwork> variance_net;
  TrainReport mean_report;
  TrainReport variance_report;

  std::optional<Forest> mean_forest;
  std::optional<Forest> variance_forest;

  double predict_mean(std::span<const double> x) const;
  double predict_variance(std::span<const double> x) const;  // >= variance_floor
  double predict_std(std::span<const double> x) const;
};

/// Two-stage fit on a single-group dataset: conditional mean by squared
/// error, then conditional variance by regressing in-sample squared
/// residuals of the final mean model.
GroupModel fit_group_model(const Dataset& group_data, RegressorKind kind, const FitConfig& config);

struct AROCModel {
  RegressorKind kind = RegressorKind::fnn;
  std::vector<std::string> schema;
  GroupModel group0;
  GroupModel group1;
  FitConfig config;
};

/// Partition by status, preserving row order within each class; both classes
/// must be present.
std::pair<Dataset, Dataset> split_by_status(const Dataset& data);

AROCModel fit_aroc_model(const Dataset& data, RegressorKind kind, const FitConfig& config);

std::pair<double, double> predict_mean_std(const AROCModel& model, int group,
                                           std::span<const double> x);

/// Location contrast a(x) = (mu1 - mu0)/sigma1 and scale ratio
/// b(x) = sigma0/sigma1 at the covariate point.
LocationScaleParams location_scale_at(const AROCModel& model, std::span<const double> x);

ROCCurve evaluate_aroc(const AROCModel& model, std::span<const double> x,
                       std::span<const double> p_grid);

/// Closed-form AUC per grid row.
std::vector<double> evaluate_auc_surface(const AROCModel& model, const Matrix& x_grid);

/// Stratified holdout: the fraction is carved per class from a seeded
/// shuffle, so both splits keep both classes.
std::pair<Dataset, Dataset> holdout_split(const Dataset& data, double fraction,
                                          std::uint64_t seed);

struct CVReport {
  std::vector<double> mean_validation_mse;  // one per candidate
  std::size_t chosen = 0;
  std::uint64_t fold_seed = 0;
  std::vector<std::size_t> fold_assignment;  // fold index per row
};

/// k-fold cross-validation of the Stage-1 mean fit over a candidate grid on
/// single-group data. Fold assignment is fixed across candidates; the winner
/// minimizes the mean fold-validation MSE with ties broken by grid order.
CVReport cross_validate(const Dataset& group_train, const std::vector<MLPConfig>& grid,
                        std::size_t k, std::uint64_t fold_seed);

}  // namespace aroc
