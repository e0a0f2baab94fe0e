#include "aroc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aroc {

namespace {

constexpr std::uint64_t kMeanStageTag = 1;
constexpr std::uint64_t kVarianceStageTag = 2;
constexpr std::uint64_t kHoldoutTag = 0x401D;

}  // namespace

std::string_view kind_name(RegressorKind kind) noexcept {
  return kind == RegressorKind::fnn ? "fnn" : "forest";
}

RegressorKind parse_kind(const std::string& name) {
  if (name == "fnn") return RegressorKind::fnn;
  if (name == "forest") return RegressorKind::forest;
  throw std::invalid_argument("unknown regressor kind '" + name + "' (expected fnn or forest)");
}

void StandardScaler::fit(const Matrix& X) {
  if (X.rows == 0) throw std::invalid_argument("StandardScaler: empty matrix");
  mean.assign(X.cols, 0.0);
  sd.assign(X.cols, 0.0);
  for (std::size_t i = 0; i < X.rows; ++i)
    for (std::size_t j = 0; j < X.cols; ++j) mean[j] += X.at(i, j);
  for (double& m : mean) m /= static_cast<double>(X.rows);
  for (std::size_t i = 0; i < X.rows; ++i)
    for (std::size_t j = 0; j < X.cols; ++j) {
      const double c = X.at(i, j) - mean[j];
      sd[j] += c * c;
    }
  for (double& s : sd) {
    s = X.rows > 1 ? std::sqrt(s / static_cast<double>(X.rows - 1)) : 0.0;
    if (s < 1e-12) s = 1.0;  // constant column: pass through centered
  }
}

void StandardScaler::transform_row(std::span<const double> x, std::span<double> out) const {
  if (x.size() != mean.size() || out.size() != mean.size())
    throw std::invalid_argument("StandardScaler: dimension mismatch");
  for (std::size_t j = 0; j < mean.size(); ++j) out[j] = (x[j] - mean[j]) / sd[j];
}

Matrix StandardScaler::transform(const Matrix& X) const {
  Matrix out(X.rows, X.cols);
  for (std::size_t i = 0; i < X.rows; ++i)
    transform_row(X.row_span(i), {out.row(i), out.cols});
  return out;
}

double GroupModel::predict_mean(std::span<const double> x) const {
  std::vector<double> z(x.size());
  scaler.transform_row(x, z);
  if (kind == RegressorKind::fnn) return forward(*mean_net, z, ForwardMode::infer);
  return predict_forest_one(*mean_forest, z);
}

double GroupModel::predict_variance(std::span<const double> x) const {
  std::vector<double> z(x.size());
  scaler.transform_row(x, z);
  const double raw = kind == RegressorKind::fnn
                         ? forward(*variance_net, z, ForwardMode::infer)
                         : predict_forest_one(*variance_forest, z);
  return std::max(raw, variance_floor);
}

double GroupModel::predict_std(std::span<const double> x) const {
  return std::sqrt(predict_variance(x));
}

GroupModel fit_group_model(const Dataset& group_data, RegressorKind kind,
                           const FitConfig& config) {
  group_data.validate();
  if (group_data.n() < config.min_group_size)
    throw std::invalid_argument("fit_group_model: group smaller than the configured floor (" +
                                std::to_string(config.min_group_size) + ")");

  GroupModel model;
  model.kind = kind;
  model.label = group_data.d.empty() ? 0 : group_data.d.front();
  model.variance_floor = config.variance_floor;
  model.scaler.fit(group_data.X);
  const Matrix Xs = model.scaler.transform(group_data.X);

  // Stage 1: conditional mean by squared error.
  std::vector<double> mean_pred(group_data.n());
  if (kind == RegressorKind::fnn) {
    MLPConfig cfg = config.mlp;
    cfg.seed = derive_stream_id({config.mlp.seed, kMeanStageTag});
    MLPNetwork net = init_network(cfg, Xs.cols, OutputTransform::identity);
    model.mean_report = train(net, Xs, group_data.y, cfg, config.validation_fraction);
    model.mean_net = std::move(net);
    mean_pred = predict_batch(*model.mean_net, Xs);
  } else {
    ForestConfig cfg = config.forest;
    cfg.seed = derive_stream_id({config.forest.seed, kMeanStageTag});
    model.mean_forest = fit_forest(Xs, group_data.y, cfg);
    mean_pred = predict_forest(*model.mean_forest, Xs);
  }

  // Stage 2: regress in-sample squared residuals of the final Stage-1 model.
  std::vector<double> sq_residuals(group_data.n());
  for (std::size_t i = 0; i < group_data.n(); ++i) {
    const double r = group_data.y[i] - mean_pred[i];
    sq_residuals[i] = r * r;
  }
  if (kind == RegressorKind::fnn) {
    MLPConfig cfg = config.mlp;
    cfg.seed = derive_stream_id({config.mlp.seed, kVarianceStageTag});
    MLPNetwork net = init_network(cfg, Xs.cols, OutputTransform::softplus);
    model.variance_report = train(net, Xs, sq_residuals, cfg, config.validation_fraction);
    model.variance_net = std::move(net);
  } else {
    ForestConfig cfg = config.forest;
    cfg.seed = derive_stream_id({config.forest.seed, kVarianceStageTag});
    model.variance_forest = fit_forest(Xs, sq_residuals, cfg);
  }
  return model;
}

std::pair<Dataset, Dataset> split_by_status(const Dataset& data) {
  data.validate();
  if (!data.has_both_classes())
    throw std::invalid_argument("split_by_status: both status classes must be present");
  std::vector<std::size_t> rows0;
  std::vector<std::size_t> rows1;
  for (std::size_t i = 0; i < data.n(); ++i) (data.d[i] == 0 ? rows0 : rows1).push_back(i);
  return {data.select_rows(rows0), data.select_rows(rows1)};
}

AROCModel fit_aroc_model(const Dataset& data, RegressorKind kind, const FitConfig& config) {
  auto [healthy, diseased] = split_by_status(data);
  AROCModel model;
  model.kind = kind;
  model.schema = data.column_names;
  model.config = config;
  model.group0 = fit_group_model(healthy, kind, config);
  model.group1 = fit_group_model(diseased, kind, config);
  return model;
}

std::pair<double, double> predict_mean_std(const AROCModel& model, int group,
                                           std::span<const double> x) {
  if (group != 0 && group != 1)
    throw std::invalid_argument("predict_mean_std: group must be 0 or 1");
  if (x.size() != model.schema.size())
    throw std::invalid_argument("predict_mean_std: covariate length does not match the schema");
  const GroupModel& gm = group == 0 ? model.group0 : model.group1;
  return {gm.predict_mean(x), gm.predict_std(x)};
}

LocationScaleParams location_scale_at(const AROCModel& model, std::span<const double> x) {
  const auto [mu0, sigma0] = predict_mean_std(model, 0, x);
  const auto [mu1, sigma1] = predict_mean_std(model, 1, x);
  return {(mu1 - mu0) / sigma1, sigma0 / sigma1};
}

ROCCurve evaluate_aroc(const AROCModel& model, std::span<const double> x,
                       std::span<const double> p_grid) {
  const LocationScaleParams params = location_scale_at(model, x);
  ROCCurve curve;
  curve.fpr.assign(p_grid.begin(), p_grid.end());
  curve.tpr.resize(p_grid.size());
  for (std::size_t i = 0; i < p_grid.size(); ++i) curve.tpr[i] = aroc_value(params, p_grid[i]);
  return curve;
}

std::vector<double> evaluate_auc_surface(const AROCModel& model, const Matrix& x_grid) {
  if (x_grid.cols != model.schema.size())
    throw std::invalid_argument("evaluate_auc_surface: grid columns do not match the schema");
  std::vector<double> auc(x_grid.rows);
  for (std::size_t i = 0; i < x_grid.rows; ++i)
    auc[i] = auc_closed_form(location_scale_at(model, x_grid.row_span(i)));
  return auc;
}

std::pair<Dataset, Dataset> holdout_split(const Dataset& data, double fraction,
                                          std::uint64_t seed) {
  data.validate();
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("holdout_split: fraction must lie in (0, 1)");

  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  for (int cls : {0, 1}) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < data.n(); ++i)
      if (data.d[i] == cls) rows.push_back(i);
    if (rows.empty()) continue;
    if (rows.size() < 2)
      throw std::invalid_argument("holdout_split: class " + std::to_string(cls) +
                                  " has too few rows to stratify");
    RngStream rng(seed, derive_stream_id({kHoldoutTag, static_cast<std::uint64_t>(cls)}));
    shuffle_indices(rows, rng);
    std::size_t n_test = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(rows.size())));
    n_test = std::clamp<std::size_t>(n_test, 1, rows.size() - 1);
    test_rows.insert(test_rows.end(), rows.begin(), rows.begin() + static_cast<long>(n_test));
    train_rows.insert(train_rows.end(), rows.begin() + static_cast<long>(n_test), rows.end());
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  return {data.select_rows(train_rows), data.select_rows(test_rows)};
}

CVReport cross_validate(const Dataset& group_train, const std::vector<MLPConfig>& grid,
                        std::size_t k, std::uint64_t fold_seed) {
  group_train.validate();
  if (k < 2) throw std::invalid_argument("cross_validate: k must be >= 2");
  if (grid.empty()) throw std::invalid_argument("cross_validate: empty candidate grid");
  const std::size_t n = group_train.n();
  if (n < k) throw std::invalid_argument("cross_validate: fewer rows than folds");

  CVReport report;
  report.fold_seed = fold_seed;
  report.fold_assignment.assign(n, 0);
  RngStream rng(fold_seed, derive_stream_id({0xF01D}));
  const std::vector<std::size_t> order = shuffled_indices(n, rng);
  for (std::size_t pos = 0; pos < n; ++pos)
    report.fold_assignment[order[pos]] = pos % k;

  std::vector<std::vector<std::size_t>> fold_rows(k);
  for (std::size_t i = 0; i < n; ++i) fold_rows[report.fold_assignment[i]].push_back(i);

  report.mean_validation_mse.reserve(grid.size());
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const MLPConfig& candidate = grid[c];
    candidate.validate();
    double total = 0.0;
    for (std::size_t f = 0; f < k; ++f) {
      std::vector<std::size_t> train_rows;
      train_rows.reserve(n - fold_rows[f].size());
      for (std::size_t i = 0; i < n; ++i)
        if (report.fold_assignment[i] != f) train_rows.push_back(i);
      if (train_rows.size() < candidate.batch_size)
        throw std::invalid_argument("cross_validate: training fold smaller than the batch size");

      const Dataset sub = group_train.select_rows(train_rows);
      MLPConfig cfg = candidate;
      cfg.seed = derive_stream_id({candidate.seed, 0xCF, f});
      MLPNetwork net = init_network(cfg, sub.X.cols, OutputTransform::identity);
      StandardScaler scaler;
      scaler.fit(sub.X);
      train(net, scaler.transform(sub.X), sub.y, cfg);

      const Dataset val = group_train.select_rows(fold_rows[f]);
      const Matrix val_X = scaler.transform(val.X);
      double mse = 0.0;
      for (std::size_t i = 0; i < val.n(); ++i) {
        const double diff = forward(net, val_X.row_span(i), ForwardMode::infer) - val.y[i];
        mse += diff * diff;
      }
      total += mse / static_cast<double>(val.n());
    }
    report.mean_validation_mse.push_back(total / static_cast<double>(k));
  }

  report.chosen = static_cast<std::size_t>(
      std::min_element(report.mean_validation_mse.begin(), report.mean_validation_mse.end()) -
      report.mean_validation_mse.begin());
  return report;
}

}  // namespace aroc
