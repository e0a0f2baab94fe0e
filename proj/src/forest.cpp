#include "aroc/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aroc {

namespace {

constexpr std::uint64_t kTreeTag = 0x7EE5;

struct SplitCandidate {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double score = -1.0;  // sum_L^2/n_L + sum_R^2/n_R, larger is better
};

bool better(const SplitCandidate& a, const SplitCandidate& b) {
  if (!b.found) return a.found;
  if (!a.found) return false;
  if (a.score != b.score) return a.score > b.score;
  if (a.feature != b.feature) return a.feature < b.feature;
  return a.threshold < b.threshold;
}

struct TreeBuilder {
  const Matrix& X;
  std::span<const double> y;
  const ForestConfig& config;
  RngStream& rng;
  RegressionTree tree;
  std::vector<std::size_t> feature_pool;
  std::vector<std::pair<double, double>> scratch;  // (feature value, target)

  TreeBuilder(const Matrix& x, std::span<const double> targets, const ForestConfig& cfg,
              RngStream& stream)
      : X(x), y(targets), config(cfg), rng(stream), feature_pool(x.cols) {
    std::iota(feature_pool.begin(), feature_pool.end(), std::size_t{0});
  }

  // Features examined at one node: all of them when max_features >= p,
  // otherwise a uniform draw without replacement.
  std::span<const std::size_t> draw_features() {
    const std::size_t p = X.cols;
    const std::size_t k = std::min(config.max_features, p);
    if (k == p) return {feature_pool.data(), p};
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + rng.next_below(p - i);
      std::swap(feature_pool[i], feature_pool[j]);
    }
    std::sort(feature_pool.begin(), feature_pool.begin() + static_cast<long>(k));
    return {feature_pool.data(), k};
  }

  SplitCandidate scan_feature(std::size_t feature, std::span<const std::size_t> rows,
                              double total_sum) {
    scratch.clear();
    scratch.reserve(rows.size());
    for (const std::size_t r : rows) scratch.emplace_back(X.at(r, feature), y[r]);
    std::sort(scratch.begin(), scratch.end());

    SplitCandidate best;
    const std::size_t n = scratch.size();
    double left_sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      left_sum += scratch[i].second;
      if (scratch[i].first == scratch[i + 1].first) continue;
      const std::size_t n_left = i + 1;
      const std::size_t n_right = n - n_left;
      if (n_left < config.min_samples_leaf || n_right < config.min_samples_leaf) continue;
      const double right_sum = total_sum - left_sum;
      const double score = left_sum * left_sum / static_cast<double>(n_left) +
                           right_sum * right_sum / static_cast<double>(n_right);
      if (!best.found || score > best.score) {
        best.found = true;
        best.feature = static_cast<int>(feature);
        best.threshold = scratch[i].first + 0.5 * (scratch[i + 1].first - scratch[i].first);
        best.score = score;
      }
    }
    return best;
  }

  int build(std::vector<std::size_t>& rows, std::size_t depth) {
    double sum = 0.0;
    for (const std::size_t r : rows) sum += y[r];
    const double mean = sum / static_cast<double>(rows.size());

    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, mean, rows.size()});

    if (depth >= config.max_depth || rows.size() < config.min_samples_split ||
        rows.size() < 2 * config.min_samples_leaf)
      return id;

    SplitCandidate best;
    for (const std::size_t f : draw_features()) {
      const SplitCandidate cand = scan_feature(f, rows, sum);
      if (better(cand, best)) best = cand;
    }
    if (!best.found) return id;

    // A split must strictly reduce the weighted variance; the relative
    // epsilon keeps rounding noise on constant targets from splitting.
    const double parent_score = sum * sum / static_cast<double>(rows.size());
    if (!(best.score - parent_score > 1e-12 * std::max(1.0, std::fabs(parent_score)))) return id;

    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    left_rows.reserve(rows.size());
    right_rows.reserve(rows.size());
    for (const std::size_t r : rows) {
      if (X.at(r, static_cast<std::size_t>(best.feature)) <= best.threshold)
        left_rows.push_back(r);
      else
        right_rows.push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    tree.nodes[static_cast<std::size_t>(id)].feature = best.feature;
    tree.nodes[static_cast<std::size_t>(id)].threshold = best.threshold;
    const int left = build(left_rows, depth + 1);
    tree.nodes[static_cast<std::size_t>(id)].left = left;
    const int right = build(right_rows, depth + 1);
    tree.nodes[static_cast<std::size_t>(id)].right = right;
    return id;
  }
};

}  // namespace

void ForestConfig::validate() const {
  if (n_trees == 0) throw std::invalid_argument("ForestConfig: n_trees must be >= 1");
  if (max_depth == 0) throw std::invalid_argument("ForestConfig: max_depth must be >= 1");
  if (min_samples_leaf == 0)
    throw std::invalid_argument("ForestConfig: min_samples_leaf must be >= 1");
  if (min_samples_split < 2)
    throw std::invalid_argument("ForestConfig: min_samples_split must be >= 2");
  if (max_features == 0) throw std::invalid_argument("ForestConfig: max_features must be >= 1");
}

double RegressionTree::predict(std::span<const double> x) const {
  const TreeNode* node = &nodes.front();
  while (!node->is_leaf()) {
    const std::size_t f = static_cast<std::size_t>(node->feature);
    node = &nodes[static_cast<std::size_t>(x[f] <= node->threshold ? node->left : node->right)];
  }
  return node->value;
}

std::size_t RegressionTree::depth() const {
  // Iterative depth over the node indices (children always follow parents).
  std::vector<std::size_t> level(nodes.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].is_leaf()) {
      level[static_cast<std::size_t>(nodes[i].left)] = level[i] + 1;
      level[static_cast<std::size_t>(nodes[i].right)] = level[i] + 1;
    }
    deepest = std::max(deepest, level[i]);
  }
  return deepest;
}

RegressionTree fit_tree(const Matrix& X, std::span<const double> y, const ForestConfig& config,
                        RngStream& rng) {
  config.validate();
  if (X.rows == 0 || y.empty()) throw std::invalid_argument("fit_tree: empty data");
  if (X.rows != y.size()) throw std::invalid_argument("fit_tree: X and y row counts differ");

  TreeBuilder builder(X, y, config, rng);
  std::vector<std::size_t> rows(X.rows);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  builder.build(rows, 0);
  return std::move(builder.tree);
}

Forest fit_forest(const Matrix& X, std::span<const double> y, const ForestConfig& config) {
  config.validate();
  if (X.rows == 0 || y.empty()) throw std::invalid_argument("fit_forest: empty data");
  if (X.rows != y.size()) throw std::invalid_argument("fit_forest: X and y row counts differ");

  Forest forest;
  forest.config = config;
  forest.n_features = X.cols;
  forest.y_min = *std::min_element(y.begin(), y.end());
  forest.y_max = *std::max_element(y.begin(), y.end());
  forest.trees.reserve(config.n_trees);

  const std::size_t n = X.rows;
  Matrix boot_X(n, X.cols);
  std::vector<double> boot_y(n);
  for (std::size_t t = 0; t < config.n_trees; ++t) {
    RngStream rng(config.seed, derive_stream_id({kTreeTag, t}));
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = rng.next_below(n);
      std::copy(X.row(r), X.row(r) + X.cols, boot_X.row(i));
      boot_y[i] = y[r];
    }
    forest.trees.push_back(fit_tree(boot_X, boot_y, config, rng));
  }
  return forest;
}

double predict_forest_one(const Forest& forest, std::span<const double> x) {
  if (x.size() != forest.n_features)
    throw std::invalid_argument("predict_forest: feature count mismatch");
  double acc = 0.0;
  for (const auto& tree : forest.trees) acc += tree.predict(x);
  return acc / static_cast<double>(forest.trees.size());
}

std::vector<double> predict_forest(const Forest& forest, const Matrix& X) {
  if (X.rows > 0 && X.cols != forest.n_features)
    throw std::invalid_argument("predict_forest: feature count mismatch");
  std::vector<double> out(X.rows);
  for (std::size_t i = 0; i < X.rows; ++i) out[i] = predict_forest_one(forest, X.row_span(i));
  return out;
}

}  // namespace aroc
