#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aroc/dataset.hpp"
#include "aroc/rng.hpp"

namespace aroc {

struct ForestConfig {
  std::size_t n_trees = 500;
  std::size_t max_depth = 3;
  std::size_t min_samples_split = 20;
  std::size_t min_samples_leaf = 20;
  std::size_t max_features = 2;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Node of a binary regression tree. Leaves carry the mean target of the
/// training rows that reached them; n_samples is kept for diagnostics.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
  std::size_t n_samples = 0;

  bool is_leaf() const { return left < 0; }
};

struct RegressionTree {
  std::vector<TreeNode> nodes;

  double predict(std::span<const double> x) const;
  std::size_t depth() const;
};

struct Forest {
  ForestConfig config;
  std::size_t n_features = 0;
  double y_min = 0.0;
  double y_max = 0.0;
  std::vector<RegressionTree> trees;
};

/// Greedy squared-error tree: each node scans midpoints between consecutive
/// sorted unique values of a random feature subset of size
/// min(max_features, p); ties break toward the lowest (feature, threshold).
RegressionTree fit_tree(const Matrix& X, std::span<const double> y, const ForestConfig& config,
                        RngStream& rng);

/// n_trees trees fit on bootstrap resamples, each from its own sub-stream of
/// the seed.
Forest fit_forest(const Matrix& X, std::span<const double> y, const ForestConfig& config);

/// Mean over per-tree predictions; every value lies within the training
/// target range.
std::vector<double> predict_forest(const Forest& forest, const Matrix& X);

double predict_forest_one(const Forest& forest, std::span<const double> x);

}  // namespace aroc
