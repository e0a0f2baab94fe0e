#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aroc/dataset.hpp"
#include "aroc/rng.hpp"

namespace aroc {

/// Training hyperparameters for the regression MLP.
struct MLPConfig {
  std::vector<std::size_t> hidden_layers{64, 32};
  double dropout_rate = 0.2;
  double learning_rate = 1e-3;
  double weight_decay = 1e-4;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 500;
  std::size_t patience = 20;
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument on bad bounds
};

/// Transform applied to the scalar output of the final linear layer.
enum class OutputTransform { identity, softplus };

/// Fully connected ReLU network with a scalar linear output. Parameters are
/// stored flat, layer by layer: the row-major weight matrix (out x in)
/// followed by the bias vector.
struct MLPNetwork {
  std::size_t input_dim = 0;
  std::vector<std::size_t> layer_widths;  // hidden widths, then 1
  OutputTransform output_transform = OutputTransform::identity;
  std::vector<double> params;

  std::size_t layer_count() const { return layer_widths.size(); }
  std::size_t parameter_count() const { return params.size(); }

  /// Number of parameters implied by input_dim and layer_widths.
  static std::size_t expected_parameter_count(std::size_t input_dim,
                                              std::span<const std::size_t> widths);
};

struct TrainReport {
  std::size_t epochs_run = 0;
  double best_validation_mse = 0.0;
  std::vector<double> training_loss_trace;
  bool stopped_early = false;
};

enum class ForwardMode { train, infer };

/// Per-sample intermediate state captured by forward() for backpropagation.
struct ActivationCache {
  std::vector<std::vector<double>> inputs;   // inputs[l] feeds layer l; inputs[0] = x
  std::vector<std::vector<double>> pre;      // pre-activations per layer
  std::vector<std::vector<double>> dropout;  // per hidden unit: 0 or 1/(1-p)
  double output = 0.0;
};

/// He-initialized network (fan-in scaled normal weights, zero biases),
/// deterministic in config.seed.
MLPNetwork init_network(const MLPConfig& config, std::size_t input_dim,
                        OutputTransform transform = OutputTransform::identity);

/// Single-sample forward pass. Train mode applies inverted dropout (masks
/// scaled by 1/(1-p)) so that infer mode is its expectation; dropout_rng is
/// required whenever dropout_rate > 0 in train mode.
double forward(const MLPNetwork& net, std::span<const double> x, ForwardMode mode,
               RngStream* dropout_rng = nullptr, double dropout_rate = 0.0,
               ActivationCache* cache = nullptr);

/// Infer-mode forward pass per row.
std::vector<double> predict_batch(const MLPNetwork& net, const Matrix& X);

/// Batch-mean squared error plus weight_decay * (sum of squared weights);
/// grad receives the exact backpropagated gradient, including the
/// 2*weight_decay*w term on weights (biases are not decayed). Dropout off.
double loss_and_gradient(const MLPNetwork& net, const Matrix& X, std::span<const double> y,
                         double weight_decay, std::vector<double>& grad);

/// As above restricted to the given rows, with optional train-mode dropout.
double loss_and_gradient_rows(const MLPNetwork& net, const Matrix& X, std::span<const double> y,
                              std::span<const std::size_t> rows, double weight_decay,
                              std::vector<double>& grad, RngStream* dropout_rng = nullptr,
                              double dropout_rate = 0.0);

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::size_t step_count = 0;
};

/// Adam update (beta1 = 0.9, beta2 = 0.999, eps = 1e-8, bias correction).
void adam_step(MLPNetwork& net, const std::vector<double>& grad, AdamState& state,
               const MLPConfig& config);

/// Mini-batch Adam with per-epoch reshuffling, validation tracking (dropout
/// off) and early stopping; the network is left at the best-validation
/// parameters. validation_fraction carves the validation rows off the end of
/// a seeded shuffle.
TrainReport train(MLPNetwork& net, const Matrix& X, std::span<const double> y,
                  const MLPConfig& config, double validation_fraction = 0.1);

/// Mean squared error of infer-mode predictions on the given rows.
double mse_on_rows(const MLPNetwork& net, const Matrix& X, std::span<const double> y,
                   std::span<const std::size_t> rows);

/// The validation rows train() carves out for n samples under this config,
/// exposed so the early-stopping restore point can be audited.
std::vector<std::size_t> validation_rows(std::size_t n, const MLPConfig& config,
                                         double validation_fraction = 0.1);

}  // namespace aroc
