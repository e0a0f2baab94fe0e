#include "aroc/nn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aroc/kernels.hpp"
#include "aroc/special.hpp"

namespace aroc {

namespace {

constexpr std::uint64_t kInitTag = 0x11;
constexpr std::uint64_t kValSplitTag = 0x22;
constexpr std::uint64_t kEpochShuffleTag = 0x33;
constexpr std::uint64_t kDropoutTag = 0x44;

double logistic(double x) noexcept { return 1.0 / (1.0 + std::exp(-x)); }

struct LayerView {
  const double* W;
  const double* b;
  std::size_t out;
  std::size_t in;
};

// Walks the flat parameter vector layer by layer.
template <typename F>
void for_each_layer(const MLPNetwork& net, F&& fn) {
  std::size_t offset = 0;
  std::size_t in = net.input_dim;
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const std::size_t out = net.layer_widths[l];
    LayerView view{net.params.data() + offset, net.params.data() + offset + out * in, out, in};
    fn(l, view, offset);
    offset += out * in + out;
    in = out;
  }
}

}  // namespace

void MLPConfig::validate() const {
  if (hidden_layers.empty()) throw std::invalid_argument("MLPConfig: hidden_layers empty");
  for (std::size_t w : hidden_layers)
    if (w == 0) throw std::invalid_argument("MLPConfig: zero hidden width");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0))
    throw std::invalid_argument("MLPConfig: dropout_rate must lie in [0, 1)");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("MLPConfig: learning_rate must be > 0");
  if (!(weight_decay >= 0.0)) throw std::invalid_argument("MLPConfig: weight_decay must be >= 0");
  if (batch_size == 0) throw std::invalid_argument("MLPConfig: batch_size must be >= 1");
  if (max_epochs == 0) throw std::invalid_argument("MLPConfig: max_epochs must be >= 1");
  if (patience == 0) throw std::invalid_argument("MLPConfig: patience must be >= 1");
}

std::size_t MLPNetwork::expected_parameter_count(std::size_t input_dim,
                                                 std::span<const std::size_t> widths) {
  std::size_t count = 0;
  std::size_t in = input_dim;
  for (std::size_t w : widths) {
    count += w * in + w;
    in = w;
  }
  return count;
}

MLPNetwork init_network(const MLPConfig& config, std::size_t input_dim,
                        OutputTransform transform) {
  config.validate();
  if (input_dim == 0) throw std::invalid_argument("init_network: input_dim must be >= 1");

  MLPNetwork net;
  net.input_dim = input_dim;
  net.layer_widths = config.hidden_layers;
  net.layer_widths.push_back(1);
  net.output_transform = transform;
  net.params.assign(MLPNetwork::expected_parameter_count(input_dim, net.layer_widths), 0.0);

  RngStream rng(config.seed, derive_stream_id({kInitTag}));
  for_each_layer(net, [&](std::size_t, const LayerView& layer, std::size_t offset) {
    const double sd = std::sqrt(2.0 / static_cast<double>(layer.in));
    for (std::size_t i = 0; i < layer.out * layer.in; ++i)
      net.params[offset + i] = sd * rng.next_normal();
    // biases stay zero
  });
  return net;
}

double forward(const MLPNetwork& net, std::span<const double> x, ForwardMode mode,
               RngStream* dropout_rng, double dropout_rate, ActivationCache* cache) {
  if (x.size() != net.input_dim)
    throw std::invalid_argument("forward: input length does not match input_dim");
  const bool use_dropout = mode == ForwardMode::train && dropout_rate > 0.0;
  if (use_dropout && dropout_rng == nullptr)
    throw std::invalid_argument("forward: train mode with dropout requires an RngStream");

  const std::size_t layers = net.layer_count();
  if (cache != nullptr) {
    cache->inputs.assign(layers, {});
    cache->pre.assign(layers, {});
    cache->dropout.assign(layers, {});
  }

  std::vector<double> h(x.begin(), x.end());
  std::vector<double> z;
  double output = 0.0;
  const double keep_scale = use_dropout ? 1.0 / (1.0 - dropout_rate) : 1.0;

  for_each_layer(net, [&](std::size_t l, const LayerView& layer, std::size_t) {
    if (cache != nullptr) cache->inputs[l] = h;
    z.resize(layer.out);
    for (std::size_t j = 0; j < layer.out; ++j)
      z[j] = kernels::dot(layer.W + j * layer.in, h.data(), layer.in) + layer.b[j];
    if (cache != nullptr) cache->pre[l] = z;

    if (l + 1 < layers) {
      h.resize(layer.out);
      if (cache != nullptr) cache->dropout[l].assign(layer.out, 1.0);
      for (std::size_t j = 0; j < layer.out; ++j) {
        double a = z[j] > 0.0 ? z[j] : 0.0;
        if (use_dropout) {
          const double mult = dropout_rng->next_double() < dropout_rate ? 0.0 : keep_scale;
          a *= mult;
          if (cache != nullptr) cache->dropout[l][j] = mult;
        }
        h[j] = a;
      }
    } else {
      output = net.output_transform == OutputTransform::softplus ? softplus(z[0]) : z[0];
    }
  });

  if (!std::isfinite(output)) throw std::runtime_error("forward: non-finite output");
  if (cache != nullptr) cache->output = output;
  return output;
}

std::vector<double> predict_batch(const MLPNetwork& net, const Matrix& X) {
  if (X.rows > 0 && X.cols != net.input_dim)
    throw std::invalid_argument("predict_batch: column count does not match input_dim");
  std::vector<double> out(X.rows);
  for (std::size_t i = 0; i < X.rows; ++i)
    out[i] = forward(net, X.row_span(i), ForwardMode::infer);
  return out;
}

double loss_and_gradient_rows(const MLPNetwork& net, const Matrix& X, std::span<const double> y,
                              std::span<const std::size_t> rows, double weight_decay,
                              std::vector<double>& grad, RngStream* dropout_rng,
                              double dropout_rate) {
  if (rows.empty()) throw std::invalid_argument("loss_and_gradient: empty batch");
  if (X.cols != net.input_dim)
    throw std::invalid_argument("loss_and_gradient: column count does not match input_dim");

  grad.assign(net.parameter_count(), 0.0);
  const std::size_t layers = net.layer_count();
  const double inv_batch = 1.0 / static_cast<double>(rows.size());
  const ForwardMode mode =
      dropout_rng != nullptr && dropout_rate > 0.0 ? ForwardMode::train : ForwardMode::infer;

  std::vector<std::size_t> offsets(layers);
  for_each_layer(net, [&](std::size_t l, const LayerView&, std::size_t off) { offsets[l] = off; });

  ActivationCache cache;
  std::vector<std::vector<double>> delta(layers);
  double data_loss = 0.0;

  for (const std::size_t r : rows) {
    const double pred = forward(net, X.row_span(r), mode, dropout_rng, dropout_rate, &cache);
    const double residual = pred - y[r];
    data_loss += residual * residual * inv_batch;

    // Output layer: d(loss)/d(pre-activation).
    double dout = 2.0 * residual * inv_batch;
    if (net.output_transform == OutputTransform::softplus)
      dout *= logistic(cache.pre[layers - 1][0]);
    delta[layers - 1].assign(1, dout);

    for (std::size_t l = layers; l-- > 0;) {
      const std::size_t in = cache.inputs[l].size();
      const std::size_t out = net.layer_widths[l];
      const double* W = net.params.data() + offsets[l];
      double* gW = grad.data() + offsets[l];
      double* gb = grad.data() + offsets[l] + out * in;

      if (l > 0) {
        auto& prev = delta[l - 1];
        prev.assign(in, 0.0);
        for (std::size_t j = 0; j < out; ++j) {
          const double dj = delta[l][j];
          if (dj != 0.0) kernels::axpy(dj, W + j * in, prev.data(), in);
        }
        // Through dropout and ReLU of the previous hidden layer.
        for (std::size_t i = 0; i < in; ++i) {
          double m = cache.pre[l - 1][i] > 0.0 ? 1.0 : 0.0;
          if (!cache.dropout[l - 1].empty()) m *= cache.dropout[l - 1][i];
          prev[i] *= m;
        }
      }
      const double* input = cache.inputs[l].data();
      for (std::size_t j = 0; j < out; ++j) {
        const double dj = delta[l][j];
        if (dj != 0.0) kernels::axpy(dj, input, gW + j * in, in);
        gb[j] += dj;
      }
    }
  }

  // Weight decay on weights only.
  double decay_loss = 0.0;
  if (weight_decay > 0.0) {
    for_each_layer(net, [&](std::size_t, const LayerView& layer, std::size_t offset) {
      const std::size_t nw = layer.out * layer.in;
      decay_loss += kernels::sum_squares(net.params.data() + offset, nw);
      kernels::axpy(2.0 * weight_decay, net.params.data() + offset, grad.data() + offset, nw);
    });
    decay_loss *= weight_decay;
  }
  return data_loss + decay_loss;
}

double loss_and_gradient(const MLPNetwork& net, const Matrix& X, std::span<const double> y,
                         double weight_decay, std::vector<double>& grad) {
  std::vector<std::size_t> rows(X.rows);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return loss_and_gradient_rows(net, X, y, rows, weight_decay, grad);
}

void adam_step(MLPNetwork& net, const std::vector<double>& grad, AdamState& state,
               const MLPConfig& config) {
  const std::size_t n = net.parameter_count();
  if (grad.size() != n) throw std::invalid_argument("adam_step: gradient shape mismatch");
  if (state.m.empty()) {
    state.m.assign(n, 0.0);
    state.v.assign(n, 0.0);
  }
  if (state.m.size() != n || state.v.size() != n)
    throw std::invalid_argument("adam_step: state shape mismatch");

  constexpr double beta1 = 0.9;
  constexpr double beta2 = 0.999;
  constexpr double eps = 1e-8;
  ++state.step_count;
  const double t = static_cast<double>(state.step_count);
  const double corr1 = 1.0 - std::pow(beta1, t);
  const double corr2 = 1.0 - std::pow(beta2, t);
  const double lr = config.learning_rate;

  for (std::size_t i = 0; i < n; ++i) {
    state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * grad[i];
    state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * grad[i] * grad[i];
    const double m_hat = state.m[i] / corr1;
    const double v_hat = state.v[i] / corr2;
    net.params[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
  }
}

double mse_on_rows(const MLPNetwork& net, const Matrix& X, std::span<const double> y,
                   std::span<const std::size_t> rows) {
  if (rows.empty()) throw std::invalid_argument("mse_on_rows: empty row set");
  double acc = 0.0;
  for (const std::size_t r : rows) {
    const double diff = forward(net, X.row_span(r), ForwardMode::infer) - y[r];
    acc += diff * diff;
  }
  return acc / static_cast<double>(rows.size());
}

std::vector<std::size_t> validation_rows(std::size_t n, const MLPConfig& config,
                                         double validation_fraction) {
  if (n < 2) throw std::invalid_argument("validation_rows: need at least two samples");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
    throw std::invalid_argument("validation split fraction must lie in (0, 1)");
  RngStream split_rng(config.seed, derive_stream_id({kValSplitTag}));
  const std::vector<std::size_t> order = shuffled_indices(n, split_rng);
  std::size_t val_n =
      static_cast<std::size_t>(std::llround(validation_fraction * static_cast<double>(n)));
  val_n = std::clamp<std::size_t>(val_n, 1, n - 1);
  return {order.end() - static_cast<long>(val_n), order.end()};
}

TrainReport train(MLPNetwork& net, const Matrix& X, std::span<const double> y,
                  const MLPConfig& config, double validation_fraction) {
  config.validate();
  if (X.rows == 0 || y.empty()) throw std::invalid_argument("train: empty data");
  if (X.rows != y.size()) throw std::invalid_argument("train: X and y row counts differ");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
    throw std::invalid_argument("train: validation fraction must lie in (0, 1)");

  // Validation rows: tail of a seeded shuffle.
  RngStream split_rng(config.seed, derive_stream_id({kValSplitTag}));
  std::vector<std::size_t> order = shuffled_indices(X.rows, split_rng);
  std::size_t val_n = static_cast<std::size_t>(
      std::llround(validation_fraction * static_cast<double>(X.rows)));
  val_n = std::clamp<std::size_t>(val_n, 1, X.rows - 1);
  std::vector<std::size_t> train_rows(order.begin(), order.end() - static_cast<long>(val_n));
  const std::vector<std::size_t> val_rows(order.end() - static_cast<long>(val_n), order.end());

  RngStream shuffle_rng(config.seed, derive_stream_id({kEpochShuffleTag}));
  RngStream dropout_rng(config.seed, derive_stream_id({kDropoutTag}));

  TrainReport report;
  report.best_validation_mse = std::numeric_limits<double>::infinity();
  std::vector<double> best_params = net.params;
  std::size_t since_best = 0;
  std::vector<double> grad;
  AdamState adam;

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    shuffle_indices(train_rows, shuffle_rng);
    double epoch_loss = 0.0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start < train_rows.size(); start += config.batch_size) {
      const std::size_t len = std::min(config.batch_size, train_rows.size() - start);
      const std::span<const std::size_t> batch(train_rows.data() + start, len);
      const double loss = loss_and_gradient_rows(net, X, y, batch, config.weight_decay, grad,
                                                 &dropout_rng, config.dropout_rate);
      if (!std::isfinite(loss))
        throw std::runtime_error("train: non-finite loss at epoch " + std::to_string(epoch));
      adam_step(net, grad, adam, config);
      epoch_loss += loss * static_cast<double>(len);
      seen += len;
    }
    report.training_loss_trace.push_back(epoch_loss / static_cast<double>(seen));
    report.epochs_run = epoch;

    const double val_mse = mse_on_rows(net, X, y, val_rows);
    if (val_mse < report.best_validation_mse) {
      report.best_validation_mse = val_mse;
      best_params = net.params;
      since_best = 0;
    } else {
      ++since_best;
      if (since_best >= config.patience) {
        report.stopped_early = true;
        break;
      }
    }
  }

  net.params = std::move(best_params);
  return report;
}

}  // namespace aroc
