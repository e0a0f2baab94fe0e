#include "aroc/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aroc/samplers.hpp"

namespace aroc::scenarios {

namespace {

constexpr double kPi = std::numbers::pi;

// Scenario VII healthy component parameters.
constexpr double kSkewShape = 2.0;
constexpr double kSkewScale = 0.25;
constexpr double kTScale = 0.25;
constexpr double kTDf = 5.0;

double mixture_weight(double x4) {
  // exp(-2*x4) exceeds 1 for negative x4; a mixing weight is clamped to 1.
  return std::min(1.0, std::exp(-2.0 * x4));
}

struct Moments {
  double mean;
  double var;
};

Moments skew_component_moments(double x4) {
  const double delta = kSkewShape / std::sqrt(1.0 + kSkewShape * kSkewShape);
  const double mean = x4 * x4 + kSkewScale * delta * std::sqrt(2.0 / kPi);
  const double var = kSkewScale * kSkewScale * (1.0 - 2.0 * delta * delta / kPi);
  return {mean, var};
}

Moments t_component_moments(double x4) {
  return {std::sin(kPi * x4), kTScale * kTScale * kTDf / (kTDf - 2.0)};
}

double healthy_mean(int id, std::span<const double> x) {
  switch (id) {
    case 1:
    case 8:
      return 0.5;
    case 2:
      return 0.5 + (2.0 * x[0] - 10.0) / 23.0;
    case 3:
      return 0.25 + 0.5 * (2.0 * x[0] - 10.0) / 23.0;
    case 4: {
      const double u = (x[0] + 8.0) / 23.0;
      return 5.0 + 3.0 * u * u - 25.0 * std::pow(u - 0.2, 3) + 250.0 * std::pow(u - 0.65, 3);
    }
    case 5:
      return 0.5 * std::exp((2.0 * x[0] - 10.0) / 10.0) -
             2.0 * (2.0 * x[1] * x[1] - 10.0) / 10.0;
    case 6: {
      const double u = (2.0 * x[0] - 10.0) / 10.0;
      return -std::sin(0.7 * kPi * (u + 30.0)) * x[1] + u * u * (1.0 - x[1]);
    }
    case 9:
      return 0.5 * std::exp(2.0 * x[0]) - x[1] * x[1] + 0.5 * x[2] * x[2] + x[3];
    default:
      throw std::invalid_argument("scenario: no closed healthy mean for id " +
                                  std::to_string(id));
  }
}

double diseased_mean(int id, std::span<const double> x) {
  switch (id) {
    case 1:
    case 8:
      return 1.0;
    case 2:
      return 1.0 + (2.0 * x[0] - 10.0) / 23.0;
    case 3:
      return 0.75 + (2.0 * x[0] - 10.0) / 23.0;
    case 4:
      return -3.0 - 0.6 * (x[0] + 8.0) / 23.0;
    case 5: {
      const double u = (2.0 * x[0] - 10.0) / 10.0;
      return 0.5 * std::sin(kPi * (u + 1.0)) + 0.5 * std::exp(u);
    }
    case 6: {
      const double u = (2.0 * x[0] - 10.0) / 10.0;
      return 0.5 + u * u;
    }
    case 7:
      return std::sin(2.0 * kPi * x[0]) + 1.5;
    case 9:
      return 0.5 + 0.5 * std::exp(2.0 * x[0]) - x[1] * x[1] + 0.5 * x[2] * x[2] + x[3];
    default:
      throw std::invalid_argument("scenario: no closed diseased mean for id " +
                                  std::to_string(id));
  }
}

}  // namespace

const ScenarioSpec& spec(int id) {
  static const std::vector<ScenarioSpec> specs = {
      {1, 1, {"x1"}, {}},
      {2, 1, {"x1"}, {0}},
      {3, 1, {"x1"}, {0}},
      {4, 1, {"x1"}, {0}},
      {5, 2, {"x1", "x2"}, {0, 1}},
      {6, 2, {"x1", "x3"}, {0, 1}},
      {7, 1, {"x4"}, {0}},
      {8, 5, {"x1", "x5", "x6", "x7", "x8"}, {}},
      {9, 4, {"x5", "x6", "x7", "x8"}, {0, 1, 2, 3}},
  };
  if (id < 1 || id > 9)
    throw std::invalid_argument("scenario: unknown id " + std::to_string(id));
  return specs[static_cast<std::size_t>(id - 1)];
}

double sample_conditional_y(int id, int group, std::span<const double> x, RngStream& rng) {
  const ScenarioSpec& sc = spec(id);
  if (x.size() != sc.dim) throw std::invalid_argument("scenario: covariate length mismatch");
  if (group != 0 && group != 1) throw std::invalid_argument("scenario: group must be 0 or 1");

  if (group == 0 && id == 7) {
    const double x4 = x[0];
    const double w = mixture_weight(x4);
    if (rng.next_double() < w)
      return sample_skew_normal(x4 * x4, kSkewScale, kSkewShape, rng);
    return sample_student_t(std::sin(kPi * x4), kTScale, kTDf, rng);
  }
  if (group == 0) return sample_normal(healthy_mean(id, x), 0.5, rng);
  if (id == 7) return sample_normal(diseased_mean(id, x), 0.5, rng);
  return sample_normal(diseased_mean(id, x), 1.0, rng);
}

Dataset generate(int id, int group, std::size_t n, RngStream& rng) {
  const ScenarioSpec& sc = spec(id);
  if (group != 0 && group != 1) throw std::invalid_argument("scenario: group must be 0 or 1");
  if (n == 0) throw std::invalid_argument("scenario: n must be >= 1");

  Dataset data;
  data.column_names = sc.column_names;
  data.X = Matrix(n, sc.dim);
  data.y.resize(n);
  data.d.assign(n, group);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < sc.dim; ++j) data.X.at(i, j) = 2.0 * rng.next_double() - 1.0;
    data.y[i] = sample_conditional_y(id, group, data.X.row_span(i), rng);
  }
  return data;
}

std::pair<double, double> true_moments(int id, int group, std::span<const double> x) {
  const ScenarioSpec& sc = spec(id);
  if (x.size() != sc.dim) throw std::invalid_argument("scenario: covariate length mismatch");
  if (group != 0 && group != 1) throw std::invalid_argument("scenario: group must be 0 or 1");

  if (group == 0 && id == 7) {
    const double w = mixture_weight(x[0]);
    const Moments sn = skew_component_moments(x[0]);
    const Moments t = t_component_moments(x[0]);
    const double mean = w * sn.mean + (1.0 - w) * t.mean;
    const double second = w * (sn.var + sn.mean * sn.mean) + (1.0 - w) * (t.var + t.mean * t.mean);
    return {mean, std::sqrt(second - mean * mean)};
  }
  if (group == 0) return {healthy_mean(id, x), 0.5};
  if (id == 7) return {diseased_mean(id, x), 0.5};
  return {diseased_mean(id, x), 1.0};
}

}  // namespace aroc::scenarios
