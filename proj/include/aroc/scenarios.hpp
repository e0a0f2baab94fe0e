#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aroc/dataset.hpp"
#include "aroc/rng.hpp"

namespace aroc::scenarios {

/// Static description of one synthetic scenario: covariate layout plus which
/// columns actually drive the response.
struct ScenarioSpec {
  int id = 0;
  std::size_t dim = 0;
  std::vector<std::string> column_names;
  std::vector<std::size_t> informative;  // column indices (either group)
};

/// Specs for ids 1..9; throws on unknown id.
const ScenarioSpec& spec(int id);

/// One draw of the response given covariates x, for the given group
/// (0 = healthy, 1 = diseased).
double sample_conditional_y(int id, int group, std::span<const double> x, RngStream& rng);

/// Single-group dataset of n rows: covariates uniform on (-1, 1), responses
/// from the scenario's conditional law. The d column is constant `group`.
Dataset generate(int id, int group, std::size_t n, RngStream& rng);

/// Exact conditional mean and standard deviation of the scenario law.
std::pair<double, double> true_moments(int id, int group, std::span<const double> x);

}  // namespace aroc::scenarios
