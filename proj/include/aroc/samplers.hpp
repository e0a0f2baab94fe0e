#pragma once

#include "aroc/rng.hpp"

namespace aroc {

/// Normal(mean, sd^2) draw; sd must be positive.
double sample_normal(double mean, double sd, RngStream& rng);

/// Azzalini skew-normal SN(location, scale, shape) via the delta
/// representation Z = delta*|U0| + sqrt(1-delta^2)*U1 (exact, no rejection).
double sample_skew_normal(double location, double scale, double shape, RngStream& rng);

/// Location-scale Student-t with df degrees of freedom, built from a normal
/// over a scaled chi-square root; valid for any real df > 0.
double sample_student_t(double location, double scale, double df, RngStream& rng);

/// Gamma(shape, scale) via Marsaglia-Tsang squeeze.
double sample_gamma(double shape, double scale, RngStream& rng);

/// Chi-square with df > 0 (possibly non-integer).
double sample_chi_square(double df, RngStream& rng);

}  // namespace aroc
