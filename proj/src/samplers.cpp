#include "aroc/samplers.hpp"

#include <cmath>
#include <stdexcept>

namespace aroc {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::domain_error(std::string(what) + " must be positive");
}

}  // namespace

double sample_normal(double mean, double sd, RngStream& rng) {
  require_positive(sd, "sample_normal: sd");
  return mean + sd * rng.next_normal();
}

double sample_skew_normal(double location, double scale, double shape, RngStream& rng) {
  require_positive(scale, "sample_skew_normal: scale");
  const double delta = shape / std::sqrt(1.0 + shape * shape);
  const double u0 = rng.next_normal();
  const double u1 = rng.next_normal();
  const double z = delta * std::fabs(u0) + std::sqrt(1.0 - delta * delta) * u1;
  return location + scale * z;
}

double sample_gamma(double shape, double scale, RngStream& rng) {
  require_positive(shape, "sample_gamma: shape");
  require_positive(scale, "sample_gamma: scale");
  if (shape < 1.0) {
    // Boost the shape above 1 and correct with a power of a uniform.
    const double u = rng.next_open();
    return sample_gamma(shape + 1.0, scale, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = rng.next_normal();
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = rng.next_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return scale * d * v;
  }
}

double sample_chi_square(double df, RngStream& rng) {
  require_positive(df, "sample_chi_square: df");
  return sample_gamma(0.5 * df, 2.0, rng);
}

double sample_student_t(double location, double scale, double df, RngStream& rng) {
  require_positive(scale, "sample_student_t: scale");
  require_positive(df, "sample_student_t: df");
  const double z = rng.next_normal();
  const double chi2 = sample_chi_square(df, rng);
  return location + scale * z / std::sqrt(chi2 / df);
}

}  // namespace aroc
