#pragma once

namespace aroc {

/// Standard normal CDF. Absolute error below 1e-12 over the real line and
/// full relative accuracy in the lower tail. Throws std::domain_error on
/// non-finite input.
double std_normal_cdf(double x);

/// Standard normal density.
double std_normal_pdf(double x) noexcept;

/// Standard normal quantile for p in (0, 1): rational initial guess
/// (Acklam) polished by one Newton step, so |cdf(quantile(p)) - p| stays
/// below 1e-10. Throws std::domain_error for p outside the open interval.
double std_normal_quantile(double p);

/// log(1 + exp(x)) without overflow. Throws std::domain_error on non-finite
/// input.
double softplus(double x);

}  // namespace aroc
