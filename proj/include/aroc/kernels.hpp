#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel arithmetic kernels used by the hot loops (network passes,
// density accumulation). Scalar reference implementations always exist;
// an AVX2/FMA variant is selected at runtime when the CPU supports it.
// Select explicitly with force_isa() or the AROC_ISA environment variable
// ("scalar" / "avx2"), read once at first use.

namespace aroc::kernels {

enum class Isa { scalar, avx2 };

struct Ops {
  double (*dot)(const double*, const double*, std::size_t) noexcept;
  void (*axpy)(double, const double*, double*, std::size_t) noexcept;
  double (*sum_squares)(const double*, std::size_t) noexcept;
};

/// Kernel table for one instruction set; null pointers if unavailable.
const Ops* ops(Isa isa) noexcept;

Isa active_isa() noexcept;
bool force_isa(Isa isa) noexcept;  // false if the requested set is unavailable
std::string_view isa_name(Isa isa) noexcept;

/// dot(a, b) = sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n) noexcept;

/// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;

/// sum_i x[i]^2
double sum_squares(const double* x, std::size_t n) noexcept;

namespace detail {
double dot_scalar(const double* a, const double* b, std::size_t n) noexcept;
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) noexcept;
double sum_squares_scalar(const double* x, std::size_t n) noexcept;

// Defined in the AVX2 translation unit; may report itself unavailable.
bool avx2_compiled() noexcept;
double dot_avx2(const double* a, const double* b, std::size_t n) noexcept;
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) noexcept;
double sum_squares_avx2(const double* x, std::size_t n) noexcept;
}  // namespace detail

}  // namespace aroc::kernels
