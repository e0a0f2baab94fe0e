#include "aroc/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace aroc::kernels {

namespace {

constexpr Ops kScalarOps{&detail::dot_scalar, &detail::axpy_scalar, &detail::sum_squares_scalar};
constexpr Ops kAvx2Ops{&detail::dot_avx2, &detail::axpy_avx2, &detail::sum_squares_avx2};

bool avx2_usable() noexcept {
#if defined(__x86_64__)
  return detail::avx2_compiled() && __builtin_cpu_supports("avx2") &&
         __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() noexcept {
  if (const char* env = std::getenv("AROC_ISA")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_usable()) return Isa::avx2;
  }
  return avx2_usable() ? Isa::avx2 : Isa::scalar;
}

std::atomic<const Ops*>& active_ops() noexcept {
  static std::atomic<const Ops*> ops{initial_isa() == Isa::avx2 ? &kAvx2Ops : &kScalarOps};
  return ops;
}

}  // namespace

const Ops* ops(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return &kScalarOps;
    case Isa::avx2:
      return avx2_usable() ? &kAvx2Ops : nullptr;
  }
  return nullptr;
}

Isa active_isa() noexcept {
  return active_ops().load(std::memory_order_relaxed) == &kAvx2Ops ? Isa::avx2 : Isa::scalar;
}

bool force_isa(Isa isa) noexcept {
  const Ops* table = ops(isa);
  if (table == nullptr) return false;
  active_ops().store(table, std::memory_order_relaxed);
  return true;
}

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

double dot(const double* a, const double* b, std::size_t n) noexcept {
  return active_ops().load(std::memory_order_relaxed)->dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
  active_ops().load(std::memory_order_relaxed)->axpy(alpha, x, y, n);
}

double sum_squares(const double* x, std::size_t n) noexcept {
  return active_ops().load(std::memory_order_relaxed)->sum_squares(x, n);
}

}  // namespace aroc::kernels
