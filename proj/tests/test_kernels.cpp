#include <doctest.h>

#include <cmath>
#include <vector>

#include "aroc/kernels.hpp"
#include "aroc/rng.hpp"

using namespace aroc;

namespace {

std::vector<double> random_vector(std::size_t n, RngStream& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = 4.0 * rng.next_double() - 2.0;
  return v;
}

}  // namespace

TEST_CASE("scalar kernels agree with plain loops") {
  RngStream rng(11, 0);
  const auto a = random_vector(257, rng);
  const auto b = random_vector(257, rng);
  const auto* ops = kernels::ops(kernels::Isa::scalar);
  REQUIRE(ops != nullptr);

  double expect = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) expect += a[i] * b[i];
  CHECK(ops->dot(a.data(), b.data(), a.size()) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("simd kernels match the scalar reference") {
  const auto* simd = kernels::ops(kernels::Isa::avx2);
  if (simd == nullptr) {
    MESSAGE("avx2 unavailable on this host; skipping equivalence checks");
    return;
  }
  const auto* scalar = kernels::ops(kernels::Isa::scalar);
  RngStream rng(23, 1);

  for (const std::size_t n : {0UL, 1UL, 2UL, 3UL, 4UL, 5UL, 7UL, 8UL, 9UL, 15UL, 16UL, 31UL,
                              64UL, 100UL, 1000UL, 1001UL}) {
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);

    const double d0 = scalar->dot(a.data(), b.data(), n);
    const double d1 = simd->dot(a.data(), b.data(), n);
    CHECK(std::fabs(d0 - d1) <= 1e-12 * (1.0 + std::fabs(d0)));

    const double s0 = scalar->sum_squares(a.data(), n);
    const double s1 = simd->sum_squares(a.data(), n);
    CHECK(std::fabs(s0 - s1) <= 1e-12 * (1.0 + std::fabs(s0)));

    std::vector<double> y0 = b;
    std::vector<double> y1 = b;
    scalar->axpy(0.77, a.data(), y0.data(), n);
    simd->axpy(0.77, a.data(), y1.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::fabs(y0[i] - y1[i]) <= 1e-13 * (1.0 + std::fabs(y0[i])));
  }
}

TEST_CASE("isa selection can be forced and restored") {
  const kernels::Isa before = kernels::active_isa();
  REQUIRE(kernels::force_isa(kernels::Isa::scalar));
  CHECK(kernels::active_isa() == kernels::Isa::scalar);
  const double v = kernels::dot(nullptr, nullptr, 0);
  CHECK(v == 0.0);
  if (kernels::ops(kernels::Isa::avx2) != nullptr) {
    REQUIRE(kernels::force_isa(kernels::Isa::avx2));
    CHECK(kernels::active_isa() == kernels::Isa::avx2);
  }
  REQUIRE(kernels::force_isa(before));
  CHECK(kernels::isa_name(kernels::Isa::scalar) == "scalar");
  CHECK(kernels::isa_name(kernels::Isa::avx2) == "avx2");
}
