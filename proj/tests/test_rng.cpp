#include <doctest.h>

#include <cmath>
#include <vector>

#include "aroc/rng.hpp"

using namespace aroc;

TEST_CASE("equal (seed, stream_id) reproduces the first million draws") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int i = 0; i < 1'000'000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids decorrelate") {
  RngStream a(42, 1);
  RngStream b(42, 2);
  int equal = 0;
  for (int i = 0; i < 4096; ++i)
    if (a.next_u64() == b.next_u64()) ++equal;
  CHECK(equal == 0);
}

TEST_CASE("uniform and normal moments are sane") {
  RngStream rng(5, 5);
  const int n = 100'000;
  double sum_u = 0.0;
  double sum_z = 0.0;
  double sum_z2 = 0.0;
  for (int i = 0; i < n; ++i) sum_u += rng.next_double();
  for (int i = 0; i < n; ++i) {
    const double z = rng.next_normal();
    sum_z += z;
    sum_z2 += z * z;
  }
  const double mean_u = sum_u / n;
  // 4 sigma bands: se(uniform mean) = 1/sqrt(12 n), se(normal mean) = 1/sqrt(n).
  CHECK(std::fabs(mean_u - 0.5) < 4.0 / std::sqrt(12.0 * n));
  CHECK(std::fabs(sum_z / n) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(sum_z2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("next_below stays in range and covers small supports") {
  RngStream rng(9, 0);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 20'000; ++i) {
    const std::uint64_t v = rng.next_below(5);
    REQUIRE(v < 5);
    ++counts[v];
  }
  for (const int c : counts) CHECK(c > 3'400);  // expectation 4000
}

TEST_CASE("open-interval draws avoid zero") {
  RngStream rng(3, 3);
  for (int i = 0; i < 100'000; ++i) {
    const double u = rng.next_open();
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
  }
}

TEST_CASE("derive_stream_id is order sensitive") {
  CHECK(derive_stream_id({1, 2}) != derive_stream_id({2, 1}));
  CHECK(derive_stream_id({1, 2}) == derive_stream_id({1, 2}));
  CHECK(derive_stream_id({0}) != derive_stream_id({0, 0}));
}

TEST_CASE("shuffles are deterministic per stream") {
  RngStream a(77, 8);
  RngStream b(77, 8);
  const auto pa = shuffled_indices(257, a);
  const auto pb = shuffled_indices(257, b);
  CHECK(pa == pb);
  std::vector<bool> seen(257, false);
  for (const std::size_t idx : pa) {
    REQUIRE(idx < 257);
    REQUIRE(!seen[idx]);
    seen[idx] = true;
  }
}
