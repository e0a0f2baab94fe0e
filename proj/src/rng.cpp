#include "aroc/rng.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace aroc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr unsigned __int128 kPcgMultiplier =
    (static_cast<unsigned __int128>(0x2360ED051FC65DA4ull) << 64) | 0x4385DF649FCCF645ull;

std::uint64_t splitmix64(std::uint64_t& s) noexcept {
  s += kGolden;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t rotr64(std::uint64_t v, unsigned rot) noexcept {
  return (v >> rot) | (v << ((-rot) & 63u));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t s = seed;
  const unsigned __int128 init_state =
      (static_cast<unsigned __int128>(splitmix64(s)) << 64) | splitmix64(s);
  std::uint64_t t = stream_id;
  const unsigned __int128 init_seq =
      (static_cast<unsigned __int128>(splitmix64(t)) << 64) | splitmix64(t);

  state_ = 0;
  inc_ = (init_seq << 1) | 1;
  step();
  state_ += init_state;
  step();
}

void RngStream::step() noexcept { state_ = state_ * kPcgMultiplier + inc_; }

std::uint64_t RngStream::next_u64() noexcept {
  step();
  const auto rot = static_cast<unsigned>(state_ >> 122);
  const auto xored = static_cast<std::uint64_t>((state_ >> 64) ^ state_);
  return rotr64(xored, rot);
}

double RngStream::next_double() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_open() noexcept {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t bound) noexcept {
  // Lemire's multiply-shift with rejection.
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (-bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RngStream::next_normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_open();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

std::uint64_t derive_stream_id(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x8BADF00DDEADBEEFull;
  for (std::uint64_t part : parts) {
    h ^= part + kGolden + (h << 12) + (h >> 4);
    std::uint64_t s = h;
    h = splitmix64(s);
  }
  return h;
}

void shuffle_indices(std::vector<std::size_t>& idx, RngStream& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    const std::size_t j = rng.next_below(i);
    std::swap(idx[i - 1], idx[j]);
  }
}

std::vector<std::size_t> shuffled_indices(std::size_t n, RngStream& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  shuffle_indices(idx, rng);
  return idx;
}

}  // namespace aroc
