#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace aroc {

/// Deterministic random stream keyed by (seed, stream_id).
///
/// Backed by pcg64 (xsl-rr-128/64, setseq): each stream_id selects an odd
/// 128-bit increment, so streams with the same seed are statistically
/// independent by construction and reproduce bit-identically across runs
/// and platforms. Streams are single-owner; use distinct stream_ids for
/// concurrent work.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1), 53-bit resolution.
  double next_double() noexcept;

  /// Uniform on (0, 1].
  double next_open() noexcept;

  /// Uniform integer in [0, bound); bound must be nonzero. Unbiased.
  std::uint64_t next_below(std::uint64_t bound) noexcept;

  /// Standard normal draw (Box-Muller; second variate cached).
  double next_normal() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

 private:
  void step() noexcept;

  unsigned __int128 state_;
  unsigned __int128 inc_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Collapses an id path (replicate index, purpose tag, ...) into one
/// stream_id. Order-sensitive and avalanching, so nearby tuples land far
/// apart.
std::uint64_t derive_stream_id(std::initializer_list<std::uint64_t> parts);

/// Fisher-Yates shuffle of an index vector.
void shuffle_indices(std::vector<std::size_t>& idx, RngStream& rng);

/// 0..n-1 shuffled.
std::vector<std::size_t> shuffled_indices(std::size_t n, RngStream& rng);

}  // namespace aroc
