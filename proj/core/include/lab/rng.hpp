#pragma once

#include <complex>
#include <cstdint>

namespace lab {

/// Counter-based random stream. Each (master_seed, stream_id) pair names an
/// independent stream; the i-th output is a hash of (derived key, i), so
/// streams can be handed to worker threads without any shared state.
///
/// Normal variates use the Box-Muller transform (two uniforms per pair, the
/// second value is cached), so sequences are reproducible bit-for-bit per
/// seed across platforms.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Derived stream with an id hashed from (this stream's id, child_id).
  /// Used to hand independent randomness to per-trial workers.
  RngStream substream(std::uint64_t child_id) const;

  std::uint64_t next_u64();

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform();

  /// Uniform on {0, 1, ..., bound-1}, bound >= 1. Unbiased (rejection).
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Standard normal N(0, 1).
  double normal();

  /// Standard complex normal: E z = 0, E|z|^2 = 1 (real and imaginary parts
  /// independent N(0, 1/2)).
  std::complex<double> normal_complex();

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool have_cached_normal_ = false;
};

}  // namespace lab
