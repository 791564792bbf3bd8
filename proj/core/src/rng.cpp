#include "lab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lab {
namespace {

// Finalizer from MurmurHash3 / SplitMix64.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
  // Two mixing rounds decorrelate the (seed, stream) lattice.
  key_ = mix64(mix64(master_seed) ^ mix64(stream_id * 0xda942042e4dd58b5ULL + 1));
}

RngStream RngStream::substream(std::uint64_t child_id) const {
  return RngStream(master_seed_,
                   mix64(stream_id_ ^ mix64(child_id + 0x632be59bd9b4e019ULL)));
}

std::uint64_t RngStream::next_u64() {
  return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t u;
  do {
    u = next_u64();
  } while (u >= limit);
  return u % bound;
}

double RngStream::normal() {
  if (have_cached_normal_) {
    have_cached_normal_ = false;
    return cached_normal_;
  }
  // Box-Muller; u1 bounded away from 0 so log is finite.
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  have_cached_normal_ = true;
  return radius * std::cos(angle);
}

std::complex<double> RngStream::normal_complex() {
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  const double re = normal() * inv_sqrt2;
  const double im = normal() * inv_sqrt2;
  return {re, im};
}

}  // namespace lab
