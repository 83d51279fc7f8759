#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace leasematch {

// Deterministic random stream for Monte Carlo drops.
//
// Wraps std::mt19937_64, whose output sequence is fully specified by the
// standard, and derives floating point draws from raw engine words rather
// than std::*_distribution (their mapping is implementation-defined, which
// would break cross-platform reproducibility of results files).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Splittable substream for drop `index` of a run seeded by `master_seed`.
  // Both words pass through a splitmix64 finalizer, so adjacent indices map
  // to unrelated engine seeds.
  static RandomStream substream(std::uint64_t master_seed, std::uint64_t index) {
    return RandomStream(mix(mix(master_seed) ^ (0x9e3779b97f4a7c15ULL * (index + 1))));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Exponential by inversion; returns exactly 0 when the uniform draw is 0.
  double exponential(double mean) { return -mean * std::log1p(-uniform()); }

  // Uniform integer in [0, bound), bound >= 1. Mask-and-reject keeps the
  // draw unbiased without nonstandard wide arithmetic.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      const std::uint64_t draw = next_u64() & mask;
      if (draw < bound) return draw;
    }
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace leasematch
