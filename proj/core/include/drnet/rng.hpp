#pragma once

#include <cmath>
#include <cstdint>

namespace drnet {

/// SplitMix64; used to expand seeds into generator state.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

/// xoshiro256** with SplitMix64 seeding. Replicate streams are derived
/// deterministically from (master seed, stream index), so ensemble results
/// do not depend on how replicates are assigned to workers.
class Xoshiro256 {
public:
  explicit Xoshiro256(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& w : s_) w = sm.next();
  }

  static Xoshiro256 stream(std::uint64_t master, std::uint64_t index) {
    SplitMix64 sm{master};
    const std::uint64_t a = sm.next();
    const std::uint64_t b = sm.next();
    return Xoshiro256(a ^ (b + index * 0x9E3779B97F4A7C15ULL));
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe to take logarithms of.
  double uniform_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

/// Poisson sampling: Knuth's product-of-uniforms below mean 30, Hoermann's
/// PTRS transformed rejection above.
std::int64_t poisson_sample(double mean, Xoshiro256& rng);

}  // namespace drnet
