#pragma once

#include <array>
#include <cstdint>

#include "bflights/common.hpp"

namespace bflights {

struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

// xoshiro256** seeded through splitmix64. Self-contained so that streams are
// reproducible byte-for-byte independent of platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& w : s_) w = sm.next();
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

  // Uniform in [0,1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, n). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = -n % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

// Decorrelated per-stream seed derived from a master seed.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 sm{master ^ (0x9E3779B97F4A7C15ull * (stream + 0x632BE59BD9B4E019ull))};
  sm.next();
  return sm.next();
}

// Uniform direction on the unit circle / sphere.
inline Point random_unit(Rng& rng, int dim) {
  if (dim == 2) {
    const double a = 6.283185307179586476925286766559 * rng.uniform01();
    return {std::cos(a), std::sin(a), 0.0};
  }
  const double zc = 1.0 - 2.0 * rng.uniform01();
  const double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
  const double a = 6.283185307179586476925286766559 * rng.uniform01();
  return {r * std::cos(a), r * std::sin(a), zc};
}

}  // namespace bflights
