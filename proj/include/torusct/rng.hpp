#pragma once

#include <cmath>
#include <cstdint>

#include "torusct/types.hpp"

namespace torusct {

// splitmix64. Chosen over <random> engines because every draw here must be
// bit-reproducible across platforms and standard library versions.
struct SplitMix64 {
  std::uint64_t state = 0;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform on (0,1); never returns 0, so log() below is safe
  double uniform01() { return double(next() >> 11) * 0x1.0p-53 + 0x1.0p-54; }
  // Box-Muller, fully specified (std::normal_distribution is implementation-defined)
  double gaussian() {
    double u1 = uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }
};

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
  return g.next();
}

// Independent stream addressed by (seed, i, j); draws depend only on the
// address, never on evaluation order.
inline SplitMix64 stream_for(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  return SplitMix64(mix_key(mix_key(seed, i), j));
}

}  // namespace torusct
