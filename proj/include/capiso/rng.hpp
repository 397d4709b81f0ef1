#pragma once

#include <cmath>
#include <cstdint>

namespace capiso {

// Counter-based splitmix64 stream: value i of stream `seed` depends only on
// (seed, i), so ensembles are reproducible regardless of evaluation order.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state(mix(seed + 0x9e3779b97f4a7c15ULL * (stream + 1))) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }
  // Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

}  // namespace capiso
