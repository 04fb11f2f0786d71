#pragma once

#include <cstdint>
#include <random>

namespace preserver {

// splitmix64; decorrelates seed streams derived from a user seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform draw in [0, 1) from the engine's raw 64-bit output. Distribution
// classes are not pinned down by the standard, so sampling goes through
// these helpers to keep byte-identical behavior across toolchains.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Modulo bias is irrelevant at the scales used.
inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

}  // namespace preserver
