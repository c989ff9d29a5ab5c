#pragma once

#include <cstdint>

namespace visualenv::noise {

/// 64-bit finalizer from SplitMix64 (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Hash of an integer lattice point under a seed.
constexpr std::uint64_t lattice_hash(std::int64_t ix, std::int64_t iy, std::uint64_t seed) {
  std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ static_cast<std::uint64_t>(ix));
  h = mix64(h ^ (static_cast<std::uint64_t>(iy) * 0xd6e8feb86659fd93ULL));
  return h;
}

/// Uniform value in [0, 1] from the top 53 bits of a lattice hash.
constexpr double lattice_value(std::int64_t ix, std::int64_t iy, std::uint64_t seed) {
  return static_cast<double>(lattice_hash(ix, iy, seed) >> 11) * 0x1.0p-53;
}

/// Bilinearly interpolated value noise in [0, 1]; lattice spacing is 1.
double value_noise(double x, double y, std::uint64_t seed);

}  // namespace visualenv::noise
