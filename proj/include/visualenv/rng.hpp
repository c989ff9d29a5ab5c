#pragma once

#include <cstdint>

#include "visualenv/noise.hpp"

namespace visualenv {

/// SplitMix64 (Steele, Lea & Flood 2014). Fully specified integer arithmetic,
/// so sequences are identical on every platform. Doubles are built from the
/// top 53 bits; no std:: distributions are involved.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return noise::mix64(state_);
  }

  /// Uniform in [0, 1).
  constexpr double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, n) by modulo reduction; n must be >= 1.
  constexpr std::uint64_t below(std::uint64_t n) { return next() % n; }

  /// Independent child stream; advances this generator by one draw.
  constexpr SplitMix64 split() { return SplitMix64(next() ^ 0x6a09e667f3bcc909ULL); }

 private:
  std::uint64_t state_;
};

/// Seed for the index-th episode of a run started from `base`.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return noise::mix64(base ^ noise::mix64(index + 0x243f6a8885a308d3ULL));
}

}  // namespace visualenv
