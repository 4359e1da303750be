#pragma once

#include <cstdint>

namespace jetforge {

/// Serial is the reference path; Parallel runs the same per-item kernel
/// under OpenMP and merges results in item order, so both produce
/// identical output.
enum class Exec { Serial, Parallel };

/// splitmix64; a portable, seedable stream for sample placement.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace jetforge
