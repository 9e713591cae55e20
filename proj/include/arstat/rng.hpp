#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace arstat {

// Seeded noise source on top of mt19937_64. The uniform and normal transforms
// are spelled out here rather than taken from <random> distributions so that a
// given seed produces the same stream on every platform.
class NoiseGenerator {
 public:
  explicit NoiseGenerator(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes two engine draws per call.
  double standard_normal() {
    const double u1 = 1.0 - unit();  // (0, 1], keeps the log finite
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Mean-zero unit-variance uniform draw.
  double uniform_symmetric() { return std::sqrt(3.0) * (2.0 * unit() - 1.0); }

 private:
  std::mt19937_64 engine_;
};

// Splitting rule for replication batches: replication r of a base seed runs on
// seed base + r.
inline std::uint64_t replication_seed(std::uint64_t base, int replication) {
  return base + static_cast<std::uint64_t>(replication);
}

}  // namespace arstat
