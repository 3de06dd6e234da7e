#pragma once

#include <cstdint>
#include <random>

#include "obtk/point.hpp"

namespace obtk {

/// Seeded generator shared by every estimator. Streams for independent
/// sub-tasks are split off with derive() so that results do not depend on
/// evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return unit_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() { return normal_(engine_); }

  /// Uniform direction on the unit circle via a normalized Gaussian vector.
  Point direction() {
    for (;;) {
      const double gx = normal();
      const double gy = normal();
      const double r = std::hypot(gx, gy);
      if (r > 1e-300) return {gx / r, gy / r};
    }
  }

  std::uint64_t next_u64() { return engine_(); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Deterministic child seed for a named sub-stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace obtk
