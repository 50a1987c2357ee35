#pragma once

#include <cstdint>
#include <random>

namespace mtnav {

/// Portable seeded generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; uniform and normal variates are derived
/// here rather than through <random> distributions, whose algorithms vary
/// between standard library vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (one variate per call, two engine draws).
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_;
};

}  // namespace mtnav
