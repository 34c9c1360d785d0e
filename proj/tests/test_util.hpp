#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "gpi/oracles.hpp"

namespace gpi::testing {

inline double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Deterministic draws for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(n_++); }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(rng_.bits(n_++) % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double exponent() {
    // Mix of singular, fractional and integer exponents.
    switch (integer(0, 3)) {
      case 0: return uniform(-0.95, -0.05);
      case 1: return uniform(0.05, 2.0);
      case 2: return uniform(2.0, 6.0);
      default: return static_cast<double>(integer(1, 6));
    }
  }

 private:
  CounterRng rng_;
  std::uint64_t n_ = 0;
};

}  // namespace gpi::testing
