#pragma once

// Independent numerical estimates of Gaussian absolute moments. Nothing here
// touches the hypergeometric code; the density is integrated or sampled
// directly.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "gpi/moments.hpp"

namespace gpi {

struct QuadratureConfig {
  double tail_radius_sigmas = 12.0;
  double target_rel_err = 1e-9;
  std::size_t max_subdivisions = 1u << 15;
};

struct McConfig {
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 0;
};

enum class OracleMethod { Quadrature, MonteCarlo };

struct OracleEstimate {
  double value = 0.0;
  double error_estimate = 0.0;  // quadrature error bound or one standard error
  OracleMethod method = OracleMethod::Quadrature;
};

/// E|X|^alpha by quadrature of the half-normal density. With `substitute`
/// the integral is taken in u = x^(1+alpha), which is regular at the origin.
OracleEstimate quad_abs_moment_1d(double sigma, double alpha, const QuadratureConfig& cfg = {},
                                  bool substitute = true);

/// E|X1|^a1 |X2|^a2 by an iterated integral over the first quadrant, with
/// both axes mapped by u = x^(1+a). Requires |rho| < 1. The error estimate
/// includes a bound on the mass cut off beyond the tail radius.
OracleEstimate quad_product_moment(const MomentSpec& spec, const QuadratureConfig& cfg = {});

/// Stateless SplitMix64-style stream: output i is a pure function of
/// (seed, i), so any sample can be regenerated independently.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t bits(std::uint64_t counter) const;
  /// Uniform on the open interval (0, 1).
  double uniform(std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
};

/// Per-point seed derived from a master seed and a grid index.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Correlated pair number `index` for the given spec:
/// X1 = s1 Z1, X2 = s2 (rho Z1 + sqrt(1 - rho^2) Z2), Z's from Box-Muller.
class BivariateSampler {
 public:
  BivariateSampler(const MomentSpec& spec, std::uint64_t seed);
  std::pair<double, double> operator()(std::uint64_t index) const;

 private:
  MomentSpec spec_;
  CounterRng rng_;
  double cond_scale_;
};

std::vector<std::pair<double, double>> sample_bivariate(const MomentSpec& spec, std::size_t n,
                                                        std::uint64_t seed);

/// Sample mean of |x1|^a1 |x2|^a2 with its standard error. Refuses
/// (ErrorCode::InfiniteVariance) when min(a1, a2) <= -1/2.
OracleEstimate mc_product_moment(const MomentSpec& spec, const McConfig& cfg);

}  // namespace gpi
