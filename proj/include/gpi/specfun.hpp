#pragma once

// Gamma-family functions and Gauss / generalized hypergeometric series on
// the real interval z in [0, 1].

#include <cstddef>
#include <cstdint>

namespace gpi {

struct HypParams {
  double a;
  double b;
  double c;
  double z;
};

struct Hyp3F2Params {
  double a1;
  double a2;
  double a3;
  double b1;
  double b2;
  double z;
};

struct SeriesResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  double truncation_error_estimate = 0.0;
  bool terminated = false;  // a numerator Pochhammer factor reached zero
};

struct SeriesOptions {
  double rel_tol = 1e-15;
  std::size_t max_terms = 1'000'000;
};

/// Gamma function for x > 0. Returns +inf once the result is not
/// representable (x > ~171.62).
double gamma_fn(double x);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Rising factorial (alpha)_n, with (alpha)_0 = 1 for every alpha.
double pochhammer(double alpha, unsigned n);

/// n!! for n >= -1, with (-1)!! = 0!! = 1. Throws on overflow (n > 33).
std::uint64_t double_factorial(int n);

/// Partial sums of 2F1(a, b; c; z) for z in [0, 1).
SeriesResult hyp2f1(const HypParams& p, const SeriesOptions& opts = {});

/// 2F1(a, b; c; z) - 1, summed from the first non-constant term so the
/// difference keeps full relative accuracy as z -> 0.
SeriesResult hyp2f1_minus_one(const HypParams& p, const SeriesOptions& opts = {});

/// Gauss summation 2F1(a, b; c; 1). Finite sum when the series terminates;
/// otherwise requires c - a - b > 0 and throws ErrorCode::Divergence.
double hyp2f1_at_one(double a, double b, double c);

/// d/dz 2F1(a, b; c; z) = (ab/c) 2F1(a+1, b+1; c+1; z).
double hyp2f1_derivative(const HypParams& p, const SeriesOptions& opts = {});

/// Right-hand side of the Euler transformation
/// (1-z)^(c-a-b) 2F1(c-a, c-b; c; z).
double euler_transform(const HypParams& p, const SeriesOptions& opts = {});

/// Partial sums of 3F2(a1, a2, a3; b1, b2; z) for z in [0, 1]; z = 1 needs
/// b1 + b2 - a1 - a2 - a3 > 0 or a terminating numerator.
SeriesResult hyp3f2(const Hyp3F2Params& p, const SeriesOptions& opts = {});

/// 3F2 through its Euler-type integral over the inner 2F1:
///   Gamma(b2) / (Gamma(a3) Gamma(b2-a3)) *
///   int_0^1 t^(a3-1) (1-t)^(b2-a3-1) 2F1(a1, a2; b1; z t) dt.
/// Requires b2 > a3 > 0 and z in [0, 1).
double hyp_integral_rep(const Hyp3F2Params& p, double rel_tol = 1e-9);

}  // namespace gpi
