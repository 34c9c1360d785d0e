#pragma once

// Explicit lower bounds on the product-inequality gap for same-sign
// exponents, two-sided bounds for opposite-sign exponents, and the integer
// exponent closed forms they reduce to.

#include <optional>
#include <string>

#include "gpi/error.hpp"
#include "gpi/moments.hpp"

namespace gpi {

enum class SameSignCase {
  Main,            // both in (-1,0), both in (0,2], both > 2 (and a > 2 paired with 2)
  MixedMagnitude,  // one exponent > 2, the other in (0, 2)
};

struct SameSignBound {
  double value = 0.0;  // >= 0, zero iff rho == 0
  SameSignCase case_tag = SameSignCase::Main;
};

enum class OppositeSignCase {
  Moderate,  // positive exponent in (0, 2]
  Large,     // positive exponent > 2
};

struct OppositeSignBounds {
  double lower = 0.0;  // -inf when the Gauss sum at z = 1 diverges
  double upper = 0.0;  // <= 0
  bool finite_lower = true;
  bool swapped = false;  // inputs were given as (positive, negative)
  OppositeSignCase case_tag = OppositeSignCase::Moderate;
};

enum class SignPattern { SameSign, OppositeSign, Other };

/// Classifies the exponent pair. Zero exponents fall under Other.
SignPattern sign_pattern(const MomentSpec& spec);

/// f(sigma1, sigma2, alpha1, alpha2, rho) <= gap for same-sign exponents.
SameSignBound same_sign_bound(const MomentSpec& spec);

/// lower <= gap <= upper <= 0 for exponents of opposite sign.
OppositeSignBounds opposite_sign_bounds(const MomentSpec& spec);

/// Closed forms for alpha1, alpha2 in {1, 2}.
double bound_small_integer(int alpha1, int alpha2, double sigma1, double sigma2, double rho);

/// Closed form for alpha1 = m > 2 (integer), alpha2 = 1.
double bound_integer_with_one(int m, double sigma1, double sigma2, double rho);

/// Closed form for integer alpha1 = m > 2, alpha2 = n > 2.
double bound_integer_pair(int m, int n, double sigma1, double sigma2, double rho);

struct BoundReport {
  MomentSpec spec;
  SignPattern pattern = SignPattern::Other;
  double gap = 0.0;
  std::optional<SameSignBound> same_sign;
  std::optional<OppositeSignBounds> opposite_sign;
  bool satisfied = false;
  double slack = 0.0;  // distance to the nearest violated inequality
  std::optional<Error> error;  // set when the point could not be evaluated
};

/// Evaluates the gap and the applicable bound at one point. Inequalities are
/// checked with tolerance tol * max(1, |gap|). Computation errors are
/// reported through BoundReport::error rather than thrown.
BoundReport check_point(const MomentSpec& spec, double tol);

const char* to_string(SameSignCase c) noexcept;
const char* to_string(OppositeSignCase c) noexcept;

}  // namespace gpi
