#pragma once

// Absolute moments of centered Gaussian scalars and pairs, and the product
// inequality gap E|X1|^a1 |X2|^a2 - E|X1|^a1 E|X2|^a2.

#include "gpi/specfun.hpp"

namespace gpi {

struct MomentSpec {
  double sigma1 = 1.0;  // standard deviation of X1
  double sigma2 = 1.0;  // standard deviation of X2
  double alpha1 = 1.0;  // exponent on |X1|, > -1
  double alpha2 = 1.0;  // exponent on |X2|, > -1
  double rho = 0.0;     // correlation, in [-1, 1]
};

/// Throws a domain error unless sigma's > 0, alpha's > -1 and |rho| <= 1.
void validate(const MomentSpec& spec);

/// E|X|^alpha for X ~ N(0, sigma^2).
double abs_moment_1d(double sigma, double alpha);

/// log of 2^((a1+a2)/2) s1^a1 s2^a2 Gamma((a1+1)/2) Gamma((a2+1)/2) / pi,
/// the common prefactor of the product moment and the gap.
double log_prefactor(const MomentSpec& spec);

/// E|X1|^a1 * E|X2|^a2.
double product_of_marginals(const MomentSpec& spec);

/// E|X1|^a1 |X2|^a2 for |rho| < 1 via 2F1(-a1/2, -a2/2; 1/2; rho^2).
double product_moment(const MomentSpec& spec, const SeriesOptions& opts = {});

/// E|X1|^a1 |X2|^a2 for |rho| = 1 (requires sigma1 == sigma2). Returns +inf
/// when a1 + a2 <= -1, where the moment is not integrable.
double product_moment_rho_one(const MomentSpec& spec);

/// Gap for |rho| <= 1. Computed as prefactor * (F - 1) for |rho| < 1.
double gap(const MomentSpec& spec, const SeriesOptions& opts = {});

/// Gap through (rho^2 a1 a2 / 2) 3F2(1-a1/2, 1-a2/2, 1; 3/2, 2; rho^2).
double gap_via_3f2(const MomentSpec& spec, const SeriesOptions& opts = {});

}  // namespace gpi
