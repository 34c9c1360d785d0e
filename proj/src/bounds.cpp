#include "gpi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace gpi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

// log of 2^((a1+a2)/2) |a1 a2| s1^a1 s2^a2, shared by every bound.
double log_common(const MomentSpec& s) {
  return 0.5 * (s.alpha1 + s.alpha2) * kLn2 + std::log(std::abs(s.alpha1 * s.alpha2)) +
         s.alpha1 * std::log(s.sigma1) + s.alpha2 * std::log(s.sigma2);
}

// |a1 a2| 2^((a1+a2)/2) s1^a1 s2^a2 Gamma((a1+1)/2) Gamma((a2+1)/2) / (2 pi),
// without the rho^2 factor.
double main_coefficient(const MomentSpec& s) {
  return std::exp(log_common(s) + log_gamma(0.5 * (s.alpha1 + 1.0)) +
                  log_gamma(0.5 * (s.alpha2 + 1.0)) - std::log(2.0 * kPi));
}

double positive_zero(double x) { return x == 0.0 ? 0.0 : x; }

void require_rho(double rho) {
  if (!(std::abs(rho) <= 1.0)) domain_error("rho must lie in [-1, 1]");
}

void require_sigmas(double s1, double s2) {
  if (!(s1 > 0.0) || !(s2 > 0.0)) domain_error("sigma1 and sigma2 must be positive");
}

}  // namespace

const char* to_string(SameSignCase c) noexcept {
  return c == SameSignCase::Main ? "same_sign_main" : "mixed_magnitude";
}

const char* to_string(OppositeSignCase c) noexcept {
  return c == OppositeSignCase::Moderate ? "opposite_moderate" : "opposite_large";
}

SignPattern sign_pattern(const MomentSpec& spec) {
  const double a1 = spec.alpha1;
  const double a2 = spec.alpha2;
  if ((a1 < 0.0 && a2 < 0.0) || (a1 > 0.0 && a2 > 0.0)) return SignPattern::SameSign;
  if ((a1 < 0.0 && a2 > 0.0) || (a1 > 0.0 && a2 < 0.0)) return SignPattern::OppositeSign;
  return SignPattern::Other;
}

SameSignBound same_sign_bound(const MomentSpec& spec) {
  validate(spec);
  if (sign_pattern(spec) != SignPattern::SameSign) {
    domain_error("same_sign_bound: exponents must both lie in (-1,0) or both in (0,inf)");
  }
  const double a1 = spec.alpha1;
  const double a2 = spec.alpha2;
  const double rho2 = spec.rho * spec.rho;
  const bool mixed = (a1 > 2.0 && a2 > 0.0 && a2 < 2.0) || (a2 > 2.0 && a1 > 0.0 && a1 < 2.0);
  if (!mixed) return {main_coefficient(spec) * rho2, SameSignCase::Main};

  const double log_c = log_common(spec) + log_gamma(0.5 * (a1 + a2 - 1.0)) -
                       std::log(4.0 * std::sqrt(kPi));
  return {std::exp(log_c) * rho2, SameSignCase::MixedMagnitude};
}

OppositeSignBounds opposite_sign_bounds(const MomentSpec& spec) {
  validate(spec);
  if (sign_pattern(spec) != SignPattern::OppositeSign) {
    domain_error("opposite_sign_bounds: exponents must have opposite signs");
  }
  OppositeSignBounds out;
  MomentSpec s = spec;
  if (s.alpha1 > 0.0) {
    std::swap(s.alpha1, s.alpha2);
    std::swap(s.sigma1, s.sigma2);
    out.swapped = true;
  }
  const double c = positive_zero(-main_coefficient(s) * s.rho * s.rho);

  double g = std::numeric_limits<double>::infinity();
  try {
    g = hyp2f1_at_one(1.0 - 0.5 * s.alpha1, 1.0 - 0.5 * s.alpha2, 1.5);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Divergence) throw;
    out.finite_lower = false;
  }

  if (s.alpha2 <= 2.0) {
    out.case_tag = OppositeSignCase::Moderate;
    out.lower = out.finite_lower ? positive_zero(c * g) : -std::numeric_limits<double>::infinity();
    out.upper = c;
  } else {
    out.case_tag = OppositeSignCase::Large;
    out.lower = c;
    out.upper = positive_zero(std::min(c * g, 0.0));
  }
  return out;
}

double bound_small_integer(int alpha1, int alpha2, double sigma1, double sigma2, double rho) {
  require_sigmas(sigma1, sigma2);
  require_rho(rho);
  const double rho2 = rho * rho;
  if (alpha1 == 1 && alpha2 == 1) return sigma1 * sigma2 * rho2 / kPi;
  if (alpha1 == 1 && alpha2 == 2) {
    return std::numbers::sqrt2 * sigma1 * sigma2 * sigma2 * rho2 / std::sqrt(kPi);
  }
  if (alpha1 == 2 && alpha2 == 1) {
    return std::numbers::sqrt2 * sigma1 * sigma1 * sigma2 * rho2 / std::sqrt(kPi);
  }
  if (alpha1 == 2 && alpha2 == 2) return 2.0 * sigma1 * sigma1 * sigma2 * sigma2 * rho2;
  domain_error("bound_small_integer: exponents must lie in {1, 2}");
}

double bound_integer_with_one(int m, double sigma1, double sigma2, double rho) {
  if (m <= 2) domain_error("bound_integer_with_one: m must be an integer > 2");
  require_sigmas(sigma1, sigma2);
  require_rho(rho);
  const double num = static_cast<double>(double_factorial(m - 2)) * m *
                     std::pow(sigma1, m) * sigma2 * rho * rho;
  return m % 2 == 0 ? num / std::sqrt(2.0 * kPi) : num / 2.0;
}

double bound_integer_pair(int m, int n, double sigma1, double sigma2, double rho) {
  if (m <= 2 || n <= 2) domain_error("bound_integer_pair: m and n must be integers > 2");
  require_sigmas(sigma1, sigma2);
  require_rho(rho);
  const double num = static_cast<double>(double_factorial(m - 1)) *
                     static_cast<double>(double_factorial(n - 1)) * m * n *
                     std::pow(sigma1, m) * std::pow(sigma2, n) * rho * rho;
  const bool m_even = m % 2 == 0;
  const bool n_even = n % 2 == 0;
  if (m_even && n_even) return num / 2.0;
  if (!m_even && !n_even) return num / kPi;
  return num / std::sqrt(2.0 * kPi);
}

BoundReport check_point(const MomentSpec& spec, double tol) {
  BoundReport r;
  r.spec = spec;
  try {
    validate(spec);
    r.pattern = sign_pattern(spec);
    if (r.pattern == SignPattern::Other) {
      domain_error("no product inequality applies to a zero exponent");
    }
    r.gap = gap(spec);
    const double t = tol * std::max(1.0, std::abs(r.gap));
    if (r.pattern == SignPattern::SameSign) {
      r.same_sign = same_sign_bound(spec);
      r.slack = r.gap - r.same_sign->value;
      r.satisfied = r.slack >= -t;
    } else {
      r.opposite_sign = opposite_sign_bounds(spec);
      const OppositeSignBounds& b = *r.opposite_sign;
      const double above = b.upper - r.gap;
      if (b.finite_lower) {
        const double below = r.gap - b.lower;
        r.slack = std::min(below, above);
        r.satisfied = below >= -t && above >= -t;
      } else {
        r.slack = above;
        r.satisfied = above >= -t;
      }
    }
  } catch (const Error& e) {
    r.error = e;
    r.satisfied = false;
  }
  return r;
}

}  // namespace gpi
