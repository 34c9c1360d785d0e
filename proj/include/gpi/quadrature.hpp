#pragma once

// Globally adaptive Gauss-Kronrod (G7/K15) quadrature on a finite interval.
// The panel error is the raw |K15 - G7| difference, which overstates the true
// error for smooth integrands and is therefore safe to report as a bound.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace gpi::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t subdivisions = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod(F& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(mid);
  double kronrod = fc * kKronrod[7];
  double gauss = fc * kGauss[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double sum = f(mid - dx) + f(mid + dx);
    kronrod += kKronrod[i] * sum;
    if (i % 2 == 1) gauss += kGauss[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Integrates f over [lo, hi] until the summed panel error drops below
/// max(abs_tol, rel_tol * |value|) or max_subdivisions panels have been split.
template <class F>
Result integrate(F&& f, double lo, double hi, double rel_tol, double abs_tol = 0.0,
                 std::size_t max_subdivisions = 1u << 15) {
  Result out;
  if (!(hi > lo)) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Panel> panels;
  detail::Panel first = detail::gauss_kronrod(f, lo, hi);
  double value = first.value;
  double error = first.error;
  panels.push(first);

  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (out.subdivisions >= max_subdivisions) {
      out.value = value;
      out.error = error;
      return out;
    }
    detail::Panel worst = panels.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;  // interval at machine resolution
    panels.pop();
    detail::Panel left = detail::gauss_kronrod(f, worst.lo, mid);
    detail::Panel right = detail::gauss_kronrod(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++out.subdivisions;
  }

  // Re-sum from the panels to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  out.value = value;
  out.error = error;
  out.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
  return out;
}

}  // namespace gpi::quad
