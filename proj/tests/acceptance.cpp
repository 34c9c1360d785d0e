// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gpi/bounds.hpp"
#include "gpi/oracles.hpp"
#include "gpi/selftest.hpp"
#include "gpi/sweep.hpp"

namespace {

using namespace gpi;

const std::vector<double> kNegative = {-0.9, -0.5, -0.1};
const std::vector<double> kPositive = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.5};
const std::vector<double> kRho = {0.0, 0.25, -0.25, 0.5, -0.5, 0.75, -0.75, 0.95, -0.95};
const std::vector<double> kSigma = {0.5, 1.0, 2.0};

double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_s) {
    out.pass = false;
    out.detail += "; over the " + format_double(budget_s) + " s budget";
  }
  if (!out.pass) ++failures;
  std::printf("[%s] %d %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", id, name,
              out.detail.c_str(), secs);
  std::fflush(stdout);
}

template <class F>
void for_grid(const std::vector<double>& a1s, const std::vector<double>& a2s, F&& f) {
  for (double a1 : a1s)
    for (double a2 : a2s)
      for (double rho : kRho)
        for (double s1 : kSigma)
          for (double s2 : kSigma) f(MomentSpec{s1, s2, a1, a2, rho});
}

Outcome same_sign_sweep() {
  std::size_t points = 0, bad = 0;
  double min_slack = INFINITY;
  std::string first;
  auto check = [&](const MomentSpec& s) {
    ++points;
    const double g = gap(s);
    const double f = same_sign_bound(s).value;
    const double tol = 1e-9 * std::max(1.0, std::abs(g));
    min_slack = std::min(min_slack, (g - f) / std::max(1.0, std::abs(g)));
    if (!(g >= f - tol && f >= 0.0)) {
      if (bad++ == 0) first = format_double(s.alpha1) + "," + format_double(s.alpha2) + "," +
                              format_double(s.rho);
    }
  };
  for_grid(kNegative, kNegative, check);
  for_grid(kPositive, kPositive, check);
  Outcome o{bad == 0, std::to_string(points) + " points, " + std::to_string(bad) +
                          " violations, min scaled slack " + format_double(min_slack)};
  if (bad) o.detail += ", first at " + first;
  return o;
}

Outcome opposite_sign_sweep() {
  std::size_t points = 0, bad = 0, vacuous = 0, misflagged = 0;
  for_grid(kNegative, {0.5, 1.0, 2.0, 3.0, 4.5}, [&](const MomentSpec& s) {
    ++points;
    const BoundReport r = check_point(s, 1e-9);
    if (r.error || !r.opposite_sign) {
      ++bad;
      return;
    }
    const OppositeSignBounds& b = *r.opposite_sign;
    const double tol = 1e-9 * std::max(1.0, std::abs(r.gap));
    const bool expect_vacuous = s.alpha1 + s.alpha2 <= 1.0;
    if (b.finite_lower == expect_vacuous) ++misflagged;
    if (!b.finite_lower) ++vacuous;
    if (r.gap > b.upper + tol) ++bad;
    if (b.finite_lower && b.lower - tol > r.gap) ++bad;
  });
  return {bad == 0 && misflagged == 0,
          std::to_string(points) + " points, " + std::to_string(bad) + " violations, " +
              std::to_string(vacuous) + " vacuous-lower rows, " + std::to_string(misflagged) +
              " misflagged"};
}

Outcome corollary_values() {
  const double rho = 0.5;
  std::string detail;
  bool pass = true;
  const struct { double a1, a2, want; } cases[] = {
      {1, 1, 0.0795774715}, {1, 2, 0.1994711402}, {2, 2, 0.5}};
  for (const auto& c : cases) {
    const double v = same_sign_bound({1, 1, c.a1, c.a2, rho}).value;
    const bool ok = std::abs(v - c.want) <= 5e-11;
    pass = pass && ok;
    detail += "(" + format_double(c.a1) + "," + format_double(c.a2) + ")=" + format_double(v) + " ";
  }
  double worst = 0.0;
  for (int m = 3; m <= 8; ++m) {
    worst = std::max(worst, rel_err(bound_integer_with_one(m, 1, 1, rho),
                                    same_sign_bound({1, 1, double(m), 1, rho}).value));
    for (int n = 3; n <= 8; ++n) {
      worst = std::max(worst, rel_err(bound_integer_pair(m, n, 1, 1, rho),
                                      same_sign_bound({1, 1, double(m), double(n), rho}).value));
    }
  }
  pass = pass && worst <= 1e-13;
  return {pass, detail + "; integer forms worst rel err " + format_double(worst)};
}

Outcome exactness_witnesses() {
  double worst_same = 0.0, worst_opp = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double rho = 0.1 * k;
    for (double s1 : kSigma) {
      for (double s2 : kSigma) {
        const MomentSpec s{s1, s2, 2.0, 2.0, rho};
        const double want = 2.0 * s1 * s1 * s2 * s2 * rho * rho;
        worst_same = std::max({worst_same, rel_err(gap(s), want),
                               rel_err(same_sign_bound(s).value, want)});
        for (double a1 : {-0.9, -0.75, -0.5, -0.3, -0.1}) {
          const MomentSpec t{s1, s2, a1, 2.0, rho};
          const double g = gap(t);
          const OppositeSignBounds b = opposite_sign_bounds(t);
          worst_opp = std::max({worst_opp, rel_err(b.lower, g), rel_err(b.upper, g)});
        }
      }
    }
  }
  return {worst_same <= 1e-12 && worst_opp <= 1e-12,
          "exponent (2,2) worst rel err " + format_double(worst_same) +
              ", opposite-sign (a,2) worst rel err " + format_double(worst_opp)};
}

Outcome oracle_agreement() {
  // 30 points: every exponent class, including the -0.9 singularity.
  const struct { double a1, a2; } pairs[] = {
      {-0.9, -0.9}, {-0.9, -0.5}, {-0.9, 0.5}, {-0.9, 2.0}, {-0.9, 4.5}, {-0.5, 1.0},
      {-0.1, -0.1}, {-0.1, 3.0},  {0.5, 0.5},  {1.0, 1.0},  {1.5, 2.5},  {2.0, 4.5},
      {3.0, 0.5},   {4.5, 4.5},   {0.5, -0.1},
  };
  const double rhos[] = {0.5, -0.95};
  std::size_t index = 0, quad_ok = 0, eligible = 0, mc_ok = 0;
  double worst_quad = 0.0;
  std::string misses;
  for (const auto& p : pairs) {
    for (double rho : rhos) {
      const MomentSpec s{index % 3 == 0 ? 0.5 : 1.0, index % 3 == 2 ? 2.0 : 1.0, p.a1, p.a2, rho};
      const double exact = product_moment(s);
      const OracleEstimate q = quad_product_moment(s);
      const double dev = std::abs(q.value - exact);
      worst_quad = std::max(worst_quad, dev / exact);
      if (dev <= std::max(1e-6 * exact, 3.0 * q.error_estimate)) ++quad_ok;
      if (std::min(p.a1, p.a2) > -0.5) {
        ++eligible;
        const OracleEstimate m = mc_product_moment(s, {1'000'000, derive_seed(0, index)});
        if (std::abs(m.value - exact) <= 4.0 * m.error_estimate) {
          ++mc_ok;
        } else {
          misses += " #" + std::to_string(index);
        }
      }
      ++index;
    }
  }
  const bool pass = quad_ok == index && eligible - mc_ok <= 2;
  return {pass, "quadrature " + std::to_string(quad_ok) + "/" + std::to_string(index) +
                    " (worst rel dev " + format_double(worst_quad) + "), Monte Carlo " +
                    std::to_string(mc_ok) + "/" + std::to_string(eligible) +
                    " eligible within 4 SE" + (misses.empty() ? "" : ", missed" + misses)};
}

Outcome identity_suite() {
  const auto suites = run_selftest();
  bool pass = true;
  std::string detail;
  for (const SuiteResult& s : suites) {
    pass = pass && s.failed == 0;
    detail += s.name + " " + std::to_string(s.passed) + "/" + std::to_string(s.passed + s.failed) +
              " (worst " + format_double(s.worst_rel_err) + ") ";
  }
  return {pass, detail};
}

Outcome unit_correlation_limit() {
  SeriesOptions opts;
  opts.max_terms = 20'000'000;
  bool pass = true;
  std::string detail;
  for (const auto& [a1, a2] : {std::pair{1.0, 1.0}, std::pair{2.0, 3.0}, std::pair{-0.3, -0.2}}) {
    const double limit = product_moment_rho_one({1, 1, a1, a2, 1});
    double prev = INFINITY;
    bool monotone = true;
    double dev = 0.0;
    for (int k = 2; k <= 6; ++k) {
      dev = std::abs(product_moment({1, 1, a1, a2, 1.0 - std::pow(10.0, -k)}, opts) - limit);
      monotone = monotone && dev < prev;
      prev = dev;
    }
    const bool ok = monotone && dev < 1e-3;
    pass = pass && ok;
    detail += "(" + format_double(a1) + "," + format_double(a2) + ") final dev " +
              format_double(dev) + (monotone ? " monotone" : " NOT monotone") +
              (ok ? "" : " [miss]") + "; ";
  }
  const MomentSpec one{1, 1, 1, 1, 1};
  const double direct = product_moment_rho_one(one);
  const double gauss = std::exp(log_prefactor(one)) * hyp2f1_at_one(-0.5, -0.5, 0.5);
  pass = pass && direct == 1.0 && std::abs(gauss - 1.0) <= 4 * 0x1p-52;
  detail += "rho=1 moment at (1,1) = " + format_double(direct) + ", Gauss-sum route " +
            format_double(gauss);
  return {pass, detail};
}

}  // namespace

int main() {
  criterion(1, "same-sign lower bound over the grid", 10.0, same_sign_sweep);
  criterion(2, "opposite-sign two-sided bounds over the grid", 5.0, opposite_sign_sweep);
  criterion(3, "small-integer bound values and integer closed forms", 1.0, corollary_values);
  criterion(4, "exactness witnesses at exponent 2", 1.0, exactness_witnesses);
  criterion(5, "quadrature and Monte Carlo oracle agreement", 60.0, oracle_agreement);
  criterion(6, "special-function identity suite", 10.0, identity_suite);
  criterion(7, "continuity at unit correlation", 5.0, unit_correlation_limit);
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
