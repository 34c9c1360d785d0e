#include "gpi/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "gpi/bounds.hpp"
#include "gpi/oracles.hpp"
#include "gpi/specfun.hpp"
#include "gpi/sweep.hpp"

namespace gpi {

namespace {

double rel_err(double got, double want) {
  const double diff = std::abs(got - want);
  if (diff == 0.0) return 0.0;
  return diff / std::max(std::abs(want), 1e-300);
}

class Suite {
 public:
  Suite(std::string name, double tol) {
    r_.name = std::move(name);
    r_.tolerance = tol;
  }

  void check(double got, double want, const std::string& label) {
    const double e = rel_err(got, want);
    r_.worst_rel_err = std::max(r_.worst_rel_err, std::isnan(e) ? INFINITY : e);
    if (e <= r_.tolerance) {
      ++r_.passed;
    } else {
      fail(label + ": got " + format_double(got) + ", want " + format_double(want));
    }
  }

  void run(const std::string& label, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      fail(label + ": " + e.what());
    }
  }

  SuiteResult result() const { return r_; }

 private:
  void fail(const std::string& what) {
    ++r_.failed;
    if (r_.first_failure.empty()) r_.first_failure = what;
  }

  SuiteResult r_;
};

std::string point(std::initializer_list<double> xs) {
  std::string s = "(";
  for (double x : xs) {
    if (s.size() > 1) s += ", ";
    s += format_double(x);
  }
  return s + ")";
}

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(next_++); }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

const std::vector<double> kNegative = {-0.9, -0.5, -0.1};
const std::vector<double> kPositive = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.5};
const std::vector<double> kRho = {0.0, 0.25, -0.25, 0.5, -0.5, 0.75, -0.75, 0.95, -0.95};
const std::vector<double> kSigma = {0.5, 1.0, 2.0};

SuiteResult euler_suite(std::uint64_t seed) {
  Suite s("euler", 1e-10);
  Draws d(seed);
  for (int i = 0; i < 200; ++i) {
    const HypParams p{d.uniform(-3.0, 3.0), d.uniform(-3.0, 3.0), d.uniform(0.5, 5.0),
                      d.uniform(0.0, 0.9)};
    const std::string label = point({p.a, p.b, p.c, p.z});
    s.run(label, [&] { s.check(euler_transform(p), hyp2f1(p).value, label); });
  }
  // The transformed pair that signs the gap derivative.
  for (double alpha : {-0.9, -0.5, 0.5, 1.0, 2.5, 4.5}) {
    for (double z : {0.1, 0.5, 0.9}) {
      const HypParams p{2.0 - 0.5 * alpha, 2.0 - 0.5 * alpha, 2.5, z};
      const std::string label = point({p.a, p.b, p.c, p.z});
      s.run(label, [&] { s.check(euler_transform(p), hyp2f1(p).value, label); });
    }
  }
  return s.result();
}

SuiteResult gauss_suite(std::uint64_t seed) {
  // Near z = 1 the series differs from the Gauss sum by O(1 - z) once
  // c - a - b > 1, so the excess is kept at 2 or more.
  Suite s("gauss_summation", 1e-4);
  Draws d(seed);
  const double z = 1.0 - 1e-6;
  for (int i = 0; i < 20; ++i) {
    const double a = d.uniform(-3.0, 3.0);
    const double b = d.uniform(-3.0, 3.0);
    const double c = a + b + d.uniform(2.0, 4.0);
    const std::string label = point({a, b, c});
    s.run(label, [&] { s.check(hyp2f1({a, b, c, z}).value, hyp2f1_at_one(a, b, c), label); });
  }
  // Terminating series reach z = 1 exactly (Chu-Vandermonde).
  for (int n = 0; n <= 6; ++n) {
    const double b = 0.3;
    const double c = 2.7;
    const std::string label = point({static_cast<double>(-n), b, c});
    s.run(label, [&] {
      s.check(hyp2f1_at_one(-n, b, c), pochhammer(c - b, n) / pochhammer(c, n), label);
    });
  }
  return s.result();
}

SuiteResult derivative_suite(std::uint64_t seed) {
  Suite s("derivative", 1e-6);
  Draws d(seed);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    HypParams p{d.uniform(-3.0, 3.0), d.uniform(-3.0, 3.0), d.uniform(0.5, 5.0),
                d.uniform(0.05, 0.85)};
    const std::string label = point({p.a, p.b, p.c, p.z});
    s.run(label, [&] {
      HypParams lo = p;
      HypParams hi = p;
      lo.z -= h;
      hi.z += h;
      const double fd = (hyp2f1(hi).value - hyp2f1(lo).value) / (2.0 * h);
      s.check(fd, hyp2f1_derivative(p), label);
    });
  }
  return s.result();
}

SuiteResult integral_rep_suite() {
  Suite s("integral_rep", 1e-8);
  std::vector<double> alphas = kNegative;
  alphas.insert(alphas.end(), kPositive.begin(), kPositive.end());
  for (double a1 : alphas) {
    for (double a2 : alphas) {
      for (double rho : {0.25, 0.5, 0.75, 0.95}) {
        const Hyp3F2Params p{1.0 - 0.5 * a1, 1.0 - 0.5 * a2, 1.0, 1.5, 2.0, rho * rho};
        const std::string label = point({a1, a2, rho});
        s.run(label, [&] { s.check(hyp_integral_rep(p), hyp3f2(p).value, label); });
      }
    }
  }
  return s.result();
}

SuiteResult dual_path_suite(bool inject_fault) {
  Suite s("dual_path_gap", 1e-10);
  auto pairs = [](const std::vector<double>& v, auto&& fn) {
    for (double a1 : v)
      for (double a2 : v) fn(a1, a2);
  };
  auto body = [&](double a1, double a2) {
    for (double rho : kRho) {
      for (double s1 : kSigma) {
        for (double s2 : kSigma) {
          const MomentSpec spec{s1, s2, a1, a2, rho};
          const std::string label = point({s1, s2, a1, a2, rho});
          s.run(label, [&] {
            double alt = gap_via_3f2(spec);
            if (inject_fault) alt = -alt;
            s.check(alt, gap(spec), label);
          });
        }
      }
    }
  };
  pairs(kNegative, body);
  pairs(kPositive, body);
  return s.result();
}

SuiteResult corollary_suite() {
  Suite s("corollary_agreement", 1e-13);
  const double rho = 0.5;
  for (int a1 = 1; a1 <= 2; ++a1) {
    for (int a2 = 1; a2 <= 2; ++a2) {
      const std::string label = point({double(a1), double(a2)});
      s.run(label, [&] {
        s.check(bound_small_integer(a1, a2, 1.0, 1.0, rho),
                same_sign_bound({1.0, 1.0, double(a1), double(a2), rho}).value, label);
      });
    }
  }
  for (int m = 3; m <= 8; ++m) {
    const std::string label = point({double(m), 1.0});
    s.run(label, [&] {
      s.check(bound_integer_with_one(m, 1.0, 1.0, rho),
              same_sign_bound({1.0, 1.0, double(m), 1.0, rho}).value, label);
    });
    for (int n = 3; n <= 8; ++n) {
      const std::string pair_label = point({double(m), double(n)});
      s.run(pair_label, [&] {
        s.check(bound_integer_pair(m, n, 1.0, 1.0, rho),
                same_sign_bound({1.0, 1.0, double(m), double(n), rho}).value, pair_label);
      });
    }
  }
  return s.result();
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts) {
  return {euler_suite(derive_seed(opts.seed, 1)),
          gauss_suite(derive_seed(opts.seed, 2)),
          derivative_suite(derive_seed(opts.seed, 3)),
          integral_rep_suite(),
          dual_path_suite(opts.inject_fault),
          corollary_suite()};
}

bool all_passed(const std::vector<SuiteResult>& suites) {
  return std::all_of(suites.begin(), suites.end(),
                     [](const SuiteResult& s) { return s.failed == 0; });
}

std::string selftest_text(const std::vector<SuiteResult>& suites) {
  std::ostringstream out;
  for (const SuiteResult& s : suites) {
    out << (s.failed == 0 ? "PASS " : "FAIL ") << s.name << ": " << s.passed << "/"
        << (s.passed + s.failed) << " within " << format_double(s.tolerance)
        << ", worst relative error " << format_double(s.worst_rel_err) << "\n";
    if (!s.first_failure.empty()) out << "  first failure: " << s.first_failure << "\n";
  }
  out << (all_passed(suites) ? "selftest passed" : "selftest FAILED") << "\n";
  return out.str();
}

std::string selftest_json(const std::vector<SuiteResult>& suites) {
  nlohmann::ordered_json j;
  j["passed"] = all_passed(suites);
  j["suites"] = nlohmann::ordered_json::array();
  for (const SuiteResult& s : suites) {
    nlohmann::ordered_json e;
    e["name"] = s.name;
    e["passed"] = s.passed;
    e["failed"] = s.failed;
    e["tolerance"] = s.tolerance;
    e["worst_rel_err"] = std::isfinite(s.worst_rel_err) ? nlohmann::ordered_json(s.worst_rel_err)
                                                        : nlohmann::ordered_json("+inf");
    e["first_failure"] = s.first_failure.empty() ? nlohmann::ordered_json(nullptr)
                                                 : nlohmann::ordered_json(s.first_failure);
    j["suites"].push_back(e);
  }
  return j.dump() + "\n";
}

}  // namespace gpi
