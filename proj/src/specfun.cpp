#include "gpi/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gpi/error.hpp"
#include "gpi/quadrature.hpp"

namespace gpi {

namespace {

// Lanczos approximation, N = 13, g = 6.0246800407767296, tuned for 53-bit
// doubles (coefficients as published with Boost.Math, lanczos13m53).
constexpr double kLanczosG = 6.024680040776729583740234375;

constexpr std::array<double, 13> kLanczosNum = {
    23531376880.41075968857200767445163675473, 42919803642.64909876895789904700198885093,
    35711959237.35566804944018545154716670596, 17921034426.03720969991975575445893111267,
    6039542586.35202800506429164430729792107,  1439720407.311721673663223072794912393972,
    248874557.8620541565114603864132294232163, 31426415.58540019438061423162831820536287,
    2876370.628935372441225409051620849613599, 186056.2653952234950402949897160456992822,
    8071.672002365816210638002902272250613822, 210.8242777515793458725097339207133627117,
    2.506628274631000270164908177133837338626};

constexpr std::array<double, 13> kLanczosNumExpG = {
    56906521.91347156388090791033559122686859, 103794043.1163445451906271053616070238554,
    86363131.28813859145546927288977868422342, 43338889.32467613834773723740590533316085,
    14605578.08768506808414169982791359218571, 3481712.15498064590882071018964774556468,
    601859.6171681098786670226533699352302507, 75999.29304014542649875303443598909137092,
    6955.999602515376140356310115515198987526, 449.9445569063168119446858607650988409623,
    19.51992788247617482847860966235652136208, 0.5098416655656676188125178644804694509993,
    0.006061842346248906525783753964555936883222};

// Coefficients of z(z+1)...(z+11), lowest degree first.
constexpr std::array<double, 13> kLanczosDenom = {
    0.0,       39916800.0, 120543840.0, 150917976.0, 105258076.0, 45995730.0, 13339535.0,
    2637558.0, 357423.0,   32670.0,     1925.0,      66.0,        1.0};

constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
constexpr double kMaxGammaArg = 171.62437695630272;

// Ratio of two polynomials with coefficients lowest degree first. For z > 1
// both are evaluated in 1/z so the z^12 terms never overflow.
template <std::size_t N>
double rational(const std::array<double, N>& num, const std::array<double, N>& den, double z) {
  double s1 = 0.0;
  double s2 = 0.0;
  if (z <= 1.0) {
    for (std::size_t i = N; i-- > 0;) {
      s1 = s1 * z + num[i];
      s2 = s2 * z + den[i];
    }
  } else {
    const double zi = 1.0 / z;
    for (std::size_t i = 0; i < N; ++i) {
      s1 = s1 * zi + num[i];
      s2 = s2 * zi + den[i];
    }
  }
  return s1 / s2;
}

template <std::size_t N>
double polynomial(const std::array<double, N>& c, double x) {
  double s = 0.0;
  for (std::size_t i = N; i-- > 0;) s = s * x + c[i];
  return s;
}

// ln Gamma on (0, 3) via rational minimax fits around the roots at 1 and 2
// (Boost.Math lgamma_small, 64-bit set), so results near those roots keep
// relative accuracy.
double log_gamma_small(double z) {
  double zm1 = z - 1.0;
  double zm2 = z - 2.0;
  double result = 0.0;
  if (z < std::numeric_limits<double>::epsilon()) return -std::log(z);
  if (zm1 == 0.0 || zm2 == 0.0) return 0.0;
  if (z > 2.0) {
    static constexpr std::array<double, 7> P = {
        -0.180355685678449379109e-1, 0.25126649619989678683e-1,   0.494103151567532234274e-1,
        0.172491608709613993966e-1,  -0.259453563205438108893e-3, -0.541009869215204396339e-3,
        -0.324588649825948492091e-4};
    static constexpr std::array<double, 8> Q = {
        0.1e1,                      0.196202987197795200688e1, 0.148019669424231326694e1,
        0.541391432071720958364e0,  0.988504251128010129477e-1, 0.82130967464889339326e-2,
        0.224936291922115757597e-3, -0.223352763208617092964e-6};
    constexpr double Y = 0.158963680267333984375;
    const double r = zm2 * (z + 1.0);
    const double R = polynomial(P, zm2) / polynomial(Q, zm2);
    return r * Y + r * R;
  }
  if (z < 1.0) {
    result += -std::log(z);
    zm2 = zm1;
    zm1 = z;
    z += 1.0;
  }
  if (z <= 1.5) {
    static constexpr std::array<double, 7> P = {
        0.490622454069039543534e-1, -0.969117530159521214579e-1, -0.414983358359495381969e0,
        -0.406567124211938417342e0, -0.158413586390692192217e0,  -0.240149820648571559892e-1,
        -0.100346687696279557415e-2};
    static constexpr std::array<double, 7> Q = {
        0.1e1,                     0.302349829846463038743e1, 0.348739585360723852576e1,
        0.191415588274426679201e1, 0.507137738614363510846e0, 0.577039722690451849648e-1,
        0.195768102601107189171e-2};
    constexpr double Y = 0.52815341949462890625;
    const double r = polynomial(P, zm1) / polynomial(Q, zm1);
    const double prefix = zm1 * zm2;
    return result + prefix * Y + prefix * r;
  }
  static constexpr std::array<double, 6> P = {
      -0.292329721830270012337e-1, 0.144216267757192309184e0,  -0.142440390738631274135e0,
      0.542809694055053558157e-1,  -0.850535976868336437746e-2, 0.431171342679297331241e-3};
  static constexpr std::array<double, 7> Q = {
      0.1e1,                      -0.150169356054485044494e1, 0.846973248876495016101e0,
      -0.220095151814995745555e0, 0.25582797155975869989e-1,  -0.100666795539143372762e-2,
      -0.827193521891290553639e-6};
  constexpr double Y = 0.452017307281494140625;
  const double r = zm2 * zm1;
  const double R = polynomial(P, -zm2) / polynomial(Q, -zm2);
  return result + r * Y + r * R;
}

const std::array<double, 171>& factorial_table() {
  static const std::array<double, 171> table = [] {
    std::array<double, 171> t{};
    long double f = 1.0L;
    t[0] = 1.0;
    for (int i = 1; i < 171; ++i) {
      f *= i;
      t[i] = static_cast<double>(f);
    }
    return t;
  }();
  return table;
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

double sin_pi(double x) {
  const double r = x - 2.0 * std::round(0.5 * x);  // r in [-1, 1]
  return std::sin(std::numbers::pi * r);
}

struct SignedLog {
  double log_abs;
  int sign;
};

// log|Gamma(x)| and sign(Gamma(x)) for any non-pole real x.
SignedLog signed_log_gamma(double x) {
  if (x > 0.0) return {log_gamma(x), 1};
  const double s = sin_pi(x);
  return {std::log(std::numbers::pi) - std::log(std::abs(s)) - log_gamma(1.0 - x), s < 0 ? -1 : 1};
}

bool finite_real(double x) { return std::isfinite(x); }

template <std::size_t P, std::size_t Q>
void check_series_params(const std::array<double, P>& num, const std::array<double, Q>& den,
                         double z, const char* name) {
  for (double v : num)
    if (!finite_real(v)) domain_error(std::string(name) + ": non-finite numerator parameter");
  for (double v : den) {
    if (!finite_real(v)) domain_error(std::string(name) + ": non-finite denominator parameter");
    if (is_nonpositive_integer(v))
      domain_error(std::string(name) + ": denominator parameter is a non-positive integer");
  }
  if (!(z >= 0.0 && z <= 1.0)) domain_error(std::string(name) + ": z must lie in [0, 1]");
}

// Sum of prod (num_i)_n / prod (den_j)_n * z^n / n!, optionally without the
// n = 0 term. Terminating series are summed to the last non-zero term.
template <std::size_t P, std::size_t Q>
SeriesResult sum_series(const std::array<double, P>& num, const std::array<double, Q>& den,
                        double z, const SeriesOptions& opts, bool skip_first) {
  SeriesResult out;
  out.terms_used = 1;
  out.value = skip_first ? 0.0 : 1.0;
  if (z == 0.0) return out;

  bool terminating = false;
  for (double v : num)
    if (is_nonpositive_integer(v) && -v < static_cast<double>(opts.max_terms)) terminating = true;

  double term = 1.0;
  double sum = out.value;
  for (std::size_t n = 0;; ++n) {
    double factor = z / static_cast<double>(n + 1);
    bool hit_zero = false;
    for (double v : num) {
      const double f = v + static_cast<double>(n);
      if (f == 0.0) hit_zero = true;
      factor *= f;
    }
    if (hit_zero) {
      out.value = sum;
      out.terms_used = n + 1;
      out.truncation_error_estimate = 0.0;
      out.terminated = true;
      return out;
    }
    for (double v : den) factor /= v + static_cast<double>(n);
    const double next = term * factor;

    if (!terminating && std::abs(next) <= std::abs(term) &&
        std::abs(next) < opts.rel_tol * std::abs(sum)) {
      const double ratio = std::abs(next) / std::abs(term);
      out.value = sum;
      out.terms_used = n + 1;
      out.truncation_error_estimate =
          ratio < 1.0 ? std::abs(next) / (1.0 - ratio) : std::numeric_limits<double>::infinity();
      return out;
    }
    if (n + 2 > opts.max_terms) {
      throw Error(ErrorCode::NonConvergence,
                  "hypergeometric series did not converge within " +
                      std::to_string(opts.max_terms) + " terms (z = " + std::to_string(z) + ")");
    }
    sum += next;
    term = next;
  }
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "domain";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::Divergence: return "divergence";
    case ErrorCode::QuadratureFailure: return "quadrature_failure";
    case ErrorCode::InfiniteVariance: return "infinite_variance";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

double gamma_fn(double x) {
  if (!(x > 0.0)) domain_error("gamma_fn: argument must be positive");
  if (x > kMaxGammaArg) return std::numeric_limits<double>::infinity();
  if (x < 171.0 && std::floor(x) == x) return factorial_table()[static_cast<std::size_t>(x) - 1];
  if (x < 1.4901161193847656e-08) return 1.0 / x - kEulerGamma;

  const double sum = rational(kLanczosNum, kLanczosDenom, x);
  const double zgh = x + kLanczosG - 0.5;
  if (x * std::log(zgh) > 709.0) {
    const double hp = std::pow(zgh, 0.5 * x - 0.25);
    return sum * (hp / std::exp(zgh)) * hp;
  }
  return sum * std::pow(zgh, x - 0.5) / std::exp(zgh);
}

double log_gamma(double x) {
  if (!(x > 0.0)) domain_error("log_gamma: argument must be positive");
  if (std::isinf(x)) return x;
  if (x < 3.0) return log_gamma_small(x);
  if (x < 100.0) return std::log(gamma_fn(x));
  const double zgh = x + kLanczosG - 0.5;
  return (x - 0.5) * (std::log(zgh) - 1.0) +
         std::log(rational(kLanczosNumExpG, kLanczosDenom, x));
}

double pochhammer(double alpha, unsigned n) {
  double p = 1.0;
  for (unsigned k = 0; k < n; ++k) p *= alpha + static_cast<double>(k);
  return p;
}

std::uint64_t double_factorial(int n) {
  if (n < -1) domain_error("double_factorial: n must be >= -1");
  if (n > 33) domain_error("double_factorial: n!! overflows 64 bits for n > 33");
  std::uint64_t r = 1;
  for (int k = n; k > 1; k -= 2) r *= static_cast<std::uint64_t>(k);
  return r;
}

SeriesResult hyp2f1(const HypParams& p, const SeriesOptions& opts) {
  check_series_params(std::array{p.a, p.b}, std::array{p.c}, p.z, "hyp2f1");
  if (p.z >= 1.0) domain_error("hyp2f1: z must be < 1 (use hyp2f1_at_one)");
  return sum_series(std::array{p.a, p.b}, std::array{p.c}, p.z, opts, false);
}

SeriesResult hyp2f1_minus_one(const HypParams& p, const SeriesOptions& opts) {
  check_series_params(std::array{p.a, p.b}, std::array{p.c}, p.z, "hyp2f1_minus_one");
  if (p.z >= 1.0) domain_error("hyp2f1_minus_one: z must be < 1");
  return sum_series(std::array{p.a, p.b}, std::array{p.c}, p.z, opts, true);
}

double hyp2f1_at_one(double a, double b, double c) {
  check_series_params(std::array{a, b}, std::array{c}, 1.0, "hyp2f1_at_one");
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    return sum_series(std::array{a, b}, std::array{c}, 1.0, SeriesOptions{}, false).value;
  }
  const double excess = c - a - b;
  if (!(excess > 0.0)) {
    throw Error(ErrorCode::Divergence, "hyp2f1_at_one: c - a - b <= 0, series diverges at z = 1");
  }
  if (is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b)) return 0.0;
  const SignedLog gc = signed_log_gamma(c);
  const SignedLog ge = signed_log_gamma(excess);
  const SignedLog ga = signed_log_gamma(c - a);
  const SignedLog gb = signed_log_gamma(c - b);
  const int sign = gc.sign * ge.sign * ga.sign * gb.sign;
  return sign * std::exp(gc.log_abs + ge.log_abs - ga.log_abs - gb.log_abs);
}

double hyp2f1_derivative(const HypParams& p, const SeriesOptions& opts) {
  check_series_params(std::array{p.a, p.b}, std::array{p.c}, p.z, "hyp2f1_derivative");
  if (p.z >= 1.0) domain_error("hyp2f1_derivative: z must be < 1");
  if (p.a == 0.0 || p.b == 0.0) return 0.0;
  return p.a * p.b / p.c * hyp2f1({p.a + 1.0, p.b + 1.0, p.c + 1.0, p.z}, opts).value;
}

double euler_transform(const HypParams& p, const SeriesOptions& opts) {
  check_series_params(std::array{p.a, p.b}, std::array{p.c}, p.z, "euler_transform");
  if (p.z >= 1.0) domain_error("euler_transform: z must be < 1");
  if (p.z == 0.0) return 1.0;
  const double f = hyp2f1({p.c - p.a, p.c - p.b, p.c, p.z}, opts).value;
  return std::pow(1.0 - p.z, p.c - p.a - p.b) * f;
}

SeriesResult hyp3f2(const Hyp3F2Params& p, const SeriesOptions& opts) {
  const std::array num{p.a1, p.a2, p.a3};
  const std::array den{p.b1, p.b2};
  check_series_params(num, den, p.z, "hyp3f2");
  if (p.z == 1.0) {
    bool terminating = false;
    for (double v : num) terminating = terminating || is_nonpositive_integer(v);
    if (!terminating && !(p.b1 + p.b2 - p.a1 - p.a2 - p.a3 > 0.0)) {
      throw Error(ErrorCode::Divergence, "hyp3f2: series diverges at z = 1");
    }
  }
  return sum_series(num, den, p.z, opts, false);
}

double hyp_integral_rep(const Hyp3F2Params& p, double rel_tol) {
  check_series_params(std::array{p.a1, p.a2, p.a3}, std::array{p.b1, p.b2}, p.z,
                      "hyp_integral_rep");
  if (!(p.a3 > 0.0 && p.b2 > p.a3)) domain_error("hyp_integral_rep: requires b2 > a3 > 0");
  if (p.z >= 1.0) domain_error("hyp_integral_rep: z must be < 1");
  if (p.z == 0.0) return 1.0;

  const double lo_pow = p.a3;         // t^(lo_pow - 1) at t = 0
  const double hi_pow = p.b2 - p.a3;  // (1-t)^(hi_pow - 1) at t = 1
  auto inner = [&](double t) { return hyp2f1({p.a1, p.a2, p.b1, p.z * t}).value; };

  // Split at t = 1/2 and map each endpoint power singularity away:
  // t = s^(1/lo_pow) on the left, 1 - t = w^(1/hi_pow) on the right.
  auto left = [&](double s) {
    const double t = lo_pow == 1.0 ? s : std::pow(s, 1.0 / lo_pow);
    return std::pow(1.0 - t, hi_pow - 1.0) * inner(t);
  };
  auto right = [&](double w) {
    const double u = hi_pow == 1.0 ? w : std::pow(w, 1.0 / hi_pow);
    const double t = 1.0 - u;
    return std::pow(t, lo_pow - 1.0) * inner(t);
  };
  const quad::Result lq = quad::integrate(left, 0.0, std::pow(0.5, lo_pow), 0.25 * rel_tol);
  const quad::Result rq = quad::integrate(right, 0.0, std::pow(0.5, hi_pow), 0.25 * rel_tol);

  const double norm =
      std::exp(log_gamma(p.b2) - log_gamma(p.a3) - log_gamma(p.b2 - p.a3));
  const double value = norm * (lq.value / lo_pow + rq.value / hi_pow);
  const double error = norm * (lq.error / lo_pow + rq.error / hi_pow);
  if (!(error <= rel_tol * std::abs(value))) {
    throw AccuracyError("hyp_integral_rep: quadrature target not reached", value, error);
  }
  return value;
}

}  // namespace gpi
