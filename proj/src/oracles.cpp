#include "gpi/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gpi/error.hpp"
#include "gpi/quadrature.hpp"

namespace gpi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
const double kHalfNormalNorm = 2.0 / std::sqrt(2.0 * kPi);

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void check_config(const QuadratureConfig& cfg) {
  if (!(cfg.tail_radius_sigmas >= 8.0)) domain_error("quadrature: tail radius must be >= 8");
  if (!(cfg.target_rel_err > 0.0 && cfg.target_rel_err <= 1e-3)) {
    domain_error("quadrature: target relative error must lie in (0, 1e-3]");
  }
}

// E|Z|^k for a standard normal; std::tgamma keeps this off the library's
// own Gamma implementation.
double std_normal_abs_moment(double k) {
  return std::pow(2.0, 0.5 * k) * std::tgamma(0.5 * (k + 1.0)) / std::sqrt(kPi);
}

// Upper bound on E[|Z|^k ; |Z| > r] for a standard normal, r^2 > k - 1.
double half_normal_tail(double k, double r) {
  const double shrink = 1.0 - std::max(k - 1.0, 0.0) / (r * r);
  return kHalfNormalNorm * std::pow(r, k - 1.0) * std::exp(-0.5 * r * r) / shrink;
}

// Upper bound on E[|S|^a |T|^b ; |S| > r] for standard normals with
// correlation rho, via the conditional law T | S = s ~ N(rho s, 1 - rho^2).
double conditional_tail(double a, double b, double rho, double r) {
  const double q = 1.0 - rho * rho;
  const double mb = std_normal_abs_moment(b);
  if (b < 0.0) return std::pow(q, 0.5 * b) * mb * half_normal_tail(a, r);
  const double c = std::max(1.0, std::pow(2.0, b - 1.0));
  return c * (half_normal_tail(a + b, r) + mb * half_normal_tail(a, r));
}

// 0, step, 2 step, ..., r.
std::vector<double> unit_breaks(double r, double step) {
  std::vector<double> out;
  for (double x = 0.0; x < r; x += step) out.push_back(x);
  out.push_back(r);
  return out;
}

// Integral of t^alpha g(t) from 0 to the largest break, panel by panel. The panel at the origin is taken in v = t^(1+alpha), which removes
// the singularity of t^alpha there; the others are integrated as they stand,
// so the mass never hides in a sliver of a stretched axis.
template <class G>
quad::Result weighted_panels(G&& g, double alpha, std::vector<double> breaks, double rel_tol,
                             double abs_tol, std::size_t max_subdivisions, bool substitute) {
  std::sort(breaks.begin(), breaks.end());
  const double hi = breaks.back();
  std::vector<double> pts;
  for (double b : breaks) {
    if (b < 0.0 || b > hi) continue;
    if (pts.empty() || b - pts.back() > 1e-12 * hi) pts.push_back(b);
  }
  if (pts.front() != 0.0) pts.insert(pts.begin(), 0.0);

  const double p = 1.0 + alpha;
  const double panel_abs = abs_tol / static_cast<double>(pts.size());
  quad::Result total{0.0, 0.0, 0, true};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    quad::Result part;
    if (i == 0 && substitute) {
      part = quad::integrate([&](double v) { return g(std::pow(v, 1.0 / p)); }, 0.0,
                             std::pow(pts[1], p), rel_tol, panel_abs * p, max_subdivisions);
      part.value /= p;
      part.error /= p;
    } else {
      part = quad::integrate([&](double t) { return std::pow(t, alpha) * g(t); }, pts[i],
                             pts[i + 1], rel_tol, panel_abs, max_subdivisions);
    }
    total.value += part.value;
    total.error += part.error;
    total.subdivisions += part.subdivisions;
    total.converged = total.converged && part.converged;
  }
  return total;
}

}  // namespace

OracleEstimate quad_abs_moment_1d(double sigma, double alpha, const QuadratureConfig& cfg,
                                  bool substitute) {
  if (!(sigma > 0.0)) domain_error("quad_abs_moment_1d: sigma must be > 0");
  if (!(alpha > -1.0)) domain_error("quad_abs_moment_1d: alpha must be > -1");
  check_config(cfg);
  const double r = cfg.tail_radius_sigmas;

  const quad::Result q = weighted_panels([](double s) { return std::exp(-0.5 * s * s); }, alpha,
                                         unit_breaks(r, 0.5), 0.5 * cfg.target_rel_err, 0.0,
                                         cfg.max_subdivisions, substitute);
  const double scale = std::pow(sigma, alpha);
  OracleEstimate out;
  out.method = OracleMethod::Quadrature;
  out.value = scale * kHalfNormalNorm * q.value;
  out.error_estimate = scale * (kHalfNormalNorm * q.error + half_normal_tail(alpha, r));
  if (!q.converged) {
    throw AccuracyError("quad_abs_moment_1d: target accuracy not reached", out.value,
                        out.error_estimate);
  }
  return out;
}

OracleEstimate quad_product_moment(const MomentSpec& spec, const QuadratureConfig& cfg) {
  validate(spec);
  check_config(cfg);
  if (!(std::abs(spec.rho) < 1.0)) domain_error("quad_product_moment: requires |rho| < 1");

  const double rho = spec.rho;
  const double q = 1.0 - rho * rho;
  const double sd = std::sqrt(q);
  const double norm = 1.0 / (2.0 * kPi * sd);
  const double r = cfg.tail_radius_sigmas;
  const double inner_tol = 0.25 * cfg.target_rel_err;
  const double outer_tol = 0.25 * cfg.target_rel_err;
  const double inner_abs = 1e-18 * cfg.target_rel_err;
  const std::vector<double> outer_breaks = unit_breaks(r, 0.5);
  const std::vector<double> coarse = unit_breaks(r, 1.0);

  bool inner_failed = false;
  double worst_inner = 0.0;
  // Integral over t > 0 of t^a2 times the density at (s, t) plus its mirror
  // (s, -t), so the first quadrant carries the whole plane.
  auto inner = [&](double s) {
    std::vector<double> breaks = coarse;
    const double peak = std::abs(rho) * s;
    for (int k = -6; k <= 6; ++k) breaks.push_back(peak + k * sd);
    const double a = s * s;
    const double b = 2.0 * rho * s;
    const quad::Result res = weighted_panels(
        [&](double t) {
          const double base = a + t * t;
          return norm * (std::exp(-(base - b * t) / (2.0 * q)) +
                         std::exp(-(base + b * t) / (2.0 * q)));
        },
        spec.alpha2, std::move(breaks), inner_tol, inner_abs, cfg.max_subdivisions, true);
    if (!res.converged) {
      inner_failed = true;
      worst_inner = std::max(worst_inner, res.error);
    }
    return res.value;
  };
  const quad::Result outer = weighted_panels(inner, spec.alpha1, outer_breaks, outer_tol, 0.0,
                                             cfg.max_subdivisions, true);

  const double scale = 2.0 * std::pow(spec.sigma1, spec.alpha1) *
                       std::pow(spec.sigma2, spec.alpha2);
  const double tail = conditional_tail(spec.alpha1, spec.alpha2, rho, r) +
                      conditional_tail(spec.alpha2, spec.alpha1, rho, r);

  OracleEstimate out;
  out.method = OracleMethod::Quadrature;
  out.value = scale * outer.value;
  // The inner relative error applies pointwise to a positive integrand, so it
  // carries over to the outer value unchanged.
  out.error_estimate =
      scale * (outer.error + inner_tol * std::abs(outer.value) + inner_abs * r * r) +
      0.5 * scale * tail;
  if (!outer.converged || inner_failed) {
    throw AccuracyError("quad_product_moment: target accuracy not reached", out.value,
                        out.error_estimate + scale * worst_inner);
  }
  return out;
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  return mix64(seed_ + (counter + 1) * kGolden);
}

double CounterRng::uniform(std::uint64_t counter) const {
  return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index * kGolden + 0x632BE59BD9B4E019ULL));
}

BivariateSampler::BivariateSampler(const MomentSpec& spec, std::uint64_t seed)
    : spec_(spec), rng_(seed), cond_scale_(std::sqrt(std::max(0.0, 1.0 - spec.rho * spec.rho))) {
  validate(spec);
}

std::pair<double, double> BivariateSampler::operator()(std::uint64_t index) const {
  const double u1 = rng_.uniform(2 * index);
  const double u2 = rng_.uniform(2 * index + 1);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * kPi * u2;
  const double z1 = radius * std::cos(angle);
  const double z2 = radius * std::sin(angle);
  return {spec_.sigma1 * z1, spec_.sigma2 * (spec_.rho * z1 + cond_scale_ * z2)};
}

std::vector<std::pair<double, double>> sample_bivariate(const MomentSpec& spec, std::size_t n,
                                                        std::uint64_t seed) {
  const BivariateSampler sampler(spec, seed);
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sampler(i));
  return out;
}

OracleEstimate mc_product_moment(const MomentSpec& spec, const McConfig& cfg) {
  validate(spec);
  if (std::min(spec.alpha1, spec.alpha2) <= -0.5) {
    throw Error(ErrorCode::InfiniteVariance,
                "mc_product_moment: exponents <= -1/2 give an infinite-variance estimator; "
                "use the quadrature oracle");
  }
  if (cfg.n_samples < 1000) domain_error("mc_product_moment: need at least 1000 samples");

  const BivariateSampler sampler(spec, cfg.seed);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t i = 0; i < cfg.n_samples; ++i) {
    const auto [x1, x2] = sampler(i);
    const double v = std::pow(std::abs(x1), spec.alpha1) * std::pow(std::abs(x2), spec.alpha2);
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  const double n = static_cast<double>(cfg.n_samples);
  OracleEstimate out;
  out.method = OracleMethod::MonteCarlo;
  out.value = mean;
  out.error_estimate = std::sqrt(m2 / (n - 1.0)) / std::sqrt(n);
  return out;
}

}  // namespace gpi
