#include "gpi/moments.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gpi/error.hpp"

namespace gpi {

namespace {

constexpr double kLn2 = std::numbers::ln2;
const double kLnPi = std::log(std::numbers::pi);

void require_open_rho(const MomentSpec& spec, const char* name) {
  if (!(std::abs(spec.rho) < 1.0)) {
    domain_error(std::string(name) + ": requires |rho| < 1 (use product_moment_rho_one)");
  }
}

}  // namespace

void validate(const MomentSpec& spec) {
  if (!(spec.sigma1 > 0.0) || !(spec.sigma2 > 0.0) || !std::isfinite(spec.sigma1) ||
      !std::isfinite(spec.sigma2)) {
    domain_error("sigma1 and sigma2 must be finite and positive");
  }
  if (!(spec.alpha1 > -1.0) || !(spec.alpha2 > -1.0) || !std::isfinite(spec.alpha1) ||
      !std::isfinite(spec.alpha2)) {
    domain_error("alpha1 and alpha2 must be finite and > -1");
  }
  if (!(std::abs(spec.rho) <= 1.0)) domain_error("rho must lie in [-1, 1]");
}

double abs_moment_1d(double sigma, double alpha) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) domain_error("abs_moment_1d: sigma must be > 0");
  if (!(alpha > -1.0) || !std::isfinite(alpha)) domain_error("abs_moment_1d: alpha must be > -1");
  // Even integer powers: sigma^(2k) (2k-1)!!, exact for small k.
  if (alpha >= 0.0 && alpha <= 66.0 && std::floor(alpha * 0.5) == alpha * 0.5) {
    const int k = static_cast<int>(alpha);
    double odd = 1.0;
    for (int j = k - 1; j > 1; j -= 2) odd *= j;
    return std::pow(sigma, alpha) * odd;
  }
  const double log_m = 0.5 * alpha * kLn2 + alpha * std::log(sigma) +
                       log_gamma(0.5 * (alpha + 1.0)) - 0.5 * kLnPi;
  return std::exp(log_m);
}

double log_prefactor(const MomentSpec& spec) {
  validate(spec);
  return 0.5 * (spec.alpha1 + spec.alpha2) * kLn2 + spec.alpha1 * std::log(spec.sigma1) +
         spec.alpha2 * std::log(spec.sigma2) + log_gamma(0.5 * (spec.alpha1 + 1.0)) +
         log_gamma(0.5 * (spec.alpha2 + 1.0)) - kLnPi;
}

double product_of_marginals(const MomentSpec& spec) {
  return std::exp(log_prefactor(spec));
}

double product_moment(const MomentSpec& spec, const SeriesOptions& opts) {
  validate(spec);
  require_open_rho(spec, "product_moment");
  const double pre = product_of_marginals(spec);
  if (spec.rho == 0.0) return pre;
  const double z = spec.rho * spec.rho;
  return pre * hyp2f1({-0.5 * spec.alpha1, -0.5 * spec.alpha2, 0.5, z}, opts).value;
}

double product_moment_rho_one(const MomentSpec& spec) {
  validate(spec);
  if (std::abs(spec.rho) != 1.0) domain_error("product_moment_rho_one: requires |rho| = 1");
  if (spec.sigma1 != spec.sigma2) {
    domain_error("product_moment_rho_one: |rho| = 1 requires sigma1 == sigma2");
  }
  const double total = spec.alpha1 + spec.alpha2;
  if (total <= -1.0) return std::numeric_limits<double>::infinity();
  return abs_moment_1d(spec.sigma1, total);
}

double gap(const MomentSpec& spec, const SeriesOptions& opts) {
  validate(spec);
  if (spec.rho == 0.0) return 0.0;
  if (std::abs(spec.rho) == 1.0) {
    return product_moment_rho_one(spec) - product_of_marginals(spec);
  }
  const double z = spec.rho * spec.rho;
  const SeriesResult bracket =
      hyp2f1_minus_one({-0.5 * spec.alpha1, -0.5 * spec.alpha2, 0.5, z}, opts);
  return product_of_marginals(spec) * bracket.value;
}

double gap_via_3f2(const MomentSpec& spec, const SeriesOptions& opts) {
  validate(spec);
  require_open_rho(spec, "gap_via_3f2");
  if (spec.rho == 0.0) return 0.0;
  const double z = spec.rho * spec.rho;
  const double a1 = spec.alpha1;
  const double a2 = spec.alpha2;
  const SeriesResult f = hyp3f2({1.0 - 0.5 * a1, 1.0 - 0.5 * a2, 1.0, 1.5, 2.0, z}, opts);
  return product_of_marginals(spec) * (0.5 * z * a1 * a2) * f.value;
}

}  // namespace gpi
