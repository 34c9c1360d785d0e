// gpi_cli: point queries, verification sweeps, bound-vs-gap curves and the
// identity self-test, all through the C interface of libgpi.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpi/gpi.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kViolation = 1, kInvalid = 2, kNumeric = 3 };

struct Owned {
  char* p = nullptr;
  ~Owned() { gpi_free_string(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

std::string shortest(double x) {
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

int report_error(const std::string& kind, const std::string& message, int code) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  j["exit_code"] = code;
  std::cerr << j.dump() << "\n";
  return code;
}

int report_status(gpi_status s) {
  const int code = s == GPI_E_DOMAIN ? kInvalid : kNumeric;
  return report_error(gpi_status_name(s), gpi_last_error(), code);
}

// Writes to --output when given, stdout otherwise.
bool emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

struct PointArgs {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double rho = 0.0;
  double sigma1 = 1.0;
  double sigma2 = 1.0;

  gpi_moment_spec spec() const { return {sigma1, sigma2, alpha1, alpha2, rho}; }
};

void add_point_options(CLI::App* cmd, PointArgs& p, bool with_rho) {
  cmd->add_option("--alpha1", p.alpha1, "Exponent on |X1|, > -1")->required();
  cmd->add_option("--alpha2", p.alpha2, "Exponent on |X2|, > -1")->required();
  if (with_rho) cmd->add_option("--rho", p.rho, "Correlation in [-1, 1]")->required();
  cmd->add_option("--sigma1", p.sigma1, "Standard deviation of X1")->capture_default_str();
  cmd->add_option("--sigma2", p.sigma2, "Standard deviation of X2")->capture_default_str();
}

struct MomentArgs {
  PointArgs point;
  std::string method = "series";
  double tolerance = 1e-9;
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_moment(const MomentArgs& a) {
  const gpi_moment_spec spec = a.point.spec();
  double value = 0.0;
  std::optional<double> err;
  gpi_status s = GPI_OK;
  if (a.method == "series") {
    s = std::abs(spec.rho) == 1.0 ? gpi_product_moment_rho_one(&spec, &value)
                                  : gpi_product_moment(&spec, &value);
  } else if (a.method == "quadrature") {
    double e = 0.0;
    s = gpi_quad_product_moment(&spec, a.tolerance, &value, &e);
    err = e;
  } else {
    double e = 0.0;
    s = gpi_mc_product_moment(&spec, a.mc_samples, a.seed, &value, &e);
    err = e;
  }
  if (s != GPI_OK) return report_status(s);

  Json j;
  j["sigma1"] = spec.sigma1;
  j["sigma2"] = spec.sigma2;
  j["alpha1"] = spec.alpha1;
  j["alpha2"] = spec.alpha2;
  j["rho"] = spec.rho;
  j["method"] = a.method;
  j["value"] = number(value);
  j["error_estimate"] = err ? number(*err) : Json(nullptr);
  if (a.method == "mc") j["seed"] = a.seed;
  if (!emit(a.output, shortest(value) + "\n" + j.dump() + "\n")) {
    return report_error("io", "cannot write " + a.output, kNumeric);
  }
  return kOk;
}

struct SweepArgs {
  std::vector<double> alpha1, alpha2, rho, sigma1, sigma2;
  double tolerance = 1e-9;
  std::string oracle = "none";
  std::uint64_t mc_samples = 100'000;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  std::string format = "json";
  std::string output;
};

gpi_oracle oracle_of(const std::string& s) {
  if (s == "quadrature") return GPI_ORACLE_QUADRATURE;
  if (s == "mc") return GPI_ORACLE_MC;
  if (s == "both") return GPI_ORACLE_BOTH;
  return GPI_ORACLE_NONE;
}

// Shared by `gap` (a one-point grid) and `verify`.
int run_sweep(const SweepArgs& a, bool print_summary) {
  std::unique_ptr<gpi_sweep_config, decltype(&gpi_sweep_config_free)> cfg(gpi_sweep_config_new(),
                                                                          gpi_sweep_config_free);
  if (!cfg) return report_status(GPI_E_INTERNAL);
  const std::pair<gpi_axis, const std::vector<double>*> axes[] = {
      {GPI_AXIS_ALPHA1, &a.alpha1}, {GPI_AXIS_ALPHA2, &a.alpha2}, {GPI_AXIS_RHO, &a.rho},
      {GPI_AXIS_SIGMA1, &a.sigma1}, {GPI_AXIS_SIGMA2, &a.sigma2}};
  for (const auto& [axis, values] : axes) {
    if (values->empty()) continue;
    if (gpi_status s = gpi_sweep_config_set_axis(cfg.get(), axis, values->data(), values->size()))
      return report_status(s);
  }
  if (gpi_status s = gpi_sweep_config_set_tolerance(cfg.get(), a.tolerance)) return report_status(s);
  if (gpi_status s = gpi_sweep_config_set_oracle(cfg.get(), oracle_of(a.oracle)))
    return report_status(s);
  if (gpi_status s = gpi_sweep_config_set_mc(cfg.get(), a.mc_samples, a.seed))
    return report_status(s);
  if (gpi_status s = gpi_sweep_config_set_jobs(cfg.get(), a.jobs)) return report_status(s);

  gpi_sweep_result* raw = nullptr;
  if (gpi_status s = gpi_sweep_run(cfg.get(), &raw)) return report_status(s);
  std::unique_ptr<gpi_sweep_result, decltype(&gpi_sweep_result_free)> res(raw,
                                                                          gpi_sweep_result_free);
  Owned text;
  const gpi_format fmt = a.format == "csv" ? GPI_FORMAT_CSV : GPI_FORMAT_JSON;
  if (gpi_status s = gpi_sweep_result_serialize(res.get(), fmt, &text.p)) return report_status(s);
  gpi_sweep_summary sum{};
  if (gpi_status s = gpi_sweep_result_summary(res.get(), &sum)) return report_status(s);

  if (!emit(a.output, text.str())) return report_error("io", "cannot write " + a.output, kNumeric);
  if (print_summary) {
    std::cerr << "rows=" << sum.rows << " checked=" << sum.checked << " satisfied=" << sum.satisfied
              << " violated=" << sum.violated << " vacuous=" << sum.vacuous
              << " errored=" << sum.errored << " oracle_mismatch=" << sum.oracle_mismatch << "\n";
  }
  return sum.exit_code;
}

struct CurveArgs {
  PointArgs point;
  std::size_t rho_count = 100;
  std::string output;
};

int cmd_curve(const CurveArgs& a) {
  const gpi_moment_spec spec = a.point.spec();
  Owned text;
  if (gpi_status s = gpi_curve_csv(&spec, a.rho_count, &text.p)) return report_status(s);
  if (!emit(a.output, text.str())) return report_error("io", "cannot write " + a.output, kNumeric);
  return kOk;
}

int cmd_selftest(bool json, bool inject_fault) {
  Owned text;
  int passed = 0;
  if (gpi_status s = gpi_selftest(inject_fault ? 1 : 0, json ? 1 : 0, &text.p, &passed))
    return report_status(s);
  std::cout << text.str() << std::flush;
  return passed ? kOk : kViolation;
}

std::string columns_help() {
  Owned cols;
  if (gpi_report_columns(&cols.p) != GPI_OK) return {};
  return "Report columns, in order (JSON keys and CSV header):\n  " + cols.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Absolute product moments of bivariate Gaussians and bounds on their gap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gpi_version()));

  const std::vector<std::string> formats = {"json", "csv"};
  const std::vector<std::string> oracles = {"none", "quadrature", "mc", "both"};

  MomentArgs moment;
  CLI::App* c_moment = app.add_subcommand("moment", "E|X1|^alpha1 |X2|^alpha2 at one point");
  add_point_options(c_moment, moment.point, true);
  c_moment->add_option("--method", moment.method, "series, quadrature or mc")
      ->check(CLI::IsMember({"series", "quadrature", "mc"}))
      ->capture_default_str();
  c_moment->add_option("--tolerance", moment.tolerance, "Quadrature target relative error")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_moment->add_option("--mc-samples", moment.mc_samples, "Monte Carlo sample count")
      ->capture_default_str();
  c_moment->add_option("--seed", moment.seed, "Monte Carlo seed")->capture_default_str();
  c_moment->add_option("--output", moment.output, "Write to this file instead of stdout");

  SweepArgs gap_args;
  PointArgs gap_point;
  CLI::App* c_gap = app.add_subcommand("gap", "Gap against the applicable bound at one point");
  add_point_options(c_gap, gap_point, true);
  c_gap->add_option("--tolerance", gap_args.tolerance, "Relative slack allowed in the check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_gap->add_option("--oracle", gap_args.oracle, "Independent check of the moment")
      ->check(CLI::IsMember(oracles))
      ->capture_default_str();
  c_gap->add_option("--mc-samples", gap_args.mc_samples, "Monte Carlo sample count")
      ->capture_default_str();
  c_gap->add_option("--seed", gap_args.seed, "Master seed")->capture_default_str();
  c_gap->add_option("--format", gap_args.format, "json or csv")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  c_gap->add_option("--output", gap_args.output, "Write to this file instead of stdout");

  SweepArgs verify;
  CLI::App* c_verify = app.add_subcommand("verify", "Check the bounds over a grid of points");
  c_verify->add_option("--alpha1", verify.alpha1, "Comma-separated alpha1 values")->delimiter(',');
  c_verify->add_option("--alpha2", verify.alpha2, "Comma-separated alpha2 values")->delimiter(',');
  c_verify->add_option("--rho", verify.rho, "Comma-separated rho values")->delimiter(',');
  c_verify->add_option("--sigma1", verify.sigma1, "Comma-separated sigma1 values")->delimiter(',');
  c_verify->add_option("--sigma2", verify.sigma2, "Comma-separated sigma2 values")->delimiter(',');
  c_verify->add_option("--tolerance", verify.tolerance, "Relative slack allowed in each check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_verify->add_option("--oracle", verify.oracle, "Independent check of each moment")
      ->check(CLI::IsMember(oracles))
      ->capture_default_str();
  c_verify->add_option("--mc-samples", verify.mc_samples, "Monte Carlo samples per point")
      ->capture_default_str();
  c_verify->add_option("--seed", verify.seed, "Master seed; per-point seeds derive from it")
      ->capture_default_str();
  c_verify->add_option("--jobs", verify.jobs, "Worker threads, 0 for one per core")
      ->capture_default_str();
  c_verify->add_option("--format", verify.format, "json (JSON lines) or csv")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  c_verify->add_option("--output", verify.output, "Write the report here instead of stdout");
  c_verify->footer("Unset axes use the default grid.\n" + columns_help());

  CurveArgs curve;
  CLI::App* c_curve = app.add_subcommand("curve", "Gap and bounds as rho runs over [0, 0.99]");
  add_point_options(c_curve, curve.point, false);
  c_curve->add_option("--rho-count", curve.rho_count, "Number of rho samples, >= 2")
      ->capture_default_str();
  c_curve->add_option("--output", curve.output, "Write the CSV here instead of stdout");

  bool selftest_json = false;
  bool inject_fault = false;
  CLI::App* c_selftest = app.add_subcommand("selftest", "Run the special-function identity suites");
  c_selftest->add_flag("--json", selftest_json, "Machine-readable results");
  c_selftest->add_flag("--inject-fault", inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("invalid_argument", e.what(), kInvalid);
  }

  try {
    if (*c_moment) return cmd_moment(moment);
    if (*c_gap) {
      const gpi_moment_spec spec = gap_point.spec();
      Owned row;
      int satisfied = 0;
      if (gpi_status s = gpi_check_point(&spec, gap_args.tolerance, &row.p, &satisfied))
        return report_status(s);
      gap_args.alpha1 = {gap_point.alpha1};
      gap_args.alpha2 = {gap_point.alpha2};
      gap_args.rho = {gap_point.rho};
      gap_args.sigma1 = {gap_point.sigma1};
      gap_args.sigma2 = {gap_point.sigma2};
      gap_args.jobs = 1;
      return run_sweep(gap_args, false);
    }
    if (*c_verify) return run_sweep(verify, true);
    if (*c_curve) return cmd_curve(curve);
    if (*c_selftest) return cmd_selftest(selftest_json, inject_fault);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), kNumeric);
  }
  return kInvalid;
}
