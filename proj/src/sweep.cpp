#include "gpi/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace gpi {

namespace {

using Json = nlohmann::ordered_json;

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

Json optional_number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

const char* pattern_name(SignPattern p) {
  switch (p) {
    case SignPattern::SameSign: return "same_sign";
    case SignPattern::OppositeSign: return "opposite_sign";
    case SignPattern::Other: return "other";
  }
  return "other";
}

bool quadrature_matches(const OracleEstimate& q, double closed) {
  return std::abs(q.value - closed) <= std::max(1e-6 * std::abs(closed), 3.0 * q.error_estimate);
}

bool monte_carlo_matches(const OracleEstimate& m, double closed) {
  return std::abs(m.value - closed) <= 4.0 * m.error_estimate;
}

// Flat view of a row in column order; nullopt entries serialize as null.
struct Cells {
  std::vector<std::optional<double>> numbers;
  std::optional<std::string> pattern;
  std::optional<std::string> case_tag;
  std::optional<bool> finite_lower;
  std::optional<bool> swapped;
  bool satisfied = false;
  std::string flags;
  std::optional<std::string> error;
};

std::vector<double> values_or_default(const std::vector<double>& v, double fallback) {
  return v.empty() ? std::vector<double>{fallback} : v;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

SweepConfig default_sweep_config() {
  SweepConfig cfg;
  const std::vector<double> alphas = {-0.9, -0.5, -0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.5};
  cfg.alpha1_values = alphas;
  cfg.alpha2_values = alphas;
  cfg.rho_values = {0.0, 0.25, -0.25, 0.5, -0.5, 0.75, -0.75, 0.95, -0.95};
  cfg.sigma1_values = {0.5, 1.0, 2.0};
  cfg.sigma2_values = {0.5, 1.0, 2.0};
  return cfg;
}

void validate(const SweepConfig& cfg) {
  for (double a : cfg.alpha1_values)
    if (!(a > -1.0)) domain_error("sweep: every alpha1 must be > -1");
  for (double a : cfg.alpha2_values)
    if (!(a > -1.0)) domain_error("sweep: every alpha2 must be > -1");
  for (double r : cfg.rho_values)
    if (!(std::abs(r) <= 1.0)) domain_error("sweep: every rho must lie in [-1, 1]");
  for (double s : cfg.sigma1_values)
    if (!(s > 0.0)) domain_error("sweep: every sigma1 must be > 0");
  for (double s : cfg.sigma2_values)
    if (!(s > 0.0)) domain_error("sweep: every sigma2 must be > 0");
  if (!(cfg.tolerance > 0.0)) domain_error("sweep: tolerance must be > 0");
  if (cfg.oracle == OracleChoice::MonteCarlo || cfg.oracle == OracleChoice::Both) {
    if (cfg.mc_samples < 1000) domain_error("sweep: mc-samples must be >= 1000");
  }
}

std::vector<MomentSpec> grid_points(const SweepConfig& cfg) {
  std::vector<MomentSpec> out;
  for (double s1 : values_or_default(cfg.sigma1_values, 1.0))
    for (double s2 : values_or_default(cfg.sigma2_values, 1.0))
      for (double a1 : values_or_default(cfg.alpha1_values, 1.0))
        for (double a2 : values_or_default(cfg.alpha2_values, 1.0))
          for (double r : values_or_default(cfg.rho_values, 0.0))
            out.push_back({s1, s2, a1, a2, r});
  return out;
}

ReportRow evaluate_row(const MomentSpec& spec, std::size_t index, const SweepConfig& cfg) {
  ReportRow row;
  row.index = index;
  row.report = check_point(spec, cfg.tolerance);
  if (row.report.error) {
    row.flags.push_back(std::string("error:") + to_string(row.report.error->code()));
    return row;
  }
  if (row.report.opposite_sign) {
    if (!row.report.opposite_sign->finite_lower) row.flags.emplace_back("vacuous_lower");
    if (row.report.opposite_sign->swapped) row.flags.emplace_back("swapped");
  }
  if (!row.report.satisfied) row.flags.emplace_back("violated");

  try {
    row.moment = std::abs(spec.rho) == 1.0 ? product_moment_rho_one(spec) : product_moment(spec);
  } catch (const Error& e) {
    row.flags.push_back(std::string("moment_error:") + to_string(e.code()));
    return row;
  }

  const bool want_quad = cfg.oracle == OracleChoice::Quadrature || cfg.oracle == OracleChoice::Both;
  const bool want_mc = cfg.oracle == OracleChoice::MonteCarlo || cfg.oracle == OracleChoice::Both;
  if (want_quad) {
    if (std::abs(spec.rho) == 1.0) {
      row.flags.emplace_back("quadrature_skipped_degenerate");
    } else {
      try {
        row.quadrature = quad_product_moment(spec, cfg.quadrature);
        if (!quadrature_matches(*row.quadrature, *row.moment)) {
          row.flags.emplace_back("quadrature_mismatch");
        }
      } catch (const AccuracyError& e) {
        row.quadrature = OracleEstimate{e.best_estimate(), e.achieved_error(),
                                        OracleMethod::Quadrature};
        row.flags.emplace_back("quadrature_inaccurate");
      }
    }
  }
  if (want_mc) {
    try {
      row.monte_carlo =
          mc_product_moment(spec, {cfg.mc_samples, derive_seed(cfg.master_seed, index)});
      if (!monte_carlo_matches(*row.monte_carlo, *row.moment)) {
        row.flags.emplace_back("mc_mismatch");
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InfiniteVariance) throw;
      row.flags.emplace_back("mc_refused");
    }
  }
  return row;
}

std::vector<ReportRow> run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const std::vector<MomentSpec> points = grid_points(cfg);
  std::vector<ReportRow> rows(points.size());

  unsigned jobs = cfg.jobs != 0 ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, points.size())));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      rows[i] = evaluate_row(points[i], i, cfg);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return rows;
}

SweepSummary summarize(const std::vector<ReportRow>& rows) {
  SweepSummary s;
  s.rows = rows.size();
  for (const ReportRow& row : rows) {
    if (row.report.error) {
      ++s.errored;
      if (row.report.error->code() == ErrorCode::Domain) s.any_domain_error = true;
      continue;
    }
    ++s.checked;
    if (row.report.satisfied) {
      ++s.satisfied;
    } else {
      ++s.violated;
    }
    if (row.report.opposite_sign && !row.report.opposite_sign->finite_lower) ++s.vacuous;
    for (const std::string& f : row.flags) {
      if (f == "quadrature_mismatch" || f == "mc_mismatch") {
        ++s.oracle_mismatch;
        break;
      }
    }
  }
  return s;
}

int exit_code(const SweepSummary& s) {
  if (s.violated > 0) return 1;
  if (s.errored > 0) return s.any_domain_error ? 2 : 3;
  return 0;
}

std::string summary_line(const SweepSummary& s) {
  std::ostringstream out;
  out << "rows=" << s.rows << " checked=" << s.checked << " satisfied=" << s.satisfied
      << " violated=" << s.violated << " vacuous=" << s.vacuous << " errored=" << s.errored
      << " oracle_mismatch=" << s.oracle_mismatch;
  return out.str();
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> columns = {
      "index",  "sigma1", "sigma2",     "alpha1",           "alpha2",
      "rho",    "pattern", "case_tag",  "gap",              "moment",
      "bound",  "lower",  "upper",      "finite_lower",     "swapped",
      "satisfied", "slack", "quadrature_value", "quadrature_error", "quadrature_deviation",
      "mc_value", "mc_std_error", "mc_deviation", "flags", "error"};
  return columns;
}

namespace {

Cells cells_of(const ReportRow& row) {
  const BoundReport& r = row.report;
  Cells c;
  const bool ok = !r.error.has_value();
  auto when_ok = [&](double v) { return ok ? std::optional<double>(v) : std::nullopt; };

  std::optional<double> bound;
  std::optional<double> lower;
  std::optional<double> upper;
  if (r.same_sign) {
    bound = r.same_sign->value;
    c.case_tag = to_string(r.same_sign->case_tag);
  }
  if (r.opposite_sign) {
    lower = r.opposite_sign->lower;
    upper = r.opposite_sign->upper;
    c.finite_lower = r.opposite_sign->finite_lower;
    c.swapped = r.opposite_sign->swapped;
    c.case_tag = to_string(r.opposite_sign->case_tag);
  }
  std::optional<double> qv, qe, qd, mv, me, md;
  if (row.quadrature) {
    qv = row.quadrature->value;
    qe = row.quadrature->error_estimate;
    if (row.moment) qd = row.quadrature->value - *row.moment;
  }
  if (row.monte_carlo) {
    mv = row.monte_carlo->value;
    me = row.monte_carlo->error_estimate;
    if (row.moment) md = row.monte_carlo->value - *row.moment;
  }
  c.numbers = {static_cast<double>(row.index),
               r.spec.sigma1,
               r.spec.sigma2,
               r.spec.alpha1,
               r.spec.alpha2,
               r.spec.rho,
               when_ok(r.gap),
               row.moment,
               bound,
               lower,
               upper,
               when_ok(r.slack),
               qv,
               qe,
               qd,
               mv,
               me,
               md};
  if (ok) c.pattern = pattern_name(r.pattern);
  c.satisfied = r.satisfied;
  for (std::size_t i = 0; i < row.flags.size(); ++i) {
    if (i) c.flags += ';';
    c.flags += row.flags[i];
  }
  if (r.error) c.error = r.error->what();
  return c;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_json_line(const ReportRow& row) {
  const Cells c = cells_of(row);
  const auto& n = c.numbers;
  Json j;
  j["index"] = row.index;
  j["sigma1"] = number(*n[1]);
  j["sigma2"] = number(*n[2]);
  j["alpha1"] = number(*n[3]);
  j["alpha2"] = number(*n[4]);
  j["rho"] = number(*n[5]);
  j["pattern"] = c.pattern ? Json(*c.pattern) : Json(nullptr);
  j["case_tag"] = c.case_tag ? Json(*c.case_tag) : Json(nullptr);
  j["gap"] = optional_number(n[6]);
  j["moment"] = optional_number(n[7]);
  j["bound"] = optional_number(n[8]);
  j["lower"] = optional_number(n[9]);
  j["upper"] = optional_number(n[10]);
  j["finite_lower"] = c.finite_lower ? Json(*c.finite_lower) : Json(nullptr);
  j["swapped"] = c.swapped ? Json(*c.swapped) : Json(nullptr);
  j["satisfied"] = c.satisfied;
  j["slack"] = optional_number(n[11]);
  j["quadrature_value"] = optional_number(n[12]);
  j["quadrature_error"] = optional_number(n[13]);
  j["quadrature_deviation"] = optional_number(n[14]);
  j["mc_value"] = optional_number(n[15]);
  j["mc_std_error"] = optional_number(n[16]);
  j["mc_deviation"] = optional_number(n[17]);
  j["flags"] = row.flags;
  j["error"] = c.error ? Json(*c.error) : Json(nullptr);
  return j.dump();
}

std::string csv_header() {
  std::string out;
  for (const std::string& col : report_columns()) {
    if (!out.empty()) out += ',';
    out += col;
  }
  return out;
}

std::string to_csv_line(const ReportRow& row) {
  const Cells c = cells_of(row);
  const auto& n = c.numbers;
  auto num = [](const std::optional<double>& x) { return x ? format_double(*x) : std::string(); };
  auto flag = [](const std::optional<bool>& b) {
    return b ? std::string(*b ? "true" : "false") : std::string();
  };
  std::vector<std::string> cells = {
      std::to_string(row.index), num(n[1]), num(n[2]), num(n[3]), num(n[4]), num(n[5]),
      c.pattern.value_or(""), c.case_tag.value_or(""), num(n[6]), num(n[7]), num(n[8]),
      num(n[9]), num(n[10]), flag(c.finite_lower), flag(c.swapped),
      c.satisfied ? "true" : "false", num(n[11]), num(n[12]), num(n[13]), num(n[14]),
      num(n[15]), num(n[16]), num(n[17]), c.flags, c.error.value_or("")};
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(cells[i]);
  }
  return out;
}

std::string serialize(const std::vector<ReportRow>& rows, OutputFormat format) {
  std::string out;
  if (format == OutputFormat::Csv) out += csv_header() + '\n';
  for (const ReportRow& row : rows) {
    out += format == OutputFormat::Csv ? to_csv_line(row) : to_json_line(row);
    out += '\n';
  }
  return out;
}

std::vector<CurveRow> curve(const MomentSpec& spec, std::size_t rho_count) {
  if (rho_count < 2) domain_error("curve: need at least two rho samples");
  MomentSpec s = spec;
  s.rho = 0.0;
  validate(s);
  const SignPattern pattern = sign_pattern(s);
  if (pattern == SignPattern::Other) domain_error("curve: exponents must be non-zero");

  std::vector<CurveRow> rows;
  rows.reserve(rho_count);
  for (std::size_t i = 0; i < rho_count; ++i) {
    s.rho = 0.99 * (static_cast<double>(i) / static_cast<double>(rho_count - 1));
    CurveRow row;
    row.rho = s.rho;
    row.gap = gap(s);
    if (pattern == SignPattern::SameSign) {
      row.bound_low = same_sign_bound(s).value;
      row.bound_high = std::numeric_limits<double>::infinity();
    } else {
      const OppositeSignBounds b = opposite_sign_bounds(s);
      row.bound_low = b.lower;
      row.bound_high = b.upper;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
  std::string out = "rho,gap,bound_low,bound_high\n";
  for (const CurveRow& r : rows) {
    out += format_double(r.rho) + ',' + format_double(r.gap) + ',' + format_double(r.bound_low) +
           ',' + format_double(r.bound_high) + '\n';
  }
  return out;
}

}  // namespace gpi
