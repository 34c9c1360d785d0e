#pragma once

// Grid verification sweeps, bound-vs-gap curves and their JSON-lines / CSV
// serialization.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpi/bounds.hpp"
#include "gpi/oracles.hpp"

namespace gpi {

enum class OracleChoice { None, Quadrature, MonteCarlo, Both };
enum class OutputFormat { Json, Csv };

struct SweepConfig {
  std::vector<double> alpha1_values;
  std::vector<double> alpha2_values;
  std::vector<double> rho_values;
  std::vector<double> sigma1_values;
  std::vector<double> sigma2_values;
  double tolerance = 1e-9;
  OracleChoice oracle = OracleChoice::None;
  std::uint64_t mc_samples = 100'000;
  std::uint64_t master_seed = 0;
  unsigned jobs = 0;  // 0: one worker per hardware thread
  QuadratureConfig quadrature;
};

/// Exponents {-0.9, -0.5, -0.1, 0.5, 1, 1.5, 2, 2.5, 3, 4.5} on both axes,
/// rho in {0, +-0.25, +-0.5, +-0.75, +-0.95}, sigmas in {0.5, 1, 2}.
SweepConfig default_sweep_config();

void validate(const SweepConfig& cfg);

/// Cartesian product in (sigma1, sigma2, alpha1, alpha2, rho) order, rho
/// varying fastest.
std::vector<MomentSpec> grid_points(const SweepConfig& cfg);

struct ReportRow {
  std::size_t index = 0;
  BoundReport report;
  std::optional<double> moment;  // closed-form E|X1|^a1 |X2|^a2
  std::optional<OracleEstimate> quadrature;
  std::optional<OracleEstimate> monte_carlo;
  std::vector<std::string> flags;
};

ReportRow evaluate_row(const MomentSpec& spec, std::size_t index, const SweepConfig& cfg);

/// Evaluates every grid point, concurrently when cfg.jobs != 1. Rows come
/// back in grid order.
std::vector<ReportRow> run_sweep(const SweepConfig& cfg);

struct SweepSummary {
  std::size_t rows = 0;
  std::size_t checked = 0;
  std::size_t satisfied = 0;
  std::size_t violated = 0;
  std::size_t vacuous = 0;
  std::size_t errored = 0;
  std::size_t oracle_mismatch = 0;
  bool any_domain_error = false;
};

SweepSummary summarize(const std::vector<ReportRow>& rows);

/// 0 all satisfied, 1 an inequality failed, 2 a row had invalid arguments,
/// 3 a row failed numerically.
int exit_code(const SweepSummary& s);

std::string summary_line(const SweepSummary& s);

/// Column order shared by the JSON objects and the CSV header.
const std::vector<std::string>& report_columns();
std::string to_json_line(const ReportRow& row);
std::string csv_header();
std::string to_csv_line(const ReportRow& row);
std::string serialize(const std::vector<ReportRow>& rows, OutputFormat format);

struct CurveRow {
  double rho = 0.0;
  double gap = 0.0;
  double bound_low = 0.0;
  double bound_high = 0.0;
};

/// Gap and bounds at rho_count points spread evenly over [0, 0.99]; the rho
/// field of `spec` is ignored.
std::vector<CurveRow> curve(const MomentSpec& spec, std::size_t rho_count);
std::string curve_csv(const std::vector<CurveRow>& rows);

/// Shortest round-trip decimal form; infinities as "+inf"/"-inf".
std::string format_double(double x);

}  // namespace gpi
