#include <gtest/gtest.h>

#include <limits>
#include <sstream>

#include <json.hpp>

#include "gpi/selftest.hpp"
#include "gpi/sweep.hpp"

namespace gpi {
namespace {

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.alpha1_values = {-0.5, 1.0};
  cfg.alpha2_values = {-0.9, 2.0, 3.0};
  cfg.rho_values = {0.0, -0.5, 0.9};
  cfg.sigma1_values = {1.0};
  cfg.sigma2_values = {0.5, 2.0};
  return cfg;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Grid, OrderHasRhoFastest) {
  const auto pts = grid_points(small_config());
  ASSERT_EQ(pts.size(), 2u * 3u * 3u * 2u);
  EXPECT_EQ(pts[0].rho, 0.0);
  EXPECT_EQ(pts[1].rho, -0.5);
  EXPECT_EQ(pts[3].alpha2, 2.0);
  EXPECT_EQ(pts[9].alpha1, 1.0);
  EXPECT_EQ(pts[18].sigma2, 2.0);
}

TEST(Grid, DefaultConfigSize) {
  EXPECT_EQ(grid_points(default_sweep_config()).size(), 10u * 10u * 9u * 3u * 3u);
}

TEST(Grid, ValidationRejectsBadAxes) {
  SweepConfig cfg = small_config();
  cfg.rho_values = {1.2};
  EXPECT_THROW(validate(cfg), Error);
  cfg = small_config();
  cfg.alpha1_values = {-1.0};
  EXPECT_THROW(validate(cfg), Error);
  cfg = small_config();
  cfg.tolerance = 0;
  EXPECT_THROW(validate(cfg), Error);
  cfg = small_config();
  cfg.oracle = OracleChoice::MonteCarlo;
  cfg.mc_samples = 10;
  EXPECT_THROW(validate(cfg), Error);
}

TEST(Sweep, ZeroCorrelationRowsAreTriviallySatisfied) {
  SweepConfig cfg = default_sweep_config();
  cfg.rho_values = {0.0};
  for (const ReportRow& row : run_sweep(cfg)) {
    EXPECT_TRUE(row.report.satisfied);
    EXPECT_EQ(row.report.gap, 0.0);
    if (row.report.same_sign) EXPECT_EQ(row.report.same_sign->value, 0.0);
  }
}

TEST(Sweep, DefaultGridHasNoViolations) {
  const auto rows = run_sweep(default_sweep_config());
  const SweepSummary s = summarize(rows);
  EXPECT_EQ(s.rows, 8100u);
  EXPECT_EQ(s.violated, 0u);
  EXPECT_EQ(s.errored, 0u);
  EXPECT_EQ(s.satisfied, s.checked);
  EXPECT_GT(s.vacuous, 0u);
  EXPECT_EQ(exit_code(s), 0);
}

TEST(Sweep, VacuousRowsAreFlaggedNotFailed) {
  SweepConfig cfg;
  cfg.alpha1_values = {-0.9};
  cfg.alpha2_values = {0.05};
  cfg.rho_values = {0.5};
  cfg.sigma1_values = {1.0};
  cfg.sigma2_values = {1.0};
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].report.satisfied);
  EXPECT_EQ(rows[0].flags, std::vector<std::string>{"vacuous_lower"});
  EXPECT_EQ(summarize(rows).vacuous, 1u);
}

TEST(Sweep, ZeroExponentRowIsADomainError) {
  SweepConfig cfg = small_config();
  cfg.alpha1_values = {0.0};
  const auto rows = run_sweep(cfg);
  const SweepSummary s = summarize(rows);
  EXPECT_EQ(s.errored, rows.size());
  EXPECT_EQ(exit_code(s), 2);
  EXPECT_EQ(rows[0].flags[0], "error:domain");
}

TEST(Sweep, OracleColumnsAgree) {
  SweepConfig cfg = small_config();
  cfg.oracle = OracleChoice::Both;
  cfg.mc_samples = 200000;
  const auto rows = run_sweep(cfg);
  for (const ReportRow& row : rows) {
    ASSERT_TRUE(row.moment.has_value());
    ASSERT_TRUE(row.quadrature.has_value());
    const bool eligible = std::min(row.report.spec.alpha1, row.report.spec.alpha2) > -0.5;
    EXPECT_EQ(row.monte_carlo.has_value(), eligible);
    for (const std::string& f : row.flags) EXPECT_NE(f, "quadrature_mismatch");
  }
  EXPECT_EQ(summarize(rows).violated, 0u);
}

TEST(Sweep, OutputIsIndependentOfThreadCount) {
  SweepConfig cfg = small_config();
  cfg.oracle = OracleChoice::MonteCarlo;
  cfg.mc_samples = 5000;
  cfg.master_seed = 77;
  cfg.jobs = 1;
  const std::string one = serialize(run_sweep(cfg), OutputFormat::Json);
  cfg.jobs = 4;
  const std::string four = serialize(run_sweep(cfg), OutputFormat::Json);
  EXPECT_EQ(one, four);
  cfg.master_seed = 78;
  EXPECT_NE(one, serialize(run_sweep(cfg), OutputFormat::Json));
}

TEST(Serialize, JsonRowsCarryEveryColumnInOrder) {
  const auto rows = run_sweep(small_config());
  const auto text = lines(serialize(rows, OutputFormat::Json));
  ASSERT_EQ(text.size(), rows.size());
  for (const std::string& line : text) {
    const auto j = nlohmann::ordered_json::parse(line);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, report_columns());
    EXPECT_TRUE(j["quadrature_value"].is_null());
    EXPECT_TRUE(j["mc_value"].is_null());
  }
}

TEST(Serialize, InfinitiesBecomeStrings) {
  SweepConfig cfg = small_config();
  cfg.alpha1_values = {-0.5};
  cfg.alpha2_values = {1.0};
  cfg.rho_values = {0.5};
  cfg.sigma2_values = {1.0};
  const auto j = nlohmann::ordered_json::parse(to_json_line(run_sweep(cfg)[0]));
  EXPECT_EQ(j["lower"], "-inf");
  EXPECT_EQ(j["finite_lower"], false);
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "+inf");
}

TEST(Serialize, CsvHasHeaderAndFixedWidth) {
  const auto rows = run_sweep(small_config());
  const auto text = lines(serialize(rows, OutputFormat::Csv));
  ASSERT_EQ(text.size(), rows.size() + 1);
  EXPECT_EQ(text[0], csv_header());
  const auto commas = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  for (const std::string& line : text) EXPECT_EQ(commas(line), commas(text[0]));
}

TEST(Serialize, ShortestRoundTripDoubles) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-300), "1e-300");
  EXPECT_EQ(std::stod(format_double(0.7179955620884583)), 0.7179955620884583);
}

TEST(Curve, EqualityWitnessAtExponentTwo) {
  const auto rows = curve({1.5, 0.5, 2, 2, 0}, 25);
  ASSERT_EQ(rows.size(), 25u);
  EXPECT_EQ(rows.front().rho, 0.0);
  EXPECT_EQ(rows.back().rho, 0.99);
  for (const CurveRow& r : rows) {
    EXPECT_NEAR(r.gap, r.bound_low, 1e-12 * std::max(1.0, r.gap));
  }
  EXPECT_EQ(rows[0].gap, 0.0);
  EXPECT_EQ(rows[0].bound_low, 0.0);
}

TEST(Curve, SameSignGapDominatesBound) {
  for (const CurveRow& r : curve({1, 1, 1, 1, 0}, 50)) {
    EXPECT_GE(r.gap, r.bound_low);
    EXPECT_GE(r.bound_low, 0.0);
  }
}

TEST(Curve, OppositeSignColumns) {
  for (const CurveRow& r : curve({1, 1, -0.5, 3, 0}, 20)) {
    EXPECT_LE(r.bound_low, r.gap + 1e-12);
    EXPECT_LE(r.gap, r.bound_high + 1e-12);
  }
  EXPECT_THROW(curve({1, 1, 0, 3, 0}, 20), Error);
  EXPECT_THROW(curve({1, 1, 1, 3, 0}, 1), Error);
  EXPECT_EQ(lines(curve_csv(curve({1, 1, 1, 1, 0}, 3)))[0], "rho,gap,bound_low,bound_high");
}

TEST(Selftest, AllSuitesPass) {
  const auto suites = run_selftest();
  EXPECT_EQ(suites.size(), 6u);
  for (const SuiteResult& s : suites) {
    EXPECT_EQ(s.failed, 0u) << s.name << ": " << s.first_failure;
    EXPECT_GT(s.passed, 0u) << s.name;
  }
  EXPECT_TRUE(all_passed(suites));
}

TEST(Selftest, InjectedFaultIsCaught) {
  SelftestOptions opts;
  opts.inject_fault = true;
  const auto suites = run_selftest(opts);
  EXPECT_FALSE(all_passed(suites));
  const auto j = nlohmann::json::parse(selftest_json(suites));
  EXPECT_FALSE(j["passed"].get<bool>());
}

}  // namespace
}  // namespace gpi
