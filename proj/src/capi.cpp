#include "gpi/gpi.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "gpi/bounds.hpp"
#include "gpi/oracles.hpp"
#include "gpi/selftest.hpp"
#include "gpi/sweep.hpp"

struct gpi_sweep_config {
  gpi::SweepConfig cfg;
};

struct gpi_sweep_result {
  std::vector<gpi::ReportRow> rows;
};

namespace {

thread_local std::string last_error;

gpi_status status_of(gpi::ErrorCode c) {
  switch (c) {
    case gpi::ErrorCode::Domain: return GPI_E_DOMAIN;
    case gpi::ErrorCode::NonConvergence: return GPI_E_NONCONVERGENCE;
    case gpi::ErrorCode::Divergence: return GPI_E_DIVERGENCE;
    case gpi::ErrorCode::QuadratureFailure: return GPI_E_QUADRATURE;
    case gpi::ErrorCode::InfiniteVariance: return GPI_E_INFINITE_VARIANCE;
    case gpi::ErrorCode::Io: return GPI_E_IO;
  }
  return GPI_E_INTERNAL;
}

gpi_status fail(gpi_status s, const char* what) {
  last_error = what;
  return s;
}

// Runs body, translating exceptions into status codes.
template <class F>
gpi_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return GPI_OK;
  } catch (const gpi::AccuracyError& e) {
    return fail(GPI_E_ACCURACY, e.what());
  } catch (const gpi::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GPI_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GPI_E_INTERNAL, e.what());
  }
}

gpi::MomentSpec to_spec(const gpi_moment_spec* s) {
  if (s == nullptr) gpi::domain_error("spec must not be null");
  return {s->sigma1, s->sigma2, s->alpha1, s->alpha2, s->rho};
}

void require(const void* p, const char* name) {
  if (p == nullptr) gpi::domain_error(std::string(name) + " must not be null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* gpi_version(void) { return "1.0.0"; }

const char* gpi_last_error(void) { return last_error.c_str(); }

const char* gpi_status_name(gpi_status status) {
  switch (status) {
    case GPI_OK: return "ok";
    case GPI_E_DOMAIN: return "domain";
    case GPI_E_NONCONVERGENCE: return "non_convergence";
    case GPI_E_DIVERGENCE: return "divergence";
    case GPI_E_QUADRATURE: return "quadrature_failure";
    case GPI_E_INFINITE_VARIANCE: return "infinite_variance";
    case GPI_E_IO: return "io";
    case GPI_E_ACCURACY: return "accuracy";
    case GPI_E_INTERNAL: return "internal";
  }
  return "unknown";
}

void gpi_free_string(char* s) { std::free(s); }

gpi_status gpi_abs_moment_1d(double sigma, double alpha, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = gpi::abs_moment_1d(sigma, alpha);
  });
}

gpi_status gpi_product_moment(const gpi_moment_spec* spec, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = gpi::product_moment(to_spec(spec));
  });
}

gpi_status gpi_product_moment_rho_one(const gpi_moment_spec* spec, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = gpi::product_moment_rho_one(to_spec(spec));
  });
}

gpi_status gpi_gap(const gpi_moment_spec* spec, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = gpi::gap(to_spec(spec));
  });
}

gpi_status gpi_quad_product_moment(const gpi_moment_spec* spec, double target_rel_err,
                                   double* value, double* error_estimate) {
  return guarded([&] {
    require(value, "value");
    require(error_estimate, "error_estimate");
    gpi::QuadratureConfig cfg;
    cfg.target_rel_err = target_rel_err;
    try {
      const gpi::OracleEstimate e = gpi::quad_product_moment(to_spec(spec), cfg);
      *value = e.value;
      *error_estimate = e.error_estimate;
    } catch (const gpi::AccuracyError& e) {
      *value = e.best_estimate();
      *error_estimate = e.achieved_error();
      throw;
    }
  });
}

gpi_status gpi_mc_product_moment(const gpi_moment_spec* spec, uint64_t n_samples, uint64_t seed,
                                 double* value, double* std_error) {
  return guarded([&] {
    require(value, "value");
    require(std_error, "std_error");
    const gpi::OracleEstimate e = gpi::mc_product_moment(to_spec(spec), {n_samples, seed});
    *value = e.value;
    *std_error = e.error_estimate;
  });
}

gpi_status gpi_check_point(const gpi_moment_spec* spec, double tol, char** json, int* satisfied) {
  gpi_status row_status = GPI_OK;
  std::string message;
  const gpi_status s = guarded([&] {
    require(json, "json");
    require(satisfied, "satisfied");
    if (!(tol > 0.0)) gpi::domain_error("tolerance must be > 0");
    gpi::SweepConfig cfg;
    cfg.tolerance = tol;
    const gpi::ReportRow row = gpi::evaluate_row(to_spec(spec), 0, cfg);
    *json = copy_string(gpi::to_json_line(row));
    *satisfied = row.report.satisfied ? 1 : 0;
    if (row.report.error) {
      row_status = status_of(row.report.error->code());
      message = row.report.error->what();
    }
  });
  if (s != GPI_OK) return s;
  if (row_status != GPI_OK) return fail(row_status, message.c_str());
  return GPI_OK;
}

gpi_sweep_config* gpi_sweep_config_new(void) {
  try {
    return new gpi_sweep_config{gpi::default_sweep_config()};
  } catch (const std::exception& e) {
    fail(GPI_E_INTERNAL, e.what());
    return nullptr;
  }
}

void gpi_sweep_config_free(gpi_sweep_config* cfg) { delete cfg; }

gpi_status gpi_sweep_config_set_axis(gpi_sweep_config* cfg, gpi_axis axis, const double* values,
                                     size_t count) {
  return guarded([&] {
    require(cfg, "cfg");
    if (count == 0) gpi::domain_error("an axis needs at least one value");
    require(values, "values");
    std::vector<double> v(values, values + count);
    switch (axis) {
      case GPI_AXIS_ALPHA1: cfg->cfg.alpha1_values = std::move(v); break;
      case GPI_AXIS_ALPHA2: cfg->cfg.alpha2_values = std::move(v); break;
      case GPI_AXIS_RHO: cfg->cfg.rho_values = std::move(v); break;
      case GPI_AXIS_SIGMA1: cfg->cfg.sigma1_values = std::move(v); break;
      case GPI_AXIS_SIGMA2: cfg->cfg.sigma2_values = std::move(v); break;
      default: gpi::domain_error("unknown axis");
    }
  });
}

gpi_status gpi_sweep_config_set_tolerance(gpi_sweep_config* cfg, double tol) {
  return guarded([&] {
    require(cfg, "cfg");
    if (!(tol > 0.0)) gpi::domain_error("tolerance must be > 0");
    cfg->cfg.tolerance = tol;
  });
}

gpi_status gpi_sweep_config_set_oracle(gpi_sweep_config* cfg, gpi_oracle oracle) {
  return guarded([&] {
    require(cfg, "cfg");
    switch (oracle) {
      case GPI_ORACLE_NONE: cfg->cfg.oracle = gpi::OracleChoice::None; break;
      case GPI_ORACLE_QUADRATURE: cfg->cfg.oracle = gpi::OracleChoice::Quadrature; break;
      case GPI_ORACLE_MC: cfg->cfg.oracle = gpi::OracleChoice::MonteCarlo; break;
      case GPI_ORACLE_BOTH: cfg->cfg.oracle = gpi::OracleChoice::Both; break;
      default: gpi::domain_error("unknown oracle");
    }
  });
}

gpi_status gpi_sweep_config_set_mc(gpi_sweep_config* cfg, uint64_t n_samples,
                                   uint64_t master_seed) {
  return guarded([&] {
    require(cfg, "cfg");
    if (n_samples < 1000) gpi::domain_error("mc samples must be >= 1000");
    cfg->cfg.mc_samples = n_samples;
    cfg->cfg.master_seed = master_seed;
  });
}

gpi_status gpi_sweep_config_set_jobs(gpi_sweep_config* cfg, unsigned jobs) {
  return guarded([&] {
    require(cfg, "cfg");
    cfg->cfg.jobs = jobs;
  });
}

gpi_status gpi_sweep_run(const gpi_sweep_config* cfg, gpi_sweep_result** out) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = nullptr;
    auto res = std::make_unique<gpi_sweep_result>();
    res->rows = gpi::run_sweep(cfg->cfg);
    *out = res.release();
  });
}

void gpi_sweep_result_free(gpi_sweep_result* res) { delete res; }

gpi_status gpi_sweep_result_summary(const gpi_sweep_result* res, gpi_sweep_summary* out) {
  return guarded([&] {
    require(res, "res");
    require(out, "out");
    const gpi::SweepSummary s = gpi::summarize(res->rows);
    *out = {s.rows, s.checked, s.satisfied, s.violated, s.vacuous, s.errored, s.oracle_mismatch,
            gpi::exit_code(s)};
  });
}

gpi_status gpi_sweep_result_serialize(const gpi_sweep_result* res, gpi_format format, char** out) {
  return guarded([&] {
    require(res, "res");
    require(out, "out");
    const auto f = format == GPI_FORMAT_CSV ? gpi::OutputFormat::Csv : gpi::OutputFormat::Json;
    *out = copy_string(gpi::serialize(res->rows, f));
  });
}

gpi_status gpi_report_columns(char** out) {
  return guarded([&] {
    require(out, "out");
    *out = copy_string(gpi::csv_header());
  });
}

gpi_status gpi_curve_csv(const gpi_moment_spec* spec, size_t rho_count, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = copy_string(gpi::curve_csv(gpi::curve(to_spec(spec), rho_count)));
  });
}

gpi_status gpi_selftest(int inject_fault, int json, char** report, int* passed) {
  return guarded([&] {
    require(report, "report");
    require(passed, "passed");
    gpi::SelftestOptions opts;
    opts.inject_fault = inject_fault != 0;
    const auto suites = gpi::run_selftest(opts);
    *report = copy_string(json != 0 ? gpi::selftest_json(suites)
                                                    : gpi::selftest_text(suites));
    *passed = gpi::all_passed(suites) ? 1 : 0;
  });
}

}  // extern "C"
