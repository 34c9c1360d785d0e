#ifndef GPI_GPI_H
#define GPI_GPI_H

/* C interface to the gpi shared library. Every call returns a gpi_status;
   on failure gpi_last_error() describes the most recent error on the
   calling thread. Strings handed out by the library are released with
   gpi_free_string. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GPI_BUILDING_LIBRARY)
#    define GPI_API __declspec(dllexport)
#  else
#    define GPI_API __declspec(dllimport)
#  endif
#else
#  define GPI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gpi_status {
  GPI_OK = 0,
  GPI_E_DOMAIN = 1,
  GPI_E_NONCONVERGENCE = 2,
  GPI_E_DIVERGENCE = 3,
  GPI_E_QUADRATURE = 4,
  GPI_E_INFINITE_VARIANCE = 5,
  GPI_E_IO = 6,
  GPI_E_ACCURACY = 7, /* estimate written, but its error exceeds the target */
  GPI_E_INTERNAL = 8
} gpi_status;

typedef struct gpi_moment_spec {
  double sigma1;
  double sigma2;
  double alpha1;
  double alpha2;
  double rho;
} gpi_moment_spec;

typedef enum gpi_oracle { GPI_ORACLE_NONE, GPI_ORACLE_QUADRATURE, GPI_ORACLE_MC, GPI_ORACLE_BOTH } gpi_oracle;
typedef enum gpi_format { GPI_FORMAT_JSON, GPI_FORMAT_CSV } gpi_format;
typedef enum gpi_axis { GPI_AXIS_ALPHA1, GPI_AXIS_ALPHA2, GPI_AXIS_RHO, GPI_AXIS_SIGMA1, GPI_AXIS_SIGMA2 } gpi_axis;

typedef struct gpi_sweep_summary {
  size_t rows;
  size_t checked;
  size_t satisfied;
  size_t violated;
  size_t vacuous;
  size_t errored;
  size_t oracle_mismatch;
  int exit_code; /* 0 ok, 1 violation, 2 invalid arguments, 3 numerical failure */
} gpi_sweep_summary;

typedef struct gpi_sweep_config gpi_sweep_config;
typedef struct gpi_sweep_result gpi_sweep_result;

GPI_API const char* gpi_version(void);
GPI_API const char* gpi_last_error(void);
GPI_API const char* gpi_status_name(gpi_status status);
GPI_API void gpi_free_string(char* s);

GPI_API gpi_status gpi_abs_moment_1d(double sigma, double alpha, double* out);
GPI_API gpi_status gpi_product_moment(const gpi_moment_spec* spec, double* out);
/* |rho| = 1 with sigma1 == sigma2; +inf when alpha1 + alpha2 <= -1. */
GPI_API gpi_status gpi_product_moment_rho_one(const gpi_moment_spec* spec, double* out);
GPI_API gpi_status gpi_gap(const gpi_moment_spec* spec, double* out);
GPI_API gpi_status gpi_quad_product_moment(const gpi_moment_spec* spec, double target_rel_err,
                                           double* value, double* error_estimate);
GPI_API gpi_status gpi_mc_product_moment(const gpi_moment_spec* spec, uint64_t n_samples,
                                         uint64_t seed, double* value, double* std_error);

/* Gap against the applicable bound, as one JSON object. *satisfied is 1 when
   the inequality held within tol * max(1, |gap|). */
GPI_API gpi_status gpi_check_point(const gpi_moment_spec* spec, double tol, char** json,
                                   int* satisfied);

GPI_API gpi_sweep_config* gpi_sweep_config_new(void); /* default grid */
GPI_API void gpi_sweep_config_free(gpi_sweep_config* cfg);
GPI_API gpi_status gpi_sweep_config_set_axis(gpi_sweep_config* cfg, gpi_axis axis,
                                             const double* values, size_t count);
GPI_API gpi_status gpi_sweep_config_set_tolerance(gpi_sweep_config* cfg, double tol);
GPI_API gpi_status gpi_sweep_config_set_oracle(gpi_sweep_config* cfg, gpi_oracle oracle);
GPI_API gpi_status gpi_sweep_config_set_mc(gpi_sweep_config* cfg, uint64_t n_samples,
                                           uint64_t master_seed);
GPI_API gpi_status gpi_sweep_config_set_jobs(gpi_sweep_config* cfg, unsigned jobs);

GPI_API gpi_status gpi_sweep_run(const gpi_sweep_config* cfg, gpi_sweep_result** out);
GPI_API void gpi_sweep_result_free(gpi_sweep_result* res);
GPI_API gpi_status gpi_sweep_result_summary(const gpi_sweep_result* res, gpi_sweep_summary* out);
GPI_API gpi_status gpi_sweep_result_serialize(const gpi_sweep_result* res, gpi_format format,
                                              char** out);
/* Column names of the CSV header, comma separated. */
GPI_API gpi_status gpi_report_columns(char** out);

/* CSV of (rho, gap, bound_low, bound_high); spec->rho is ignored. */
GPI_API gpi_status gpi_curve_csv(const gpi_moment_spec* spec, size_t rho_count, char** out);

/* Runs the identity suites; the report is plain text, or JSON when json != 0. */
GPI_API gpi_status gpi_selftest(int inject_fault, int json, char** report, int* passed);

#ifdef __cplusplus
}
#endif

#endif
