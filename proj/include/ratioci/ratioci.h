#ifndef RATIOCI_H
#define RATIOCI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RATIOCI_BUILDING)
#    define RATIOCI_API __declspec(dllexport)
#  else
#    define RATIOCI_API __declspec(dllimport)
#  endif
#else
#  define RATIOCI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ratioci_status {
  RATIOCI_OK = 0,
  RATIOCI_ERR_INVALID_ARGUMENT = 1,
  RATIOCI_ERR_DOMAIN = 2,
  RATIOCI_ERR_TOO_FEW_OBSERVATIONS = 3,
  RATIOCI_ERR_NON_FINITE_INPUT = 4,
  RATIOCI_ERR_ZERO_MEAN = 5,
  RATIOCI_ERR_ZERO_DENOMINATOR = 6,
  RATIOCI_ERR_ZERO_NUMERATOR = 7,
  RATIOCI_ERR_ZERO_INDIVIDUAL_DENOMINATOR = 8,
  RATIOCI_ERR_DEGENERATE_VARIANCE = 9,
  RATIOCI_ERR_NON_FINITE_RESULT = 10,
  RATIOCI_ERR_TOO_FEW_AFTER_TRIM = 11,
  RATIOCI_ERR_TOO_FEW_REPLICATES = 12,
  RATIOCI_ERR_ALL_RESAMPLES_DEGENERATE = 13,
  RATIOCI_ERR_SINGULAR_COVARIANCE = 14,
  RATIOCI_ERR_RANK_DEFICIENT = 15,
  RATIOCI_ERR_NON_POSITIVE_DATA = 16,
  RATIOCI_ERR_PARSE = 17,
  RATIOCI_ERR_INTERNAL = 99
} ratioci_status;

/* Message of the most recent failure on the calling thread ("" if none). */
RATIOCI_API const char* ratioci_last_error(void);
RATIOCI_API const char* ratioci_status_name(ratioci_status status);

/* Non-zero when the status reports bad input rather than a method that
   cannot be applied to otherwise valid data. */
RATIOCI_API int ratioci_status_is_input_error(ratioci_status status);

typedef enum ratioci_method {
  RATIOCI_METHOD_FIELLER = 0,
  RATIOCI_METHOD_TAYLOR = 1,
  RATIOCI_METHOD_INDEX = 2,
  RATIOCI_METHOD_TRIMMED_INDEX = 3,
  RATIOCI_METHOD_ZERO_VARIANCE = 4,
  RATIOCI_METHOD_BOOTSTRAP_PERCENTILE = 5,
  RATIOCI_METHOD_BOOTSTRAP_BCA = 6,
  RATIOCI_METHOD_HWANG = 7
} ratioci_method;

RATIOCI_API const char* ratioci_method_name(ratioci_method method);
RATIOCI_API ratioci_status ratioci_method_from_name(const char* name, ratioci_method* out);

typedef enum ratioci_set_case {
  RATIOCI_SET_BOUNDED = 0,
  RATIOCI_SET_UNBOUNDED_EXCLUSIVE = 1,
  RATIOCI_SET_WHOLE_LINE = 2,
  RATIOCI_SET_INTERVAL_UNION = 3
} ratioci_set_case;

typedef enum ratioci_format {
  RATIOCI_FORMAT_CSV = 0,
  RATIOCI_FORMAT_JSON = 1,
  RATIOCI_FORMAT_TEXT = 2,
  RATIOCI_FORMAT_SVG = 3
} ratioci_format;

/* Owned, NUL-terminated output buffer. */
typedef struct ratioci_text ratioci_text;
RATIOCI_API const char* ratioci_text_data(const ratioci_text* text);
RATIOCI_API size_t ratioci_text_size(const ratioci_text* text);
RATIOCI_API void ratioci_text_destroy(ratioci_text* text);

/* Paired observations (x = denominator, y = numerator). */
typedef struct ratioci_sample ratioci_sample;
RATIOCI_API ratioci_status ratioci_sample_create(const double* xs, const double* ys, size_t n,
                                                 ratioci_sample** out);
/* CSV text with a header naming the columns; x_column/y_column may be NULL
   for "x" and "y". */
RATIOCI_API ratioci_status ratioci_sample_from_csv(const char* text, size_t size,
                                                   const char* x_column, const char* y_column,
                                                   ratioci_sample** out);
RATIOCI_API void ratioci_sample_destroy(ratioci_sample* sample);
RATIOCI_API size_t ratioci_sample_size(const ratioci_sample* sample);

typedef struct ratioci_summary {
  size_t n;
  double mean_x;
  double mean_y;
  double var_mean_x; /* variance of the mean */
  double var_mean_y;
  double cov_mean_xy;
  size_t df;
} ratioci_summary;

RATIOCI_API ratioci_status ratioci_summarize(const ratioci_sample* sample, ratioci_summary* out);
/* One-row CSV with columns n, mean_x, mean_y, sd_x, sd_y and optional corr. */
RATIOCI_API ratioci_status ratioci_summary_from_csv(const char* text, size_t size,
                                                    ratioci_summary* out);

typedef struct ratioci_ci_options {
  double level;        /* default 0.95 */
  size_t replications; /* bootstrap methods; default 2000 */
  uint64_t seed;       /* bootstrap methods; default 0 */
  double trim;         /* trimmed index; default 0.25 */
} ratioci_ci_options;

RATIOCI_API void ratioci_ci_options_init(ratioci_ci_options* options);

/* For RATIOCI_SET_BOUNDED, [lower, upper] is the set. For
   RATIOCI_SET_UNBOUNDED_EXCLUSIVE the set is the line minus the open interval
   (lower, upper). For the other cases lower/upper are NaN. */
typedef struct ratioci_interval {
  ratioci_method method;
  double estimate;
  ratioci_set_case set_case;
  double lower;
  double upper;
  int has_diagnostics;
  double denom_t_squared;
  double t_unbounded_squared;
} ratioci_interval;

RATIOCI_API ratioci_status ratioci_compute(const ratioci_sample* sample, ratioci_method method,
                                           const ratioci_ci_options* options,
                                           ratioci_interval* out);
RATIOCI_API ratioci_status ratioci_fieller_from_summary(const ratioci_summary* summary, double level,
                                                        ratioci_interval* out);

/* Report of several methods in CSV or JSON. Stops at the first method that
   fails; the error message then names the method. */
RATIOCI_API ratioci_status ratioci_ci_report(const ratioci_sample* sample,
                                             const ratioci_method* methods, size_t method_count,
                                             const ratioci_ci_options* options,
                                             ratioci_format format, ratioci_text** out);

RATIOCI_API ratioci_status ratioci_t_quantile(double p, double df, double* out);

/* Caps worker threads for simulations; 0 means all hardware threads. */
RATIOCI_API void ratioci_set_max_threads(size_t threads);

typedef struct ratioci_grid_options {
  size_t n;
  double corr;
  double cv_x_min, cv_x_max;
  size_t cv_x_steps;
  double cv_y_min, cv_y_max;
  size_t cv_y_steps;
  size_t runs;
  uint64_t seed;
  double level;
  double trim;
  size_t replications;
} ratioci_grid_options;

RATIOCI_API void ratioci_grid_options_init(ratioci_grid_options* options);
RATIOCI_API ratioci_status ratioci_simulate_grid(const ratioci_grid_options* options,
                                                 const ratioci_method* methods,
                                                 size_t method_count, ratioci_format format,
                                                 ratioci_text** out);

typedef struct ratioci_errorbar_options {
  double cv_x;
  double cv_y;
  double corr;
  size_t n;
  size_t runs;
  uint64_t seed;
  double level;
} ratioci_errorbar_options;

RATIOCI_API void ratioci_errorbar_options_init(ratioci_errorbar_options* options);
/* Named cells "A".."D"; fills cv_x and cv_y. */
RATIOCI_API ratioci_status ratioci_reference_point(const char* name, double* cv_x, double* cv_y);
RATIOCI_API ratioci_status ratioci_errorbars(const ratioci_errorbar_options* options,
                                             ratioci_format format, ratioci_text** out);

/* Confidence ellipse and tangent wedge: CSV, JSON or SVG. */
RATIOCI_API ratioci_status ratioci_ellipse(const ratioci_summary* summary, double level,
                                           size_t points, ratioci_format format,
                                           ratioci_text** out);

typedef enum ratioci_model {
  RATIOCI_MODEL_OLS = 0,
  RATIOCI_MODEL_DEFLATED = 1,
  RATIOCI_MODEL_ALLOMETRIC = 2,
  RATIOCI_MODEL_ANCOVA = 3
} ratioci_model;

typedef struct ratioci_regress_options {
  ratioci_model model;
  const char* response;              /* default "y" */
  const char* const* regressors;     /* default {"x"} */
  size_t regressor_count;
  int intercept;                     /* OLS only */
  const char* group;                 /* ANCOVA grouping column; default "group" */
  double level;                      /* Fieller set shown for zero-intercept fits */
} ratioci_regress_options;

RATIOCI_API void ratioci_regress_options_init(ratioci_regress_options* options);
RATIOCI_API ratioci_status ratioci_regress_csv(const char* text, size_t size,
                                               const ratioci_regress_options* options,
                                               ratioci_format format, ratioci_text** out);

/* "stork" or "pang"; TEXT or JSON. */
RATIOCI_API ratioci_status ratioci_demo(const char* name, ratioci_format format,
                                        ratioci_text** out);

#ifdef __cplusplus
}
#endif

#endif
