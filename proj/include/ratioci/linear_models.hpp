#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ratioci/stats_core.hpp"

namespace ratioci {

struct Regressor {
  std::string name;
  std::vector<double> values;
};

struct Coefficient {
  std::string name;
  double estimate = 0.0;
  double standard_error = 0.0;
  double t_value = 0.0;
  double p_value = 1.0;  // two-sided, t with `df` degrees of freedom
};

struct RegressionFit {
  std::vector<Coefficient> coefficients;
  std::size_t n = 0;
  std::size_t df = 0;
  double rss = 0.0;
  double residual_variance = 0.0;
  double r_squared = 0.0;  // uncentered when the model has no intercept
  std::vector<double> residuals;

  const Coefficient& coef(std::string_view name) const;
  double operator[](std::string_view name) const { return coef(name).estimate; }
};

struct ModelComparison {
  RegressionFit restricted;
  RegressionFit full;
  double f_statistic = 0.0;
  double p_value = 1.0;
  std::size_t df_numerator = 0;
  std::size_t df_denominator = 0;
};

inline constexpr std::string_view kInterceptName = "intercept";

// Least squares via column-pivoted QR. Requires n > p and full column rank.
RegressionFit ols_fit(std::span<const double> y, const std::vector<Regressor>& regressors,
                      bool intercept);

// Nested-model F-test; `full` must contain every column of `restricted`.
ModelComparison compare_nested(std::span<const double> y, const std::vector<Regressor>& restricted,
                               const std::vector<Regressor>& full, bool intercept);

// y_gi = beta_g x_gi per group (zero intercept) against a common slope.
ModelComparison ancova_ratio_compare(const std::vector<PairedSample>& groups);

// y/x = alpha (1/x) + beta: same parameters as y = alpha + beta x with
// errors proportional to x. Coefficients are named "alpha" and "beta".
RegressionFit deflated_fit(const PairedSample& sample);

struct AllometricFit {
  RegressionFit log_fit;  // "log_beta" followed by one exponent per regressor
  double log_beta = 0.0;
  double beta = 0.0;
  std::vector<double> exponents;
};

// log y = log beta + sum_k gamma_k log x_k. With a single regressor the
// exponent is named "gamma", otherwise "gamma_<name>".
AllometricFit allometric_fit(std::span<const double> y, const std::vector<Regressor>& regressors);
AllometricFit allometric_fit(const PairedSample& sample);

struct SpuriousDemo {
  std::vector<double> x;  // e.g. women
  std::vector<double> y;  // babies
  std::vector<double> z;  // storks
  ModelComparison partial;     // y ~ 1 + x  vs  y ~ 1 + x + z
  ModelComparison rate_based;  // y/x ~ 1  vs  y/x ~ 1 + z/x
};

SpuriousDemo spurious_demo(std::span<const double> x, std::span<const double> y,
                           std::span<const double> z);

struct StorkTable {
  std::vector<double> women;
  std::vector<double> babies;
  std::vector<double> storks;
};
const StorkTable& stork_table();

}  // namespace ratioci
