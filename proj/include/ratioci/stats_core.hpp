#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ratioci/rng.hpp"

namespace ratioci {

inline constexpr double kInfiniteDf = std::numeric_limits<double>::infinity();

// N paired observations (x_i, y_i); x is the denominator, y the numerator.
// Construction validates: equal lengths, at least two pairs, all finite.
class PairedSample {
 public:
  PairedSample(std::vector<double> xs, std::vector<double> ys);

  std::span<const double> xs() const noexcept { return xs_; }
  std::span<const double> ys() const noexcept { return ys_; }
  std::size_t size() const noexcept { return xs_.size(); }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

// Sufficient statistics consumed by every closed-form method. The variances
// and covariance are those of the sample *means* (divided by N once more).
struct SummaryStats {
  std::size_t n = 0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  double var_mean_x = 0.0;
  double var_mean_y = 0.0;
  double cov_mean_xy = 0.0;
  std::size_t df = 0;
};

SummaryStats summarize(const PairedSample& sample);

struct CoefficientsOfVariation {
  double mean_x = 0.0;
  double mean_y = 0.0;
};

// Signed CVs of the sample means: sqrt(var_mean)/mean.
CoefficientsOfVariation coefficient_of_variation(const SummaryStats& stats);

// Student-t inverse CDF; df may be kInfiniteDf for the normal quantile.
double t_quantile(double p, double df);
double t_cdf(double t, double df);
double normal_quantile(double p);
double normal_cdf(double z);

// Confidence level 1 - alpha plus its two-sided t quantile at df.
struct ConfidenceSpec {
  double level = 0.95;
  double df = kInfiniteDf;
  double quantile = 0.0;

  static ConfidenceSpec make(double level, double df);
  // Same level, different degrees of freedom.
  ConfidenceSpec with_df(double new_df) const { return make(level, new_df); }
};

struct BivariateNormalParams {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double sd_x = 1.0;
  double sd_y = 1.0;
  double corr = 0.0;

  void validate() const;
};

PairedSample sample_bivariate_normal(const BivariateNormalParams& params, std::size_t n,
                                     std::uint64_t seed);
PairedSample sample_bivariate_normal(const BivariateNormalParams& params, std::size_t n,
                                     Rng& rng);

}  // namespace ratioci
