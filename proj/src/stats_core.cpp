#include "ratioci/stats_core.hpp"

#include <cmath>
#include <string>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "ratioci/error.hpp"

namespace ratioci {

PairedSample::PairedSample(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "paired sample needs equal lengths, got " + std::to_string(xs_.size()) +
                    " x values and " + std::to_string(ys_.size()) + " y values");
  }
  if (xs_.size() < 2) {
    throw Error(ErrorCode::TooFewObservations, "paired sample needs at least 2 pairs");
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) {
      throw Error(ErrorCode::NonFiniteInput,
                  "non-finite value in pair " + std::to_string(i));
    }
  }
}

SummaryStats summarize(const PairedSample& sample) {
  const auto xs = sample.xs();
  const auto ys = sample.ys();
  const std::size_t n = sample.size();
  const auto nd = static_cast<double>(n);

  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / nd;
  const double my = sy / nd;

  // Second pass on deviations; the compensation terms absorb the rounding
  // error left in the means.
  double sxx = 0.0, syy = 0.0, sxy = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
    cx += dx;
    cy += dy;
  }
  sxx -= cx * cx / nd;
  syy -= cy * cy / nd;
  sxy -= cx * cy / nd;

  const double scale = 1.0 / (nd * (nd - 1.0));
  SummaryStats s;
  s.n = n;
  s.mean_x = mx;
  s.mean_y = my;
  s.var_mean_x = std::max(0.0, sxx * scale);
  s.var_mean_y = std::max(0.0, syy * scale);
  s.cov_mean_xy = sxy * scale;
  s.df = n - 1;
  return s;
}

CoefficientsOfVariation coefficient_of_variation(const SummaryStats& stats) {
  if (stats.mean_x == 0.0 || stats.mean_y == 0.0) {
    throw Error(ErrorCode::ZeroMean, "coefficient of variation undefined for a zero mean");
  }
  return {std::sqrt(stats.var_mean_x) / stats.mean_x,
          std::sqrt(stats.var_mean_y) / stats.mean_y};
}

namespace {

void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::DomainError, "probability must lie in (0,1), got " + std::to_string(p));
  }
}

void check_df(double df) {
  if (!(df >= 1.0)) {
    throw Error(ErrorCode::DomainError, "degrees of freedom must be >= 1");
  }
}

}  // namespace

double normal_quantile(double p) {
  check_probability(p);
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double normal_cdf(double z) {
  if (std::isinf(z)) return z > 0 ? 1.0 : 0.0;
  return boost::math::cdf(boost::math::normal_distribution<double>(), z);
}

double t_quantile(double p, double df) {
  check_probability(p);
  check_df(df);
  if (std::isinf(df)) return normal_quantile(p);
  return boost::math::quantile(boost::math::students_t_distribution<double>(df), p);
}

double t_cdf(double t, double df) {
  check_df(df);
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  if (std::isinf(df)) return normal_cdf(t);
  return boost::math::cdf(boost::math::students_t_distribution<double>(df), t);
}

ConfidenceSpec ConfidenceSpec::make(double level, double df) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::DomainError,
                "confidence level must lie in (0,1), got " + std::to_string(level));
  }
  ConfidenceSpec spec;
  spec.level = level;
  spec.df = df;
  spec.quantile = t_quantile(1.0 - (1.0 - level) / 2.0, df);
  return spec;
}

void BivariateNormalParams::validate() const {
  if (!(sd_x > 0.0) || !(sd_y > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "standard deviations must be strictly positive");
  }
  if (!(corr >= -1.0 && corr <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "correlation must lie in [-1,1]");
  }
  if (!std::isfinite(mean_x) || !std::isfinite(mean_y) || !std::isfinite(sd_x) ||
      !std::isfinite(sd_y)) {
    throw Error(ErrorCode::NonFiniteInput, "bivariate normal parameters must be finite");
  }
}

PairedSample sample_bivariate_normal(const BivariateNormalParams& params, std::size_t n,
                                     Rng& rng) {
  params.validate();
  if (n < 2) {
    throw Error(ErrorCode::TooFewObservations, "need at least 2 pairs");
  }
  const double residual = std::sqrt(1.0 - params.corr * params.corr);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    xs[i] = params.mean_x + params.sd_x * z1;
    ys[i] = params.mean_y + params.sd_y * (params.corr * z1 + residual * z2);
  }
  return PairedSample(std::move(xs), std::move(ys));
}

PairedSample sample_bivariate_normal(const BivariateNormalParams& params, std::size_t n,
                                     std::uint64_t seed) {
  Rng rng(seed);
  return sample_bivariate_normal(params, n, rng);
}

}  // namespace ratioci
