#include "ratioci/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ratioci/error.hpp"
#include "ratioci/ratio_ci.hpp"
#include "ratioci/rng.hpp"

namespace ratioci {
namespace {

constexpr std::size_t kMinReplicates = 100;
constexpr std::size_t kRecommendedBcaReplicates = 1000;

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::DomainError,
                "confidence level must lie in (0,1), got " + std::to_string(level));
  }
}

void check_config(const BootstrapConfig& config) {
  if (config.replications < kMinReplicates) {
    throw Error(ErrorCode::TooFewReplicates,
                "need at least " + std::to_string(kMinReplicates) + " bootstrap replications");
  }
}

// Runs `replicate(rng)` once per replication on its own substream, then sorts.
template <typename Replicate>
EmpiricalDistribution collect(const BootstrapConfig& config, Replicate&& replicate) {
  check_config(config);
  EmpiricalDistribution dist;
  dist.values.reserve(config.replications);
  for (std::size_t r = 0; r < config.replications; ++r) {
    Rng rng(derive_seed(config.seed, {r}));
    const double v = replicate(rng);
    if (std::isfinite(v)) {
      dist.values.push_back(v);
    } else {
      ++dist.dropped;
    }
  }
  if (2 * dist.dropped > config.replications) {
    throw Error(ErrorCode::AllResamplesDegenerate,
                std::to_string(dist.dropped) + " of " + std::to_string(config.replications) +
                    " bootstrap replicates were not finite");
  }
  std::sort(dist.values.begin(), dist.values.end());
  return dist;
}

// One-sample t statistic of d; the Hwang pivot reduces to this with
// d_i = y_i - rho_hat x_i, because var(mean_y - rho mean_x) = var(mean d).
double t_of_sums(double sum, double sum_sq, double n) {
  const double mean = sum / n;
  const double var = (sum_sq - sum * mean) / (n - 1.0);
  if (!(var > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return mean / std::sqrt(var / n);
}

void add_diagnostic_warnings(MethodResult& res, const BootstrapConfig& config,
                             std::size_t dropped) {
  if (config.method == BootstrapInterval::BCa &&
      config.replications < kRecommendedBcaReplicates) {
    res.warnings.push_back("BCa with fewer than 1000 replications is unreliable");
  }
  if (dropped > 0) {
    res.warnings.push_back(std::to_string(dropped) + " non-finite bootstrap replicates dropped");
  }
}

}  // namespace

EmpiricalDistribution resample_pairs(const PairedSample& sample, const BootstrapConfig& config,
                                     const PairStatistic& statistic) {
  const auto xs = sample.xs();
  const auto ys = sample.ys();
  const std::size_t n = sample.size();
  return collect(config, [&](Rng& rng) {
    std::vector<double> bx(n), by(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(rng.below(n));
      bx[i] = xs[k];
      by[i] = ys[k];
    }
    return statistic(PairedSample(std::move(bx), std::move(by)));
  });
}

double empirical_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) {
    throw Error(ErrorCode::TooFewReplicates, "quantile of an empty distribution");
  }
  p = std::clamp(p, 0.0, 1.0);
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

ConfidenceSet percentile_ci(const EmpiricalDistribution& dist, double level) {
  check_level(level);
  if (dist.count() < kMinReplicates) {
    throw Error(ErrorCode::TooFewReplicates,
                "percentile interval needs at least 100 finite replicates");
  }
  const double alpha = 1.0 - level;
  return Bounded{empirical_quantile(dist.values, alpha / 2.0),
                 empirical_quantile(dist.values, 1.0 - alpha / 2.0)};
}

std::pair<double, double> bca_levels(double z0, double acceleration, double level) {
  check_level(level);
  const double alpha = 1.0 - level;
  auto adjust = [&](double p) {
    const double z = normal_quantile(p);
    const double denom = 1.0 - acceleration * (z0 + z);
    if (!(denom > 0.0)) return z > 0.0 ? 1.0 : 0.0;
    return normal_cdf(z0 + (z0 + z) / denom);
  };
  return {adjust(alpha / 2.0), adjust(1.0 - alpha / 2.0)};
}

double bca_bias_correction(const EmpiricalDistribution& dist, double theta_hat) {
  const auto b = static_cast<double>(dist.count());
  const auto below = static_cast<double>(
      std::lower_bound(dist.values.begin(), dist.values.end(), theta_hat) - dist.values.begin());
  // Keep the share away from 0 and 1 so z0 stays finite.
  const double share = std::clamp(below / b, 0.5 / b, 1.0 - 0.5 / b);
  return normal_quantile(share);
}

double jackknife_acceleration(std::span<const double> leave_one_out) {
  if (leave_one_out.empty()) return std::numeric_limits<double>::quiet_NaN();
  double mean = 0.0;
  for (double v : leave_one_out) mean += v;
  mean /= static_cast<double>(leave_one_out.size());
  double s2 = 0.0, s3 = 0.0;
  for (double v : leave_one_out) {
    const double l = mean - v;
    s2 += l * l;
    s3 += l * l * l;
  }
  if (!(s2 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return s3 / (6.0 * std::pow(s2, 1.5));
}

BcaOutcome bca_from_distribution(const EmpiricalDistribution& dist, double theta_hat,
                                 std::span<const double> leave_one_out, double level) {
  check_level(level);
  if (dist.count() < kMinReplicates) {
    throw Error(ErrorCode::TooFewReplicates, "BCa interval needs at least 100 finite replicates");
  }
  BcaOutcome out;
  out.acceleration = jackknife_acceleration(leave_one_out);
  if (!std::isfinite(out.acceleration)) {
    out.set = percentile_ci(dist, level);
    out.acceleration = 0.0;
    out.fell_back_to_percentile = true;
    return out;
  }
  out.z0 = bca_bias_correction(dist, theta_hat);
  const auto [p_lo, p_hi] = bca_levels(out.z0, out.acceleration, level);
  out.set = Bounded{empirical_quantile(dist.values, p_lo), empirical_quantile(dist.values, p_hi)};
  return out;
}

ConfidenceSet bca_ci(const PairedSample& sample, const PairStatistic& statistic,
                     const BootstrapConfig& config, double level) {
  const std::size_t n = sample.size();
  if (n < 3) throw Error(ErrorCode::TooFewObservations, "BCa needs at least 3 pairs");
  const EmpiricalDistribution dist = resample_pairs(sample, config, statistic);

  std::vector<double> loo;
  loo.reserve(n);
  const auto xs = sample.xs();
  const auto ys = sample.ys();
  for (std::size_t skip = 0; skip < n; ++skip) {
    std::vector<double> jx, jy;
    jx.reserve(n - 1);
    jy.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == skip) continue;
      jx.push_back(xs[i]);
      jy.push_back(ys[i]);
    }
    loo.push_back(statistic(PairedSample(std::move(jx), std::move(jy))));
  }
  return bca_from_distribution(dist, statistic(sample), loo, level).set;
}

RatioBootstrap bootstrap_ratio_both(const PairedSample& sample, const BootstrapConfig& config,
                                    double level) {
  check_level(level);
  const std::size_t n = sample.size();
  if (n < 3) throw Error(ErrorCode::TooFewObservations, "BCa needs at least 3 pairs");
  const auto xs = sample.xs();
  const auto ys = sample.ys();
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  if (sx == 0.0) throw Error(ErrorCode::ZeroDenominator, "denominator mean is zero");

  const EmpiricalDistribution dist = collect(config, [&](Rng& rng) {
    double bx = 0.0, by = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(rng.below(n));
      bx += xs[k];
      by += ys[k];
    }
    return by / bx;
  });

  RatioBootstrap out;
  out.percentile.method = Method::BootstrapPercentile;
  out.percentile.estimate = sy / sx;
  out.percentile.set = percentile_ci(dist, level);

  out.bca.method = Method::BootstrapBCa;
  out.bca.estimate = sy / sx;
  std::vector<double> loo(n);
  for (std::size_t i = 0; i < n; ++i) loo[i] = (sy - ys[i]) / (sx - xs[i]);
  std::erase_if(loo, [](double v) { return !std::isfinite(v); });
  const BcaOutcome bca = bca_from_distribution(dist, out.bca.estimate, loo, level);
  out.bca.set = bca.set;
  if (bca.fell_back_to_percentile) {
    out.bca.warnings.push_back("degenerate jackknife; percentile interval reported");
  }

  BootstrapConfig as_percentile = config;
  as_percentile.method = BootstrapInterval::Percentile;
  add_diagnostic_warnings(out.percentile, as_percentile, dist.dropped);
  BootstrapConfig as_bca = config;
  as_bca.method = BootstrapInterval::BCa;
  add_diagnostic_warnings(out.bca, as_bca, dist.dropped);
  return out;
}

MethodResult bootstrap_ratio(const PairedSample& sample, const BootstrapConfig& config,
                             double level) {
  RatioBootstrap both = bootstrap_ratio_both(sample, config, level);
  return config.method == BootstrapInterval::Percentile ? std::move(both.percentile)
                                                        : std::move(both.bca);
}

namespace {

struct HwangDraws {
  EmpiricalDistribution dist;
  std::vector<double> leave_one_out;
};

HwangDraws hwang_draws(const PairedSample& sample, const BootstrapConfig& config) {
  const std::size_t n = sample.size();
  if (n < 3) throw Error(ErrorCode::TooFewObservations, "Hwang bootstrap needs at least 3 pairs");
  const SummaryStats stats = summarize(sample);
  const double rho_hat = point_estimate(stats);

  const auto xs = sample.xs();
  const auto ys = sample.ys();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = ys[i] - rho_hat * xs[i];
  const auto nd = static_cast<double>(n);

  HwangDraws out;
  out.dist = collect(config, [&](Rng& rng) {
    double s = 0.0, q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = d[rng.below(n)];
      s += v;
      q += v * v;
    }
    return t_of_sums(s, q, nd);
  });

  double s = 0.0, q = 0.0;
  for (double v : d) {
    s += v;
    q += v * v;
  }
  out.leave_one_out.reserve(n);
  for (double v : d) out.leave_one_out.push_back(t_of_sums(s - v, q - v * v, nd - 1.0));
  return out;
}

}  // namespace

HwangQuantiles hwang_quantiles(const PairedSample& sample, const BootstrapConfig& config,
                               double level) {
  check_level(level);
  const HwangDraws draws = hwang_draws(sample, config);
  HwangQuantiles q;
  q.dropped = draws.dist.dropped;
  ConfidenceSet range;
  const bool jack_ok = std::all_of(draws.leave_one_out.begin(), draws.leave_one_out.end(),
                                   [](double v) { return std::isfinite(v); });
  if (config.method == BootstrapInterval::BCa && jack_ok) {
    // The pivot at the full sample is T0(rho_hat) = 0.
    range = bca_from_distribution(draws.dist, 0.0, draws.leave_one_out, level).set;
  } else {
    q.fell_back_to_percentile = config.method == BootstrapInterval::BCa;
    range = percentile_ci(draws.dist, level);
  }
  q.t_lo = range.bounded().lower;
  q.t_hi = range.bounded().upper;
  return q;
}

MethodResult hwang_set(const PairedSample& sample, const BootstrapConfig& config,
                       const ConfidenceSpec& spec) {
  const SummaryStats stats = summarize(sample);
  MethodResult res;
  res.method = Method::HwangBootstrap;
  res.estimate = point_estimate(stats);
  const HwangQuantiles q = hwang_quantiles(sample, config, spec.level);
  FiellerDiagnostics diag;
  res.set = invert_t0(stats, q.t_lo, q.t_hi, &diag);
  res.diagnostics = diag;
  if (q.fell_back_to_percentile) {
    res.warnings.push_back("degenerate jackknife; percentile quantiles of T0* used");
  }
  add_diagnostic_warnings(res, config, q.dropped);
  return res;
}

}  // namespace ratioci
