#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ratioci/confidence_set.hpp"
#include "ratioci/stats_core.hpp"

namespace ratioci {

enum class BootstrapInterval { Percentile, BCa };

struct BootstrapConfig {
  std::size_t replications = 2000;
  std::uint64_t seed = 0;
  BootstrapInterval method = BootstrapInterval::BCa;
};

// Sorted bootstrap replicates of a statistic. Non-finite replicates are
// dropped and counted in `dropped`.
struct EmpiricalDistribution {
  std::vector<double> values;
  std::size_t dropped = 0;

  std::size_t count() const noexcept { return values.size(); }
};

using PairStatistic = std::function<double(const PairedSample&)>;

// B with-replacement resamples of size N; replication r draws from its own
// substream derive_seed(config.seed, {r}), so the result does not depend on
// how replications are scheduled.
EmpiricalDistribution resample_pairs(const PairedSample& sample, const BootstrapConfig& config,
                                     const PairStatistic& statistic);

// Linear interpolation between order statistics at h = (B-1) p (the
// "(k-1)/(B-1)" plotting-position rule).
double empirical_quantile(std::span<const double> sorted, double p);

ConfidenceSet percentile_ci(const EmpiricalDistribution& dist, double level);

// Adjusted tail probabilities (alpha_lo, alpha_hi) of the BCa construction.
std::pair<double, double> bca_levels(double z0, double acceleration, double level);

// Bias correction from the share of replicates below theta_hat and the
// jackknife skewness estimate of the acceleration.
double bca_bias_correction(const EmpiricalDistribution& dist, double theta_hat);
double jackknife_acceleration(std::span<const double> leave_one_out);

struct BcaOutcome {
  ConfidenceSet set;
  double z0 = 0.0;
  double acceleration = 0.0;
  bool fell_back_to_percentile = false;
};

BcaOutcome bca_from_distribution(const EmpiricalDistribution& dist, double theta_hat,
                                 std::span<const double> leave_one_out, double level);

ConfidenceSet bca_ci(const PairedSample& sample, const PairStatistic& statistic,
                     const BootstrapConfig& config, double level);

// Standard bootstrap of rho_hat = mean_y/mean_x (percentile or BCa per config).
MethodResult bootstrap_ratio(const PairedSample& sample, const BootstrapConfig& config,
                             double level);

// Both standard intervals from one set of replicates (config.method ignored).
struct RatioBootstrap {
  MethodResult percentile;
  MethodResult bca;
};
RatioBootstrap bootstrap_ratio_both(const PairedSample& sample, const BootstrapConfig& config,
                                    double level);

struct HwangQuantiles {
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::size_t dropped = 0;
  bool fell_back_to_percentile = false;
};

// Quantiles of the bootstrap pivot T0* = T0(mean_x*, mean_y*, rho_hat), each
// resample using its own variance estimates.
HwangQuantiles hwang_quantiles(const PairedSample& sample, const BootstrapConfig& config,
                               double level);

// Bootstrap on T0 followed by the Fieller inversion at the bootstrap quantiles.
MethodResult hwang_set(const PairedSample& sample, const BootstrapConfig& config,
                       const ConfidenceSpec& spec);

}  // namespace ratioci
