#pragma once

#include "ratioci/confidence_set.hpp"
#include "ratioci/stats_core.hpp"

namespace ratioci {

// rho_hat = mean_y / mean_x.
double point_estimate(const SummaryStats& stats);

// Pivot T0(rho) = (mean_y - rho mean_x) / sqrt(v_y - 2 rho c + rho^2 v_x).
double t0_statistic(const SummaryStats& stats, double rho);

// The set {rho : t_lo <= T0(rho) <= t_hi}.
//
// Symmetric limits (t_lo == -t_hi) take the closed-form Fieller route: the
// bounded case when mean_x is significant (mean_x^2/v_x > t^2), otherwise
// the unbounded-exclusive or whole-line case depending on t_unbounded^2.
// Asymmetric limits are inverted exactly by locating every crossing of T0
// with either limit plus the single stationary point of T0 and testing each
// resulting segment. `diagnostics` is filled when non-null.
ConfidenceSet invert_t0(const SummaryStats& stats, double t_lo, double t_hi,
                        FiellerDiagnostics* diagnostics = nullptr);

MethodResult fieller_set(const SummaryStats& stats, const ConfidenceSpec& spec);
MethodResult taylor_limits(const SummaryStats& stats, const ConfidenceSpec& spec);

// Per-subject ratio methods. The quantile in `spec` is recomputed whenever
// the method's own degrees of freedom differ from spec.df.
MethodResult index_limits(const PairedSample& sample, const ConfidenceSpec& spec);
MethodResult trimmed_index_limits(const PairedSample& sample, const ConfidenceSpec& spec,
                                  double trim = 0.25);
MethodResult zero_variance_limits(const PairedSample& sample, const ConfidenceSpec& spec);

namespace detail {
// Segment-testing inversion used for asymmetric limits; exposed so tests can
// run it against the closed-form symmetric route.
ConfidenceSet invert_t0_general(const SummaryStats& stats, double t_lo, double t_hi);
}  // namespace detail

}  // namespace ratioci
