#include "ratioci/ratio_ci.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ratioci/error.hpp"

namespace ratioci {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Moments {
  double mx, my, vx, vy, c;
  double det;  // vx*vy - c^2, clamped at zero
  double num;  // mx^2 vy + my^2 vx - 2 c mx my, clamped at zero
};

Moments moments_of(const SummaryStats& s) {
  Moments m{s.mean_x, s.mean_y, s.var_mean_x, s.var_mean_y, s.cov_mean_xy, 0.0, 0.0};
  m.det = std::max(0.0, m.vx * m.vy - m.c * m.c);
  m.num = std::max(0.0, m.mx * m.mx * m.vy + m.my * m.my * m.vx - 2.0 * m.c * m.mx * m.my);
  return m;
}

double denom_t_squared(const Moments& m) {
  if (m.vx > 0.0) return m.mx * m.mx / m.vx;
  return m.mx != 0.0 ? kInf : 0.0;
}

double t_unbounded_squared(const Moments& m) {
  if (m.det > 0.0) return m.num / m.det;
  return m.num > 0.0 ? kInf : denom_t_squared(m);
}

// Roots of a*rho^2 - 2*b*rho + cc = 0 given sqrt(b^2 - a*cc), computed
// without cancellation. Requires a != 0.
std::pair<double, double> stable_roots(double a, double b, double cc, double sqrt_disc) {
  const double q = b + std::copysign(sqrt_disc, b);
  if (q == 0.0) return {b / a, b / a};
  double r1 = q / a;
  double r2 = cc / q;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

// Candidate solutions of T0(rho)^2 = t^2 (may include the spurious sign).
void squared_crossings(const Moments& m, double t, std::vector<double>& out) {
  const double t2 = t * t;
  const double a = m.mx * m.mx - t2 * m.vx;
  const double b = m.mx * m.my - t2 * m.c;
  const double cc = m.my * m.my - t2 * m.vy;
  const double reduced = m.num - t2 * m.det;
  if (reduced < 0.0) return;
  const double sqrt_disc = std::abs(t) * std::sqrt(reduced);
  if (a != 0.0) {
    const auto [r1, r2] = stable_roots(a, b, cc, sqrt_disc);
    out.push_back(r1);
    out.push_back(r2);
  } else if (b != 0.0) {
    out.push_back(cc / (2.0 * b));
  }
}

ConfidenceSet degenerate_point(const SummaryStats& s, FiellerDiagnostics* diag) {
  if (s.mean_x == 0.0) {
    throw Error(ErrorCode::ZeroDenominator, "ratio undefined: denominator mean is zero");
  }
  const double r = s.mean_y / s.mean_x;
  if (diag) *diag = {kInf, kInf, SetCase::Bounded};
  return Bounded{r, r};
}

ConfidenceSet invert_symmetric(const SummaryStats& s, double t, FiellerDiagnostics* diag) {
  const Moments m = moments_of(s);
  const double t2 = t * t;
  const double dt2 = denom_t_squared(m);
  const double tu2 = t_unbounded_squared(m);

  const double a = m.mx * m.mx - t2 * m.vx;
  const double b = m.mx * m.my - t2 * m.c;
  const double cc = m.my * m.my - t2 * m.vy;
  double reduced = m.num - t2 * m.det;

  if (dt2 > t2) {
    if (diag) *diag = {dt2, tu2, SetCase::Bounded};
    if (reduced < 0.0) {
      // Nonnegative in exact arithmetic whenever the denominator is significant.
      const double scale = m.num + t2 * m.det;
      if (reduced < -1e-12 * scale) {
        throw Error(ErrorCode::NonFiniteResult,
                    "negative discriminant in the bounded Fieller case");
      }
      reduced = 0.0;
    }
    const auto [lo, hi] = stable_roots(a, b, cc, t * std::sqrt(reduced));
    return Bounded{lo, hi};
  }

  if (tu2 > t2) {
    if (diag) *diag = {dt2, tu2, SetCase::UnboundedExclusive};
    const double sqrt_disc = t * std::sqrt(std::max(0.0, reduced));
    if (a < 0.0) {
      const auto [lo, hi] = stable_roots(a, b, cc, sqrt_disc);
      return UnboundedExclusive{lo, hi};
    }
    // a == 0: the inequality is linear, one excluded end runs to infinity.
    if (b > 0.0) return UnboundedExclusive{-kInf, cc / (2.0 * b)};
    if (b < 0.0) return UnboundedExclusive{cc / (2.0 * b), kInf};
    return WholeLine{};
  }

  if (diag) *diag = {dt2, tu2, SetCase::WholeLine};
  return WholeLine{};
}

double pivot(const Moments& m, double rho) {
  const double q = m.vy - 2.0 * rho * m.c + rho * rho * m.vx;
  if (!(q > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return (m.my - rho * m.mx) / std::sqrt(q);
}

}  // namespace

namespace detail {

ConfidenceSet invert_t0_general(const SummaryStats& s, double t_lo, double t_hi) {
  const Moments m = moments_of(s);

  std::vector<double> breaks;
  squared_crossings(m, t_lo, breaks);
  squared_crossings(m, t_hi, breaks);
  // T0'(rho) has a numerator linear in rho, so at most one stationary point.
  const double slope = m.c * m.mx - m.my * m.vx;
  if (slope != 0.0) breaks.push_back((m.mx * m.vy - m.my * m.c) / slope);
  if (m.det == 0.0 && m.vx > 0.0) breaks.push_back(m.c / m.vx);
  std::erase_if(breaks, [](double v) { return !std::isfinite(v); });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  auto inside = [&](double rho) {
    const double v = pivot(m, rho);
    return v >= t_lo && v <= t_hi;
  };

  // Segment k spans (breaks[k-1], breaks[k]) with infinite outer ends.
  const std::size_t nb = breaks.size();
  std::vector<bool> seg_in(nb + 1);
  if (nb == 0) {
    seg_in[0] = inside(s.mean_x != 0.0 ? s.mean_y / s.mean_x : 0.0);
  } else {
    seg_in[0] = inside(breaks.front() - (1.0 + std::abs(breaks.front())));
    seg_in[nb] = inside(breaks.back() + (1.0 + std::abs(breaks.back())));
    for (std::size_t k = 1; k < nb; ++k) {
      seg_in[k] = inside(0.5 * (breaks[k - 1] + breaks[k]));
    }
  }

  std::vector<std::pair<double, double>> pieces;
  bool open = seg_in[0];
  double start = -kInf;
  for (std::size_t k = 0; k < nb; ++k) {
    const double bp = breaks[k];
    // Closedness: a breakpoint bordering a member segment belongs to the set.
    const bool bp_in = seg_in[k] || seg_in[k + 1] || inside(bp);
    if (open) {
      if (!seg_in[k + 1]) {
        pieces.emplace_back(start, bp);
        open = false;
      }
    } else if (bp_in) {
      start = bp;
      if (seg_in[k + 1]) {
        open = true;
      } else {
        pieces.emplace_back(bp, bp);
      }
    }
  }
  if (open) pieces.emplace_back(start, kInf);

  if (pieces.size() == 1) {
    const auto [lo, hi] = pieces.front();
    if (std::isinf(lo) && std::isinf(hi)) return WholeLine{};
    if (std::isfinite(lo) && std::isfinite(hi)) return Bounded{lo, hi};
  }
  if (pieces.size() == 2 && std::isinf(pieces[0].first) && std::isinf(pieces[1].second)) {
    return UnboundedExclusive{pieces[0].second, pieces[1].first};
  }
  return IntervalUnion{std::move(pieces)};
}

}  // namespace detail

double point_estimate(const SummaryStats& stats) {
  if (stats.mean_x == 0.0) {
    throw Error(ErrorCode::ZeroDenominator, "ratio undefined: denominator mean is zero");
  }
  return stats.mean_y / stats.mean_x;
}

double t0_statistic(const SummaryStats& stats, double rho) {
  const double q = stats.var_mean_y - 2.0 * rho * stats.cov_mean_xy +
                   rho * rho * stats.var_mean_x;
  if (!(q > 0.0)) {
    throw Error(ErrorCode::DegenerateVariance,
                "variance of mean_y - rho*mean_x is not positive at rho=" + std::to_string(rho));
  }
  return (stats.mean_y - rho * stats.mean_x) / std::sqrt(q);
}

ConfidenceSet invert_t0(const SummaryStats& stats, double t_lo, double t_hi,
                        FiellerDiagnostics* diagnostics) {
  if (!(t_lo <= t_hi) || !std::isfinite(t_lo) || !std::isfinite(t_hi)) {
    throw Error(ErrorCode::DomainError, "pivot limits must be finite with t_lo <= t_hi");
  }
  if (stats.var_mean_x == 0.0 && stats.var_mean_y == 0.0) {
    return degenerate_point(stats, diagnostics);
  }
  if (stats.var_mean_x == 0.0 && stats.mean_x == 0.0) {
    throw Error(ErrorCode::ZeroDenominator, "denominator is identically zero");
  }
  if (t_lo == -t_hi) return invert_symmetric(stats, t_hi, diagnostics);

  ConfidenceSet set = detail::invert_t0_general(stats, t_lo, t_hi);
  if (diagnostics) {
    const Moments m = moments_of(stats);
    *diagnostics = {denom_t_squared(m), t_unbounded_squared(m), set.kind()};
  }
  return set;
}

MethodResult fieller_set(const SummaryStats& stats, const ConfidenceSpec& spec) {
  MethodResult r;
  r.method = Method::Fieller;
  r.estimate = point_estimate(stats);
  FiellerDiagnostics diag;
  r.set = invert_t0(stats, -spec.quantile, spec.quantile, &diag);
  r.diagnostics = diag;
  return r;
}

MethodResult taylor_limits(const SummaryStats& stats, const ConfidenceSpec& spec) {
  const double rho = point_estimate(stats);
  if (stats.mean_y == 0.0) {
    throw Error(ErrorCode::ZeroNumerator, "Taylor limits undefined for a zero numerator mean");
  }
  const double mx = stats.mean_x, my = stats.mean_y;
  const double rel_var = stats.var_mean_x / (mx * mx) + stats.var_mean_y / (my * my) -
                         2.0 * stats.cov_mean_xy / (mx * my);
  const double half = spec.quantile * std::abs(rho) * std::sqrt(std::max(0.0, rel_var));
  MethodResult r;
  r.method = Method::Taylor;
  r.estimate = rho;
  r.set = Bounded{rho - half, rho + half};
  return r;
}

namespace {

std::vector<double> individual_ratios(const PairedSample& sample) {
  const auto xs = sample.xs();
  const auto ys = sample.ys();
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0.0) zeros.push_back(i);
  }
  if (!zeros.empty()) {
    std::string list;
    for (std::size_t i : zeros) list += (list.empty() ? "" : ",") + std::to_string(i);
    throw Error(ErrorCode::ZeroIndividualDenominator,
                "zero denominator at observation(s) " + list, std::move(zeros));
  }
  std::vector<double> r(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) r[i] = ys[i] / xs[i];
  return r;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v, double mean) {
  double ss = 0.0, comp = 0.0;
  for (double x : v) {
    ss += (x - mean) * (x - mean);
    comp += x - mean;
  }
  const auto n = static_cast<double>(v.size());
  return std::max(0.0, (ss - comp * comp / n) / (n - 1.0));
}

double quantile_at(const ConfidenceSpec& spec, double df) {
  return spec.df == df ? spec.quantile : spec.with_df(df).quantile;
}

}  // namespace

MethodResult index_limits(const PairedSample& sample, const ConfidenceSpec& spec) {
  MethodResult r = trimmed_index_limits(sample, spec, 0.0);
  r.method = Method::Index;
  return r;
}

MethodResult trimmed_index_limits(const PairedSample& sample, const ConfidenceSpec& spec,
                                  double trim) {
  if (!(trim >= 0.0 && trim < 0.5)) {
    throw Error(ErrorCode::DomainError, "trim proportion must lie in [0, 0.5)");
  }
  std::vector<double> r = individual_ratios(sample);
  const std::size_t n = r.size();
  const auto g = static_cast<std::size_t>(std::floor(trim * static_cast<double>(n) + 1e-9));
  if (n < 2 * g + 2) {
    throw Error(ErrorCode::TooFewAfterTrim,
                "only " + std::to_string(n - 2 * g) + " ratios remain after trimming");
  }

  MethodResult res;
  res.method = Method::TrimmedIndex;
  const auto nd = static_cast<double>(n);
  double center, se;
  if (g == 0) {
    center = mean_of(r);
    se = std::sqrt(sample_variance(r, center) / nd);
  } else {
    std::sort(r.begin(), r.end());
    center = mean_of(std::span<const double>(r).subspan(g, n - 2 * g));
    // Winsorize: pull the g extremes on each side in to the nearest kept value.
    std::fill(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(g), r[g]);
    std::fill(r.end() - static_cast<std::ptrdiff_t>(g), r.end(), r[n - g - 1]);
    const double s_w = std::sqrt(sample_variance(r, mean_of(r)));
    se = s_w / ((1.0 - 2.0 * static_cast<double>(g) / nd) * std::sqrt(nd));
  }
  const double q = quantile_at(spec, static_cast<double>(n - 2 * g - 1));
  res.estimate = center;
  res.set = Bounded{center - q * se, center + q * se};
  return res;
}

MethodResult zero_variance_limits(const PairedSample& sample, const ConfidenceSpec& spec) {
  const SummaryStats s = summarize(sample);
  const double rho = point_estimate(s);
  const double half = spec.quantile * std::sqrt(s.var_mean_y) / std::abs(s.mean_x);
  MethodResult r;
  r.method = Method::ZeroVariance;
  r.estimate = rho;
  r.set = Bounded{rho - half, rho + half};
  return r;
}

}  // namespace ratioci
