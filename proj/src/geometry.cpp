#include "ratioci/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ratioci/error.hpp"

namespace ratioci {
namespace {

// Lower Cholesky factor of the covariance of the means, written in terms of
// the two standard deviations and their correlation.
struct Factor {
  double sx, sy, r, s;  // L = [[sx, 0], [r*sy, s*sy]]
};

Factor factor_of(const EllipseConstruction& e) {
  const double sx = e.half_axis_x / e.quantile;
  const double sy = e.half_axis_y / e.quantile;
  double r = 0.0;
  if (sx > 0.0 && sy > 0.0) r = std::clamp(e.covariance_of_means / (sx * sy), -1.0, 1.0);
  return {sx, sy, r, std::sqrt(1.0 - r * r)};
}

// Slopes m with (m*mx - my)^2 = t^2 (m^2 vx - 2 m c + vy), for the singular
// covariance fallback where the ellipse cannot be whitened.
std::vector<double> slopes_from_quadratic(const SummaryStats& st, double t) {
  const double t2 = t * t;
  const double a = st.mean_x * st.mean_x - t2 * st.var_mean_x;
  const double b = st.mean_x * st.mean_y - t2 * st.cov_mean_xy;
  const double c = st.mean_y * st.mean_y - t2 * st.var_mean_y;
  const double disc = b * b - a * c;
  std::vector<double> out;
  if (disc < 0.0) return out;
  if (a == 0.0) {
    if (b != 0.0) out.push_back(c / (2.0 * b));
    return out;
  }
  const double root = std::sqrt(disc);
  out.push_back((b - root) / a);
  out.push_back((b + root) / a);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

EllipseConstruction construct_wedge(const SummaryStats& stats, const ConfidenceSpec& spec) {
  if (!(stats.var_mean_x > 0.0 || stats.var_mean_y > 0.0)) {
    throw Error(ErrorCode::DegenerateVariance, "ellipse needs a positive variance");
  }
  const double t = spec.quantile;
  EllipseConstruction e;
  e.center = {stats.mean_x, stats.mean_y};
  e.quantile = t;
  e.half_axis_x = t * std::sqrt(stats.var_mean_x);
  e.half_axis_y = t * std::sqrt(stats.var_mean_y);
  e.covariance_of_means = stats.cov_mean_xy;
  // Strict inequality mirrors the Fieller bounded-case test.
  e.touches_y_axis = !(stats.mean_x * stats.mean_x > t * t * stats.var_mean_x);

  const Factor f = factor_of(e);
  const double det = stats.var_mean_x * stats.var_mean_y - stats.cov_mean_xy * stats.cov_mean_xy;
  const bool singular = !(f.sx > 0.0) || !(f.sy > 0.0) ||
                        det <= 1e-14 * stats.var_mean_x * stats.var_mean_y || !(f.s > 0.0);
  if (singular) {
    e.tangent_slopes = slopes_from_quadratic(stats, t);
    return e;
  }

  // Whiten: the ellipse becomes the unit circle and the origin maps to w.
  const double w1 = -stats.mean_x / (t * f.sx);
  const double w2 = (-stats.mean_y / t - f.r * f.sy * w1) / (f.s * f.sy);
  const double d2 = w1 * w1 + w2 * w2;
  if (!(d2 > 1.0)) return e;

  // Tangent points from an external point w to the unit circle.
  const double along = 1.0 / d2;
  const double across = std::sqrt(d2 - 1.0) / d2;
  for (double sign : {-1.0, 1.0}) {
    const double u1 = along * w1 - sign * across * w2;
    const double u2 = along * w2 + sign * across * w1;
    const double px = stats.mean_x + t * f.sx * u1;
    const double py = stats.mean_y + t * f.sy * (f.r * u1 + f.s * u2);
    if (px != 0.0) e.tangent_slopes.push_back(py / px);
  }
  std::sort(e.tangent_slopes.begin(), e.tangent_slopes.end());
  return e;
}

std::vector<Point> ellipse_boundary_points(const EllipseConstruction& e, std::size_t k) {
  if (k < 4) throw Error(ErrorCode::InvalidArgument, "need at least 4 boundary points");
  const Factor f = factor_of(e);
  const double t = e.quantile;
  std::vector<Point> pts;
  pts.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
    const double u1 = std::cos(theta);
    const double u2 = std::sin(theta);
    pts.emplace_back(e.center.first + t * f.sx * u1,
                     e.center.second + t * f.sy * (f.r * u1 + f.s * u2));
  }
  return pts;
}

}  // namespace ratioci
