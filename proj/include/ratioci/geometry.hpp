#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ratioci/stats_core.hpp"

namespace ratioci {

using Point = std::pair<double, double>;

// Confidence ellipse of (mean_x, mean_y) and the wedge of lines through the
// origin tangent to it. The tangent slopes are the Fieller limits; the
// ellipse's projections onto the axes are the marginal intervals.
struct EllipseConstruction {
  Point center;
  double half_axis_x = 0.0;  // t * sd(mean_x)
  double half_axis_y = 0.0;  // t * sd(mean_y)
  double covariance_of_means = 0.0;
  double quantile = 0.0;
  std::vector<double> tangent_slopes;  // ascending; empty if the origin is inside
  bool touches_y_axis = false;
};

EllipseConstruction construct_wedge(const SummaryStats& stats, const ConfidenceSpec& spec);

// k points on the boundary, counterclockwise starting at angle 0 of the
// whitened circle; the curve is closed (the first point is not repeated).
std::vector<Point> ellipse_boundary_points(const EllipseConstruction& e, std::size_t k);

}  // namespace ratioci
