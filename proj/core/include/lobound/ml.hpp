#pragma once

#include <array>

#include "lobound/box.hpp"

namespace lobound {

// Macroscopic Locality criterion for a two-setting box:
// |sum_{x,y} (-1)^{xy} asin(D_xy)| <= pi, with D_xy the normalized
// covariance of the outcome pair under settings (x,y).
struct MLReport {
  std::array<std::array<double, 2>, 2> d{};  // D_xy
  double functional = 0;                     // radians, nonnegative
  bool satisfied = false;
};

// Normalized covariance (<a_x b_y> - <a_x><b_y>) / sqrt((1-<a_x>^2)(1-<b_y>^2)).
// When a variance factor vanishes (below 1e-12) the numerator is identically
// zero too; returns 0 in that case. Clamped into [-1,1].
double d_xy(const NSBox& box, int x, int y);

MLReport ml_functional(const NSBox& box, double tol = 1e-9);

}  // namespace lobound
