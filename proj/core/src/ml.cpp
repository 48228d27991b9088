#include "lobound/ml.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lobound {

double d_xy(const NSBox& box, int x, int y) {
  const double ma = mean_a(box, x);
  const double mb = mean_b(box, y);
  const double va = 1.0 - ma * ma;
  const double vb = 1.0 - mb * mb;
  if (va < 1e-12 || vb < 1e-12) return 0.0;
  const double cov = correlator(box, x, y) - ma * mb;
  return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

MLReport ml_functional(const NSBox& box, double tol) {
  MLReport r;
  double sum = 0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      r.d[x][y] = d_xy(box, x, y);
      const double term = std::asin(r.d[x][y]);
      sum += (x == 1 && y == 1) ? -term : term;
    }
  }
  r.functional = std::abs(sum);
  r.satisfied = r.functional <= std::numbers::pi + tol;
  return r;
}

}  // namespace lobound
