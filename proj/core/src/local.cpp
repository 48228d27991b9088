#include "lobound/local.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace lobound {
namespace {

constexpr std::size_t kRows = kNumVars + 1;  // eight parameters + normalization
constexpr std::size_t kCols = 16;

using Matrix = std::array<std::array<double, kCols>, kRows>;
using Rhs = std::array<double, kRows>;

Matrix deterministic_columns() {
  Matrix a{};
  const auto boxes = deterministic_boxes();
  for (std::size_t j = 0; j < kCols; ++j) {
    const auto v = boxes[j].values();
    for (std::size_t i = 0; i < kNumVars; ++i) a[i][j] = v[i];
    a[kNumVars][j] = 1.0;
  }
  return a;
}

// Solve the least-squares subproblem restricted to the passive columns via
// normal equations; a tiny ridge keeps the Cholesky factor well defined when
// passive columns become linearly dependent (rank of A is at most nine).
bool solve_passive(const Matrix& a, const Rhs& b,
                   const std::vector<std::size_t>& passive,
                   std::vector<double>& z) {
  const std::size_t k = passive.size();
  std::vector<double> gram(k * k, 0.0), rhs(k, 0.0);
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = p; q < k; ++q) {
      double s = 0;
      for (std::size_t i = 0; i < kRows; ++i) s += a[i][passive[p]] * a[i][passive[q]];
      gram[p * k + q] = gram[q * k + p] = s;
    }
    double s = 0;
    for (std::size_t i = 0; i < kRows; ++i) s += a[i][passive[p]] * b[i];
    rhs[p] = s;
  }
  for (std::size_t p = 0; p < k; ++p) gram[p * k + p] += 1e-12;

  // Cholesky factorization in place.
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = p; q < k; ++q) {
      double s = gram[p * k + q];
      for (std::size_t r = 0; r < p; ++r) s -= gram[p * k + r] * gram[q * k + r];
      if (p == q) {
        if (s <= 0) return false;
        gram[p * k + p] = std::sqrt(s);
      } else {
        gram[q * k + p] = s / gram[p * k + p];
      }
    }
  }
  z.assign(k, 0.0);
  for (std::size_t p = 0; p < k; ++p) {
    double s = rhs[p];
    for (std::size_t r = 0; r < p; ++r) s -= gram[p * k + r] * z[r];
    z[p] = s / gram[p * k + p];
  }
  for (std::size_t p = k; p-- > 0;) {
    double s = z[p];
    for (std::size_t r = p + 1; r < k; ++r) s -= gram[r * k + p] * z[r];
    z[p] = s / gram[p * k + p];
  }
  return true;
}

}  // namespace

NSBox LocalityCertificate::reconstruction() const {
  NSBox box{};
  if (!weights) return box;
  const auto boxes = deterministic_boxes();
  std::array<double, kNumVars> acc{};
  for (std::size_t j = 0; j < 16; ++j) {
    const auto v = boxes[j].values();
    for (std::size_t i = 0; i < kNumVars; ++i) acc[i] += (*weights)[j] * v[i];
  }
  return NSBox{acc[0], acc[1], acc[2], acc[3], acc[4], acc[5], acc[6], acc[7]};
}

LocalityCertificate is_local(const NSBox& box, double tol) {
  const Matrix a = deterministic_columns();
  Rhs b{};
  {
    const auto v = box.values();
    for (std::size_t i = 0; i < kNumVars; ++i) b[i] = v[i];
    b[kNumVars] = 1.0;
  }

  // Lawson-Hanson nonnegative least squares.
  std::array<double, kCols> w{};
  std::array<bool, kCols> in_passive{};
  std::vector<std::size_t> passive;
  Rhs resid = b;

  auto recompute_residual = [&]() {
    for (std::size_t i = 0; i < kRows; ++i) {
      double s = b[i];
      for (std::size_t j = 0; j < kCols; ++j) s -= a[i][j] * w[j];
      resid[i] = s;
    }
  };

  const double grad_eps = 1e-11;
  for (int outer = 0; outer < 64; ++outer) {
    recompute_residual();
    // Gradient of 0.5*||Aw-b||^2 is -A^T resid; pick the steepest descent
    // candidate among the active (zero) variables.
    double best = grad_eps;
    std::size_t best_j = kCols;
    for (std::size_t j = 0; j < kCols; ++j) {
      if (in_passive[j]) continue;
      double g = 0;
      for (std::size_t i = 0; i < kRows; ++i) g += a[i][j] * resid[i];
      if (g > best) {
        best = g;
        best_j = j;
      }
    }
    if (best_j == kCols) break;
    in_passive[best_j] = true;
    passive.push_back(best_j);

    // Inner loop: solve restricted LS, step back if any passive weight
    // would turn negative, dropping those variables.
    for (int inner = 0; inner < 256; ++inner) {
      std::vector<double> z;
      if (!solve_passive(a, b, passive, z)) {
        // Degenerate subproblem: drop the most recently added column.
        in_passive[passive.back()] = false;
        passive.pop_back();
        break;
      }
      bool all_positive = true;
      double alpha = 1.0;
      for (std::size_t p = 0; p < passive.size(); ++p) {
        if (z[p] <= 0) {
          all_positive = false;
          const double wj = w[passive[p]];
          const double denom = wj - z[p];
          if (denom > 0) alpha = std::min(alpha, wj / denom);
        }
      }
      if (all_positive) {
        for (std::size_t p = 0; p < passive.size(); ++p) w[passive[p]] = z[p];
        break;
      }
      for (std::size_t p = 0; p < passive.size(); ++p) {
        w[passive[p]] += alpha * (z[p] - w[passive[p]]);
      }
      std::vector<std::size_t> kept;
      for (std::size_t j : passive) {
        if (w[j] > 1e-14) {
          kept.push_back(j);
        } else {
          w[j] = 0;
          in_passive[j] = false;
        }
      }
      passive = std::move(kept);
      if (passive.empty()) break;
    }
  }

  recompute_residual();
  double resid_norm = 0;
  for (double r : resid) resid_norm += r * r;
  resid_norm = std::sqrt(resid_norm);

  LocalityCertificate cert;
  if (resid_norm <= tol) {
    cert.is_local = true;
    std::array<double, 16> weights{};
    double total = 0;
    for (std::size_t j = 0; j < kCols; ++j) {
      weights[j] = std::max(0.0, w[j]);
      total += weights[j];
    }
    if (total > 0) {
      for (double& x : weights) x /= total;
    }
    cert.weights = weights;
    return cert;
  }

  // Farkas witness: at the NNLS optimum the residual y = b - Aw satisfies
  // A^T y <= 0 while y^T b = ||y||^2 > 0, so y separates the box from the
  // deterministic polytope. Its last entry absorbs normalization and turns
  // into the local bound.
  cert.is_local = false;
  SeparatingFunctional f;
  for (std::size_t i = 0; i < kNumVars; ++i) f.coefficients[i] = resid[i];
  // Tighten the bound to the exact deterministic maximum (it sits within
  // grad_eps of -y[8]).
  double bound = -std::numeric_limits<double>::infinity();
  for (const auto& d : deterministic_boxes()) bound = std::max(bound, f.value(d));
  f.local_bound = bound;
  f.value_at_box = f.value(box);
  cert.violated_functional = f;
  return cert;
}

}  // namespace lobound
