#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lobound/box.hpp"

namespace lobound {

// A CHSH-type linear functional over the eight box parameters, produced as
// a separating witness when a box lies outside the local polytope:
// value(box) > local_bound while value(D) <= local_bound for all sixteen
// deterministic boxes D.
struct SeparatingFunctional {
  std::array<double, kNumVars> coefficients{};
  double local_bound = 0;
  double value_at_box = 0;

  double value(const NSBox& box) const {
    const auto v = box.values();
    double sum = 0;
    for (std::size_t i = 0; i < kNumVars; ++i) sum += coefficients[i] * v[i];
    return sum;
  }
};

struct LocalityCertificate {
  bool is_local = false;
  // Convex weights over the sixteen deterministic boxes (index
  // 4*alice_strategy + bob_strategy); present when local.
  std::optional<std::array<double, 16>> weights;
  std::optional<SeparatingFunctional> violated_functional;

  // Box rebuilt from the weights; meaningful when local.
  NSBox reconstruction() const;
};

// Local-hidden-variable membership: decides whether a convex combination of
// the sixteen deterministic boxes reproduces the box's table within tol.
// Solved by an in-repo dense active-set nonnegative least squares on the
// eight parameters plus normalization.
LocalityCertificate is_local(const NSBox& box, double tol = 1e-9);

}  // namespace lobound
