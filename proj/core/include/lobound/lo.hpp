#pragma once

#include <array>
#include <span>
#include <vector>

#include "lobound/box.hpp"
#include "lobound/graph.hpp"
#include "lobound/polynomial.hpp"

namespace lobound {

enum class Scenario { Hardy, Cabello };

const char* scenario_name(Scenario s);

// Zero events of the argument (see event.hpp for the lists).
std::vector<Event> zero_events(Scenario s);

// Equality elimination induced by the zero events, in appendix variables:
// Hardy {m0 -> c2, n0 -> c1, c4 -> 0}; Cabello {n0 -> c1, c4 -> 0}.
Substitution scenario_substitution(Scenario s);

// Product over copies of the Table 1 entry polynomial. One or two copies.
Polynomial event_probability_poly(const Event& e);

// One Local Orthogonality inequality: polynomial <= 0 encodes
// "sum of clique probabilities <= 1".
struct LOInequality {
  Clique clique;               // representative clique (indices into source graph)
  std::vector<Event> events;   // the clique's events
  Polynomial polynomial;       // sum of event polynomials - 1, unsubstituted
  Substitution substitutions;  // applied zero constraints (may be empty)
  Polynomial reduced;          // polynomial after substitutions
};

LOInequality clique_to_inequality(const OrthoGraph& g,
                                  std::span<const uint32_t> members,
                                  const Substitution& subs = {});

// Slack 1 - sum of event probabilities; nonnegative means satisfied.
double evaluate(const LOInequality& ineq, const NSBox& box);

// The full constraint family of a product graph after substitution,
// deduplicated and compiled to dense integer rows over a shared monomial
// basis so millions of cliques collapse to tens of thousands of distinct
// constraints that evaluate fast.
class ConstraintMatrix {
 public:
  // Streams every maximal clique of `product`, reduces each sum by `subs`,
  // drops identically-zero rows, dedups, and sorts rows canonically.
  static ConstraintMatrix build(const OrthoGraph& product,
                                const Substitution& subs);

  // Compiles an explicit polynomial list (used for appendix subsets) under
  // the same row policy.
  static ConstraintMatrix from_polynomials(std::span<const Polynomial> polys);

  std::size_t size() const { return rows_; }
  std::size_t basis_size() const { return basis_.size(); }
  std::size_t cliques_seen() const { return cliques_seen_; }

  // Monomial values at a point, reusable across rows.
  void monomial_values(const std::array<double, kNumVars>& point,
                       std::vector<double>& mono) const;
  double value(std::size_t i, const std::vector<double>& mono) const;

  // Every row at once.
  void values(const std::array<double, kNumVars>& point,
              std::vector<double>& out) const;

  // Largest row value at the point (> 0 means some constraint is violated).
  double max_violation(const std::array<double, kNumVars>& point) const;

  Polynomial polynomial(std::size_t i) const;

 private:
  std::vector<Monomial> basis_;
  std::vector<int32_t> coeffs_;  // rows_ x basis_.size(), row-major
  std::size_t rows_ = 0;
  std::size_t cliques_seen_ = 0;
};

}  // namespace lobound
