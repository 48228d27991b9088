#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "lobound/polynomial.hpp"

namespace lobound {

// Bipartite two-input/two-output no-signaling box in the eight-parameter
// form: Alice marginals m0, m1, Bob marginals n0, n1 (probability of
// outcome 0), and joint probabilities c1..c4 = P(00|xy) for the setting
// pairs xy = 00, 01, 10, 11. No-signaling holds by construction; validity
// additionally requires every derived table entry to lie in [0, 1].
struct NSBox {
  double m0 = 0, m1 = 0, n0 = 0, n1 = 0;
  double c1 = 0, c2 = 0, c3 = 0, c4 = 0;

  std::array<double, kNumVars> values() const {
    return {m0, m1, n0, n1, c1, c2, c3, c4};
  }
  double joint(int x, int y) const {
    const double c[4] = {c1, c2, c3, c4};
    return c[2 * x + y];
  }
  double marginal_a(int x) const { return x == 0 ? m0 : m1; }
  double marginal_b(int y) const { return y == 0 ? n0 : n1; }
};

// Full conditional distribution: entries[2x+y][2a+b] = P(ab|xy).
struct ProbabilityTable {
  std::array<std::array<double, 4>, 4> entries{};

  double operator()(int x, int y, int a, int b) const {
    return entries[2 * x + y][2 * a + b];
  }
};

// Success parameters of the Hardy-Cabello argument in the fixed gauge
// q1 = P(01|01), q4 = P(00|10), with the two hard zeros P(00|11), P(10|00).
struct HardyParameters {
  double q1 = 0;
  double q4 = 0;
  std::array<double, 2> zeros{};  // {P(00|11), P(10|00)}
};

struct TableEntryError : std::runtime_error {
  TableEntryError(int x, int y, int a, int b, double value);
  int x, y, a, b;
  double value;
};

// Table 0/1 entry as an exact polynomial in the eight parameters:
//   P(00|xy) = c_j, P(01|xy) = m_x - c_j, P(10|xy) = n_y - c_j,
//   P(11|xy) = 1 + c_j - m_x - n_y,  with j = 2x + y.
Polynomial entry_polynomial(int a, int b, int x, int y);

double table_entry(const NSBox& box, int x, int y, int a, int b);

// Throws TableEntryError (with the offending entry) when any entry lies
// outside [0, 1] by more than tol.
ProbabilityTable to_table(const NSBox& box, double tol = 1e-12);
// No validity check; for optimizer interior iterates.
ProbabilityTable to_table_unchecked(const NSBox& box);

bool is_valid(const NSBox& box, double tol = 1e-12);
// Largest amount by which any table entry escapes [0, 1]; 0 when valid.
double validity_violation(const NSBox& box);

// +-1-valued outcome expectations, per the correlator identities
//   <a_x b_y> = 1 + 4 c_j - 2 (m_x + n_y),  <a_x> = 2 m_x - 1,
//   <b_y> = 2 n_y - 1.
double correlator(const NSBox& box, int x, int y);
double mean_a(const NSBox& box, int x);
double mean_b(const NSBox& box, int y);

// CHSH sum with the minus sign on the chosen setting pair
// (minus_x, minus_y); value lies in [-4, 4].
double chsh(const NSBox& box, int minus_x = 1, int minus_y = 1);
// Same sum as an exact polynomial in the eight parameters.
Polynomial chsh_polynomial(int minus_x = 1, int minus_y = 1);

HardyParameters hardy_parameters(const NSBox& box);

// Deterministic strategy: maps each setting to a fixed outcome. Index
// convention: strategy 2*f(0) + f(1).
struct DeterministicStrategy {
  int out0 = 0;  // outcome for setting 0
  int out1 = 0;  // outcome for setting 1
  int operator()(int setting) const { return setting == 0 ? out0 : out1; }
};

NSBox deterministic_box(DeterministicStrategy alice, DeterministicStrategy bob);
NSBox pr_box();
NSBox uniform_box();

// All 16 deterministic boxes, indexed by 4*alice_index + bob_index where
// strategy index = 2*f(0) + f(1).
const std::array<NSBox, 16>& deterministic_boxes();

}  // namespace lobound
