#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lobound {

// The eight parameters of a bipartite two-input/two-output no-signaling box.
// Index order is fixed; it defines the canonical monomial order everywhere.
enum class Var : std::uint8_t { m0 = 0, m1, n0, n1, c1, c2, c3, c4 };

inline constexpr std::size_t kNumVars = 8;

const char* var_name(Var v);
Var var_from_name(const std::string& name);

// Exponent vector of one monomial, exponents[i] = power of Var(i).
using Monomial = std::array<std::uint8_t, kNumVars>;

// Multivariate polynomial with exact integer coefficients over the eight box
// parameters. Terms are kept in a sorted map, so the representation is
// canonical: equal polynomials compare equal, and iteration order is stable.
class Polynomial {
 public:
  using Terms = std::map<Monomial, std::int64_t>;

  Polynomial() = default;
  static Polynomial constant(std::int64_t c);
  static Polynomial variable(Var v);
  static Polynomial term(std::int64_t coeff, const Monomial& m);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  double evaluate(const std::array<double, kNumVars>& values) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);

  bool operator==(const Polynomial& rhs) const { return terms_ == rhs.terms_; }

  // Substitutes each bound variable by its polynomial. All bindings are
  // applied simultaneously, in a single pass; mutually dependent bindings
  // (a cycle, excluding plain identities) are rejected.
  Polynomial substitute(const std::map<Var, Polynomial>& bindings) const;

  // Renders in canonical term order, e.g. "c3^2 - c1^2 + 2*n1*c1 - n1^2".
  std::string to_string() const;

  std::size_t hash() const;

 private:
  void add_term(const Monomial& m, std::int64_t coeff);
  Terms terms_;
};

using Substitution = std::map<Var, Polynomial>;

// Convenience factories for expression-style construction.
inline Polynomial poly(std::int64_t c) { return Polynomial::constant(c); }
inline Polynomial poly(Var v) { return Polynomial::variable(v); }

inline Polynomial operator*(std::int64_t c, const Polynomial& p) {
  return Polynomial::constant(c) * p;
}
inline Polynomial operator+(std::int64_t c, const Polynomial& p) {
  return Polynomial::constant(c) + p;
}
inline Polynomial operator-(std::int64_t c, const Polynomial& p) {
  return Polynomial::constant(c) - p;
}
inline Polynomial operator+(const Polynomial& p, std::int64_t c) {
  return p + Polynomial::constant(c);
}
inline Polynomial operator-(const Polynomial& p, std::int64_t c) {
  return p - Polynomial::constant(c);
}

struct PolynomialHash {
  std::size_t operator()(const Polynomial& p) const { return p.hash(); }
};

}  // namespace lobound
