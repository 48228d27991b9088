#include "lobound/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace lobound {

namespace {
constexpr const char* kVarNames[kNumVars] = {"m0", "m1", "n0", "n1",
                                             "c1", "c2", "c3", "c4"};
}

const char* var_name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

Var var_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (name == kVarNames[i]) return static_cast<Var>(i);
  }
  throw std::invalid_argument("unknown variable name: " + name);
}

Polynomial Polynomial::constant(std::int64_t c) {
  Polynomial p;
  if (c != 0) p.terms_[Monomial{}] = c;
  return p;
}

Polynomial Polynomial::variable(Var v) {
  Polynomial p;
  Monomial m{};
  m[static_cast<std::size_t>(v)] = 1;
  p.terms_[m] = 1;
  return p;
}

Polynomial Polynomial::term(std::int64_t coeff, const Monomial& m) {
  Polynomial p;
  if (coeff != 0) p.terms_[m] = coeff;
  return p;
}

int Polynomial::total_degree() const {
  int deg = 0;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (auto e : m) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

double Polynomial::evaluate(const std::array<double, kNumVars>& values) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = static_cast<double>(c);
    for (std::size_t i = 0; i < kNumVars; ++i) {
      for (int e = 0; e < m[i]; ++e) t *= values[i];
    }
    sum += t;
  }
  return sum;
}

void Polynomial::add_term(const Monomial& m, std::int64_t coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, coeff);
  } else if ((it->second += coeff) == 0) {
    terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m;
      for (std::size_t i = 0; i < kNumVars; ++i) {
        m[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
      }
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial out;
  for (const auto& [m, c] : a.terms_) out.terms_[m] = -c;
  return out;
}

namespace {

// Dependency edges among bound variables: v -> w when the value bound to v
// mentions bound w. The identity binding v -> v carries no edge.
void check_acyclic(const Substitution& bindings) {
  auto mentions = [](const Polynomial& p, Var w) {
    for (const auto& [m, c] : p.terms()) {
      (void)c;
      if (m[static_cast<std::size_t>(w)] != 0) return true;
    }
    return false;
  };
  std::map<Var, std::vector<Var>> edges;
  for (const auto& [v, value] : bindings) {
    if (value == Polynomial::variable(v)) continue;
    for (const auto& [w, _] : bindings) {
      (void)_;
      if (mentions(value, w)) edges[v].push_back(w);
    }
  }
  // DFS cycle detection; self-edges are cycles of length one.
  std::map<Var, int> state;  // 0 unseen, 1 on stack, 2 done
  auto dfs = [&](auto&& self, Var v) -> void {
    state[v] = 1;
    for (Var w : edges[v]) {
      if (state[w] == 1) {
        throw std::invalid_argument(
            std::string("cyclic substitution through ") + var_name(w));
      }
      if (state[w] == 0) self(self, w);
    }
    state[v] = 2;
  };
  for (const auto& [v, _] : edges) {
    (void)_;
    if (state[v] == 0) dfs(dfs, v);
  }
}

}  // namespace

Polynomial Polynomial::substitute(const Substitution& bindings) const {
  check_acyclic(bindings);
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial term = Polynomial::constant(c);
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (m[i] == 0) continue;
      auto it = bindings.find(static_cast<Var>(i));
      Polynomial base = (it != bindings.end())
                            ? it->second
                            : Polynomial::variable(static_cast<Var>(i));
      for (int e = 0; e < m[i]; ++e) term *= base;
    }
    out += term;
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::int64_t coeff = c;
    if (first) {
      if (coeff < 0) {
        os << "-";
        coeff = -coeff;
      }
      first = false;
    } else {
      os << (coeff < 0 ? " - " : " + ");
      coeff = std::abs(coeff);
    }
    bool has_vars = false;
    for (auto e : m) {
      if (e) has_vars = true;
    }
    if (coeff != 1 || !has_vars) {
      os << coeff;
      if (has_vars) os << "*";
    }
    bool first_var = true;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (m[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << kVarNames[i];
      if (m[i] > 1) os << "^" << static_cast<int>(m[i]);
    }
  }
  return os.str();
}

std::size_t Polynomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  for (const auto& [m, c] : terms_) {
    for (auto e : m) mix(e);
    mix(static_cast<std::uint64_t>(c));
  }
  return h;
}

}  // namespace lobound
