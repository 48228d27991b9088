#include "lobound/lo.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace lobound {

const char* scenario_name(Scenario s) {
  return s == Scenario::Hardy ? "hardy" : "cabello";
}

std::vector<Event> zero_events(Scenario s) {
  return s == Scenario::Hardy ? hardy_zero_events() : cabello_zero_events();
}

Substitution scenario_substitution(Scenario s) {
  Substitution subs;
  if (s == Scenario::Hardy) subs[Var::m0] = Polynomial::variable(Var::c2);
  subs[Var::n0] = Polynomial::variable(Var::c1);
  subs[Var::c4] = Polynomial::constant(0);
  return subs;
}

Polynomial event_probability_poly(const Event& e) {
  if (e.copy_count() < 1 || e.copy_count() > 2) {
    throw std::invalid_argument("event_probability_poly: unsupported copy count");
  }
  Polynomial p = Polynomial::constant(1);
  for (const auto& c : e.copies) p *= entry_polynomial(c.a, c.b, c.x, c.y);
  return p;
}

LOInequality clique_to_inequality(const OrthoGraph& g,
                                  std::span<const uint32_t> members,
                                  const Substitution& subs) {
  LOInequality ineq;
  ineq.clique.members.assign(members.begin(), members.end());
  std::sort(ineq.clique.members.begin(), ineq.clique.members.end());
  ineq.clique.maximal =
      [&] {
        std::vector<Event> evs;
        for (uint32_t m : ineq.clique.members) evs.push_back(g.vertex(m));
        return contains_clique(g, evs) == CliqueStatus::MaximalClique;
      }();
  Polynomial sum = Polynomial::constant(-1);
  for (uint32_t m : ineq.clique.members) {
    ineq.events.push_back(g.vertex(m));
    sum += event_probability_poly(g.vertex(m));
  }
  ineq.polynomial = sum;
  ineq.substitutions = subs;
  ineq.reduced = subs.empty() ? sum : sum.substitute(subs);
  return ineq;
}

double evaluate(const LOInequality& ineq, const NSBox& box) {
  return -ineq.polynomial.evaluate(box.values());
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int32_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int32_t x : v) {
      h ^= static_cast<uint32_t>(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};

std::vector<Monomial> collect_basis(std::span<const Polynomial> polys) {
  std::map<Monomial, int> seen;
  for (const auto& p : polys) {
    for (const auto& [mono, coeff] : p.terms()) seen[mono] = 1;
  }
  Monomial constant{};
  seen[constant] = 1;
  std::vector<Monomial> basis;
  basis.reserve(seen.size());
  for (const auto& [mono, _] : seen) basis.push_back(mono);
  return basis;
}

std::vector<int32_t> densify(const Polynomial& p,
                             const std::map<Monomial, std::size_t>& index,
                             std::size_t width) {
  std::vector<int32_t> row(width, 0);
  for (const auto& [mono, coeff] : p.terms()) {
    row[index.at(mono)] = static_cast<int32_t>(coeff);
  }
  return row;
}

}  // namespace

ConstraintMatrix ConstraintMatrix::build(const OrthoGraph& product,
                                         const Substitution& subs) {
  // Per-vertex reduced event polynomials, densified over a shared basis.
  std::vector<Polynomial> vertex_polys;
  vertex_polys.reserve(product.size());
  for (std::size_t i = 0; i < product.size(); ++i) {
    Polynomial p = event_probability_poly(product.vertex(i));
    if (!subs.empty()) p = p.substitute(subs);
    vertex_polys.push_back(std::move(p));
  }
  const auto basis = collect_basis(vertex_polys);
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  const std::size_t width = basis.size();
  const std::size_t constant_at = index.at(Monomial{});

  std::vector<std::vector<int32_t>> dense_vertices;
  dense_vertices.reserve(vertex_polys.size());
  for (const auto& p : vertex_polys) {
    dense_vertices.push_back(densify(p, index, width));
  }

  std::unordered_map<std::vector<int32_t>, uint32_t, VecHash> distinct;
  std::vector<int32_t> row(width);
  std::size_t cliques = 0;
  for_each_maximal_clique(product, [&](std::span<const uint32_t> clique) {
    ++cliques;
    std::fill(row.begin(), row.end(), 0);
    row[constant_at] = -1;
    for (uint32_t v : clique) {
      const auto& dv = dense_vertices[v];
      for (std::size_t i = 0; i < width; ++i) row[i] += dv[i];
    }
    const bool zero =
        std::all_of(row.begin(), row.end(), [](int32_t x) { return x == 0; });
    if (!zero) distinct.emplace(row, 0u);
  });

  std::vector<std::vector<int32_t>> rows;
  rows.reserve(distinct.size());
  for (auto& [vec, _] : distinct) rows.push_back(vec);
  std::sort(rows.begin(), rows.end());

  ConstraintMatrix m;
  m.basis_ = basis;
  m.rows_ = rows.size();
  m.cliques_seen_ = cliques;
  m.coeffs_.reserve(rows.size() * width);
  for (const auto& r : rows) {
    m.coeffs_.insert(m.coeffs_.end(), r.begin(), r.end());
  }
  return m;
}

ConstraintMatrix ConstraintMatrix::from_polynomials(
    std::span<const Polynomial> polys) {
  const auto basis = collect_basis(polys);
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;

  // same row policy as build(): drop identically-zero rows, dedup, sort
  std::unordered_map<std::vector<int32_t>, uint32_t, VecHash> distinct;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    distinct.emplace(densify(p, index, basis.size()), 0u);
  }
  std::vector<std::vector<int32_t>> rows;
  rows.reserve(distinct.size());
  for (auto& [vec, _] : distinct) rows.push_back(vec);
  std::sort(rows.begin(), rows.end());

  ConstraintMatrix m;
  m.basis_ = basis;
  m.rows_ = rows.size();
  m.cliques_seen_ = polys.size();
  m.coeffs_.reserve(rows.size() * basis.size());
  for (const auto& r : rows) {
    m.coeffs_.insert(m.coeffs_.end(), r.begin(), r.end());
  }
  return m;
}

void ConstraintMatrix::monomial_values(
    const std::array<double, kNumVars>& point, std::vector<double>& mono) const {
  mono.resize(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    double v = 1;
    for (std::size_t k = 0; k < kNumVars; ++k) {
      for (uint8_t e = 0; e < basis_[i][k]; ++e) v *= point[k];
    }
    mono[i] = v;
  }
}

double ConstraintMatrix::value(std::size_t i,
                               const std::vector<double>& mono) const {
  const int32_t* row = coeffs_.data() + i * basis_.size();
  double s = 0;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (row[k]) s += row[k] * mono[k];
  }
  return s;
}

void ConstraintMatrix::values(const std::array<double, kNumVars>& point,
                              std::vector<double>& out) const {
  std::vector<double> mono;
  monomial_values(point, mono);
  out.resize(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = value(i, mono);
}

double ConstraintMatrix::max_violation(
    const std::array<double, kNumVars>& point) const {
  std::vector<double> mono;
  monomial_values(point, mono);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows_; ++i) {
    worst = std::max(worst, value(i, mono));
  }
  return worst;
}

Polynomial ConstraintMatrix::polynomial(std::size_t i) const {
  Polynomial p;
  const int32_t* row = coeffs_.data() + i * basis_.size();
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (row[k]) p += Polynomial::term(row[k], basis_[k]);
  }
  return p;
}

}  // namespace lobound
