#include "lobound/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lobound/appendix.hpp"
#include "lobound/ml.hpp"

namespace lobound {

std::array<std::pair<double, double>, kNumVars> OptProblem::default_bounds() {
  std::array<std::pair<double, double>, kNumVars> b;
  b.fill({0.0, 1.0});
  return b;
}

std::vector<Var> OptProblem::free_variables() const {
  std::vector<Var> vars;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    const Var v = static_cast<Var>(i);
    if (!elimination.count(v)) vars.push_back(v);
  }
  return vars;
}

std::vector<Polynomial> OptProblem::equality_constraints() const {
  std::vector<Polynomial> eqs;
  for (const auto& [v, p] : elimination) {
    eqs.push_back(Polynomial::variable(v) - p);
  }
  return eqs;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

NSBox box_from(const std::array<double, kNumVars>& v) {
  return NSBox{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

bool lex_less(const std::array<double, kNumVars>& a,
              const std::array<double, kNumVars>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Low-discrepancy coordinate: van der Corput radical inverse.
double halton(std::size_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

constexpr int kHaltonBases[16] = {2,  3,  5,  7,  11, 13, 17, 19,
                                  23, 29, 31, 37, 41, 43, 47, 53};

struct SplitMix64 {
  std::uint64_t s;
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Deterministic Nelder-Mead; ties in the vertex ordering break on the
// lexicographic point so runs are schedule-independent.
class NelderMead {
 public:
  using Fn = std::function<double(const std::vector<double>&)>;

  static std::vector<double> minimize(const Fn& f, std::vector<double> x0,
                                      double step, int max_iters) {
    const std::size_t d = x0.size();
    std::vector<std::vector<double>> pts(d + 1, x0);
    for (std::size_t i = 0; i < d; ++i) pts[i + 1][i] += step;
    std::vector<double> fv(d + 1);
    for (std::size_t i = 0; i <= d; ++i) fv[i] = f(pts[i]);

    std::vector<std::size_t> order(d + 1);
    const auto sort_order = [&] {
      for (std::size_t i = 0; i <= d; ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (fv[a] != fv[b]) return fv[a] < fv[b];
        return std::lexicographical_compare(pts[a].begin(), pts[a].end(),
                                            pts[b].begin(), pts[b].end());
      });
    };

    std::vector<double> centroid(d), xr(d), xe(d), xc(d);
    for (int iter = 0; iter < max_iters; ++iter) {
      sort_order();
      const std::size_t best = order[0], worst = order[d],
                        second = order[d - 1];
      double spread = 0;
      for (std::size_t i = 0; i < d; ++i) {
        spread = std::max(spread, std::abs(pts[worst][i] - pts[best][i]));
      }
      if (std::abs(fv[worst] - fv[best]) <=
              1e-13 * (1.0 + std::abs(fv[best])) &&
          spread <= 1e-11) {
        break;
      }

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t k = 0; k <= d; ++k) {
        if (k == worst) continue;
        for (std::size_t i = 0; i < d; ++i) centroid[i] += pts[k][i];
      }
      for (std::size_t i = 0; i < d; ++i) centroid[i] /= static_cast<double>(d);

      for (std::size_t i = 0; i < d; ++i) {
        xr[i] = centroid[i] + (centroid[i] - pts[worst][i]);
      }
      const double fr = f(xr);
      if (fr < fv[best]) {
        for (std::size_t i = 0; i < d; ++i) {
          xe[i] = centroid[i] + 2.0 * (xr[i] - centroid[i]);
        }
        const double fe = f(xe);
        if (fe < fr) {
          pts[worst] = xe;
          fv[worst] = fe;
        } else {
          pts[worst] = xr;
          fv[worst] = fr;
        }
        continue;
      }
      if (fr < fv[second]) {
        pts[worst] = xr;
        fv[worst] = fr;
        continue;
      }
      bool shrink = false;
      if (fr < fv[worst]) {
        for (std::size_t i = 0; i < d; ++i) {
          xc[i] = centroid[i] + 0.5 * (xr[i] - centroid[i]);
        }
        const double fc = f(xc);
        if (fc <= fr) {
          pts[worst] = xc;
          fv[worst] = fc;
        } else {
          shrink = true;
        }
      } else {
        for (std::size_t i = 0; i < d; ++i) {
          xc[i] = centroid[i] + 0.5 * (pts[worst][i] - centroid[i]);
        }
        const double fc = f(xc);
        if (fc < fv[worst]) {
          pts[worst] = xc;
          fv[worst] = fc;
        } else {
          shrink = true;
        }
      }
      if (shrink) {
        for (std::size_t k = 0; k <= d; ++k) {
          if (k == best) continue;
          for (std::size_t i = 0; i < d; ++i) {
            pts[k][i] = pts[best][i] + 0.5 * (pts[k][i] - pts[best][i]);
          }
          fv[k] = f(pts[k]);
        }
      }
    }
    sort_order();
    return pts[order[0]];
  }
};

class Engine {
 public:
  Engine(const OptProblem& prob, const OptConfig& cfg)
      : prob_(prob), cfg_(cfg), free_(prob.free_variables()) {
    for (const auto& [v, p] : prob_.elimination) {
      bound_.emplace_back(static_cast<std::size_t>(v), &p);
    }
  }

  OptResult run() {
    const auto t0 = std::chrono::steady_clock::now();
    OptResult result;
    result.preset = prob_.name;
    result.seed = cfg_.seed;

    const std::vector<std::vector<double>> base = make_starts();
    std::vector<std::vector<double>> extra;

    if (prob_.constraints && prob_.constraints->size() <= 64) {
      working_.resize(prob_.constraints->size());
      for (std::size_t i = 0; i < working_.size(); ++i) {
        working_[i] = static_cast<uint32_t>(i);
      }
    }

    Candidate incumbent;
    bool settled = false;
    int starts_used = 0;
    for (int round = 0; round < 40 && !settled; ++round) {
      std::vector<std::vector<double>> starts = base;
      starts.insert(starts.end(), extra.begin(), extra.end());
      starts_used += static_cast<int>(starts.size());

      incumbent = reduce(solve_starts(starts));
      if (incumbent.working_viol > cfg_.tol) break;  // working set infeasible

      if (prob_.constraints && working_.size() < prob_.constraints->size()) {
        std::vector<double> vals;
        prob_.constraints->values(incumbent.v, vals);
        if (grow_working_set(vals)) {
          extra.push_back(incumbent.x);
          continue;
        }
      }
      settled = true;
    }

    if (settled) {
      // Feasibility polish: a stiff short run from the incumbent; keep it
      // only if it stays feasible for the whole family and does not lose
      // objective value.
      Candidate polished = solve_one(incumbent.x, {1e8}, 1e-3);
      if (polished.working_viol <= cfg_.tol &&
          full_violation(polished.v) <= cfg_.tol &&
          polished.value >= incumbent.value) {
        incumbent = polished;
      }
    }

    result.point = box_from(incumbent.v);
    result.value = incumbent.value;
    const double worst = full_violation(incumbent.v);
    result.feasibility = std::max(0.0, worst);
    result.feasible = settled && worst <= cfg_.tol;
    result.starts_used = starts_used;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return result;
  }

 private:
  struct Candidate {
    double value = -kInf;
    double working_viol = kInf;
    std::array<double, kNumVars> v{};
    std::vector<double> x;
  };

  std::size_t dim() const { return free_.size(); }

  std::array<double, kNumVars> reconstruct(const std::vector<double>& x) const {
    std::array<double, kNumVars> v{};
    for (std::size_t i = 0; i < free_.size(); ++i) {
      const auto& [lo, hi] = prob_.bounds[static_cast<std::size_t>(free_[i])];
      v[static_cast<std::size_t>(free_[i])] = std::clamp(x[i], lo, hi);
    }
    // Bindings may only mention free variables.
    for (const auto& [slot, p] : bound_) v[slot] = p->evaluate(v);
    return v;
  }

  double objective(const std::array<double, kNumVars>& v) const {
    if (prob_.objective_fn) return prob_.objective_fn(box_from(v));
    return prob_.objective.evaluate(v);
  }

  double bounds_overshoot(const std::vector<double>& x) const {
    double s = 0;
    for (std::size_t i = 0; i < free_.size(); ++i) {
      const auto& [lo, hi] = prob_.bounds[static_cast<std::size_t>(free_[i])];
      s += std::max(0.0, lo - x[i]) + std::max(0.0, x[i] - hi);
    }
    return s;
  }

  // Positivity of all 16 table entries; returns (sum, max) of violations.
  std::pair<double, double> positivity(const std::array<double, kNumVars>& v) const {
    if (!prob_.positivity) return {0.0, 0.0};
    double sum = 0, worst = 0;
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        const double m = v[x], n = v[2 + y], c = v[4 + 2 * x + y];
        const double e[4] = {c, m - c, n - c, 1 + c - m - n};
        for (double p : e) {
          const double viol = std::max(std::max(0.0, -p), std::max(0.0, p - 1));
          sum += viol;
          worst = std::max(worst, viol);
        }
      }
    }
    return {sum, worst};
  }

  std::pair<double, double> fn_violations(const std::array<double, kNumVars>& v) const {
    if (prob_.constraint_fns.empty()) return {0.0, 0.0};
    const NSBox box = box_from(v);
    double sum = 0, worst = 0;
    for (const auto& fn : prob_.constraint_fns) {
      const double g = fn(box);
      sum += std::max(0.0, g);
      worst = std::max(worst, g);
    }
    return {sum, worst};
  }

  std::pair<double, double> working_violations(
      const std::array<double, kNumVars>& v, std::vector<double>& mono) const {
    if (!prob_.constraints || working_.empty()) return {0.0, 0.0};
    prob_.constraints->monomial_values(v, mono);
    double sum = 0, worst = 0;
    for (uint32_t i : working_) {
      const double g = prob_.constraints->value(i, mono);
      sum += std::max(0.0, g);
      worst = std::max(worst, g);
    }
    return {sum, worst};
  }

  // Max violation across positivity, callables and the working set.
  double working_feasibility(const std::array<double, kNumVars>& v,
                             std::vector<double>& mono) const {
    double worst = positivity(v).second;
    worst = std::max(worst, fn_violations(v).second);
    worst = std::max(worst, working_violations(v, mono).second);
    return worst;
  }

  double full_violation(const std::array<double, kNumVars>& v) const {
    double worst = positivity(v).second;
    worst = std::max(worst, fn_violations(v).second);
    if (prob_.constraints) {
      std::vector<double> vals;
      prob_.constraints->values(v, vals);
      for (double g : vals) worst = std::max(worst, g);
    }
    return worst;
  }

  Candidate solve_one(std::vector<double> x,
                      std::initializer_list<double> mus, double step) const {
    std::vector<double> mono;
    for (double mu : mus) {
      const auto f = [&](const std::vector<double>& raw) {
        const auto v = reconstruct(raw);
        double viol = bounds_overshoot(raw);
        viol += positivity(v).first;
        viol += fn_violations(v).first;
        viol += working_violations(v, mono).first;
        return -objective(v) + mu * viol;
      };
      x = NelderMead::minimize(f, std::move(x), step, cfg_.max_iters);
      step *= 0.2;
    }
    Candidate c;
    c.x = x;
    c.v = reconstruct(x);
    c.value = objective(c.v);
    c.working_viol = working_feasibility(c.v, mono);
    return c;
  }

  std::vector<Candidate> solve_starts(
      const std::vector<std::vector<double>>& starts) const {
    std::vector<Candidate> out(starts.size());
    const int jobs = std::max(1, cfg_.jobs);
    if (jobs == 1 || starts.size() <= 1) {
      for (std::size_t i = 0; i < starts.size(); ++i) {
        out[i] = solve_one(starts[i], {1e2, 1e4, 1e6}, 0.15);
      }
      return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= starts.size()) return;
        out[i] = solve_one(starts[i], {1e2, 1e4, 1e6}, 0.15);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
  }

  // Total order: feasible first, then value (max), then lexicographic point.
  Candidate reduce(std::vector<Candidate> cands) const {
    auto better = [&](const Candidate& a, const Candidate& b) {
      const bool af = a.working_viol <= cfg_.tol, bf = b.working_viol <= cfg_.tol;
      if (af != bf) return af;
      if (af) {
        if (a.value != b.value) return a.value > b.value;
        return lex_less(a.v, b.v);
      }
      if (a.working_viol != b.working_viol) {
        return a.working_viol < b.working_viol;
      }
      return lex_less(a.v, b.v);
    };
    Candidate best = cands.front();
    for (std::size_t i = 1; i < cands.size(); ++i) {
      if (better(cands[i], best)) best = cands[i];
    }
    return best;
  }

  // Pulls the most violated rows into the working set; false when the point
  // already satisfies the whole family.
  bool grow_working_set(const std::vector<double>& vals) {
    std::vector<uint32_t> violated;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i] > cfg_.tol) violated.push_back(static_cast<uint32_t>(i));
    }
    if (violated.empty()) return false;
    std::sort(violated.begin(), violated.end(), [&](uint32_t a, uint32_t b) {
      if (vals[a] != vals[b]) return vals[a] > vals[b];
      return a < b;
    });
    std::size_t added = 0;
    for (uint32_t idx : violated) {
      if (added == 32) break;
      if (std::find(working_.begin(), working_.end(), idx) == working_.end()) {
        working_.push_back(idx);
        ++added;
      }
    }
    return added > 0;
  }

  std::vector<std::vector<double>> make_starts() const {
    const std::size_t d = dim();
    std::vector<std::vector<double>> starts;
    starts.reserve(static_cast<std::size_t>(cfg_.starts) + 2);

    const auto project = [&](const NSBox& box) {
      const auto vals = box.values();
      std::vector<double> x(d);
      for (std::size_t i = 0; i < d; ++i) {
        const std::size_t slot = static_cast<std::size_t>(free_[i]);
        x[i] = std::clamp(vals[slot], prob_.bounds[slot].first,
                          prob_.bounds[slot].second);
      }
      return x;
    };
    starts.push_back(project(pr_box()));
    starts.push_back(project(uniform_box()));

    std::vector<std::pair<double, double>> bounds(d);
    for (std::size_t i = 0; i < d; ++i) {
      bounds[i] = prob_.bounds[static_cast<std::size_t>(free_[i])];
    }
    for (auto& x : scatter_starts(bounds, cfg_.starts, cfg_.seed)) {
      starts.push_back(std::move(x));
    }
    return starts;
  }

  const OptProblem& prob_;
  const OptConfig& cfg_;
  std::vector<Var> free_;
  std::vector<std::pair<std::size_t, const Polynomial*>> bound_;
  std::vector<uint32_t> working_;
};

}  // namespace

OptResult maximize(const OptProblem& problem, const OptConfig& config) {
  if (problem.free_variables().empty()) {
    throw std::invalid_argument("maximize: no free variables");
  }
  return Engine(problem, config).run();
}

std::vector<double> nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, double step, int max_iters) {
  return NelderMead::minimize(f, std::move(x0), step, max_iters);
}

std::vector<std::vector<double>> scatter_starts(
    std::span<const std::pair<double, double>> bounds, int count,
    std::uint64_t seed) {
  const std::size_t d = bounds.size();
  std::vector<std::vector<double>> starts;
  starts.reserve(static_cast<std::size_t>(std::max(0, count)));
  const int n_halton = count / 2;
  for (int k = 0; k < n_halton; ++k) {
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) {
      const auto& [lo, hi] = bounds[i];
      x[i] = lo + halton(static_cast<std::size_t>(k) + 1,
                         kHaltonBases[i % std::size(kHaltonBases)]) *
                      (hi - lo);
    }
    starts.push_back(std::move(x));
  }
  SplitMix64 rng{seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull};
  for (int k = n_halton; k < count; ++k) {
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) {
      const auto& [lo, hi] = bounds[i];
      x[i] = lo + rng.u01() * (hi - lo);
    }
    starts.push_back(std::move(x));
  }
  return starts;
}

namespace {

const char* kPresetNames[] = {
    "hardy_ns",           "hardy_ml",           "hardy_lo2_full",
    "hardy_lo2_appendix", "cabello_lo2_full",   "cabello_lo2_appendix",
    "chsh_ml",            "cabello_ml",
};

BoxFunction ml_constraint_fn() {
  return [](const NSBox& box) {
    return ml_functional(box).functional - std::numbers::pi;
  };
}

std::shared_ptr<const ConstraintMatrix> appendix_matrix(Scenario s) {
  const OrthoGraph single = build_single_copy_graph(zero_events(s));
  const OrthoGraph product = conormal_product(single, single);
  const Substitution subs = scenario_substitution(s);
  std::vector<Polynomial> polys;
  for (const auto& entry : appendix_entries(s)) {
    std::vector<uint32_t> members;
    for (const auto& label : entry.event_labels) {
      const auto idx = product.find_vertex(parse_event(label));
      if (!idx) throw std::logic_error("appendix event missing: " + label);
      members.push_back(static_cast<uint32_t>(*idx));
    }
    polys.push_back(clique_to_inequality(product, members, subs).reduced);
  }
  return std::make_shared<ConstraintMatrix>(
      ConstraintMatrix::from_polynomials(polys));
}

std::shared_ptr<const ConstraintMatrix> full_matrix(Scenario s) {
  const OrthoGraph single = build_single_copy_graph(zero_events(s));
  const OrthoGraph product = conormal_product(single, single);
  return std::make_shared<ConstraintMatrix>(
      ConstraintMatrix::build(product, scenario_substitution(s)));
}

Polynomial hardy_objective() { return poly(Var::c3); }

Polynomial cabello_objective() {
  return poly(Var::c3) - poly(Var::m0) + poly(Var::c2);
}

}  // namespace

const char* preset_name(Preset p) {
  return kPresetNames[static_cast<std::size_t>(p)];
}

Preset preset_from_name(const std::string& name) {
  for (std::size_t i = 0; i < std::size(kPresetNames); ++i) {
    if (name == kPresetNames[i]) return static_cast<Preset>(i);
  }
  throw std::invalid_argument("unknown preset: " + name);
}

const std::vector<Preset>& all_presets() {
  static const std::vector<Preset> presets = {
      Preset::HardyNS,           Preset::HardyML,
      Preset::HardyLO2Full,      Preset::HardyLO2Appendix,
      Preset::CabelloLO2Full,    Preset::CabelloLO2Appendix,
      Preset::ChshML,            Preset::CabelloML,
  };
  return presets;
}

OptProblem preset(Preset p) {
  OptProblem prob;
  prob.name = preset_name(p);
  switch (p) {
    case Preset::HardyNS:
      prob.objective = hardy_objective();
      prob.elimination = scenario_substitution(Scenario::Hardy);
      break;
    case Preset::HardyML:
      prob.objective = hardy_objective();
      prob.elimination = scenario_substitution(Scenario::Hardy);
      prob.constraint_fns.push_back(ml_constraint_fn());
      break;
    case Preset::HardyLO2Full:
      prob.objective = hardy_objective();
      prob.elimination = scenario_substitution(Scenario::Hardy);
      prob.constraints = full_matrix(Scenario::Hardy);
      break;
    case Preset::HardyLO2Appendix:
      prob.objective = hardy_objective();
      prob.elimination = scenario_substitution(Scenario::Hardy);
      prob.constraints = appendix_matrix(Scenario::Hardy);
      break;
    case Preset::CabelloLO2Full:
      prob.objective = cabello_objective();
      prob.elimination = scenario_substitution(Scenario::Cabello);
      prob.constraints = full_matrix(Scenario::Cabello);
      break;
    case Preset::CabelloLO2Appendix:
      prob.objective = cabello_objective();
      prob.elimination = scenario_substitution(Scenario::Cabello);
      prob.constraints = appendix_matrix(Scenario::Cabello);
      break;
    case Preset::ChshML:
      prob.objective = chsh_polynomial();
      prob.constraint_fns.push_back(ml_constraint_fn());
      break;
    case Preset::CabelloML:
      prob.objective = cabello_objective();
      prob.elimination = scenario_substitution(Scenario::Cabello);
      prob.constraint_fns.push_back(ml_constraint_fn());
      break;
  }
  return prob;
}

CompareReport compare(const OptResult& a, const OptResult& b, double tol) {
  CompareReport r;
  r.delta = std::abs(a.value - b.value);
  r.agree = a.feasible && b.feasible && r.delta <= tol;
  std::ostringstream os;
  os << a.preset << " (" << a.value << ") vs " << b.preset << " (" << b.value
     << "): delta " << r.delta << (r.agree ? " <= " : " > ") << tol << ", "
     << (r.agree ? "agree" : "DISAGREE");
  r.text = os.str();
  return r;
}

}  // namespace lobound
