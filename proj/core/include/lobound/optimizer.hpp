#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lobound/box.hpp"
#include "lobound/lo.hpp"

namespace lobound {

using BoxFunction = std::function<double(const NSBox&)>;

// One constrained maximization over the eight box parameters.
struct OptProblem {
  std::string name;

  // Maximized objective: exact polynomial, or an arbitrary callable when set
  // (the callable takes precedence).
  Polynomial objective;
  BoxFunction objective_fn;

  // Equality constraints handled by exact elimination: each bound variable
  // is recomputed from the free ones at every evaluation, so the zeros hold
  // exactly instead of being penalized.
  Substitution elimination;

  // Inequality constraints, satisfied when value <= 0.
  std::shared_ptr<const ConstraintMatrix> constraints;  // may be null
  std::vector<BoxFunction> constraint_fns;  // e.g. ML functional - pi

  // Keep all 16 table entries inside [0,1].
  bool positivity = true;

  std::array<std::pair<double, double>, kNumVars> bounds = default_bounds();

  static std::array<std::pair<double, double>, kNumVars> default_bounds();

  std::vector<Var> free_variables() const;
  // The eliminated equalities as polynomials (variable - binding = 0).
  std::vector<Polynomial> equality_constraints() const;
};

struct OptConfig {
  int starts = 256;
  std::uint64_t seed = 1;
  double tol = 1e-8;     // feasibility tolerance
  int max_iters = 4000;  // Nelder-Mead iteration cap per penalty stage
  int jobs = 1;          // worker threads over the start points
};

struct OptResult {
  std::string preset;
  NSBox point{};
  double value = 0;
  double feasibility = 0;  // max constraint violation at point (0 if interior)
  bool feasible = false;
  int starts_used = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0;
};

// Multi-start Nelder-Mead with exact-penalty constraint handling and a
// feasibility-polishing pass. Deterministic for fixed (starts, seed): starts
// come from a low-discrepancy sequence plus seeded uniforms, and the
// reduction picks the max by (value, then lexicographic point). Large
// constraint families are activated lazily: optimize over a working set,
// check the incumbent against every constraint, pull in the worst violated
// rows, repeat until the incumbent is feasible for the full family.
OptResult maximize(const OptProblem& problem, const OptConfig& config = {});

enum class Preset {
  HardyNS,
  HardyML,
  HardyLO2Full,
  HardyLO2Appendix,
  CabelloLO2Full,
  CabelloLO2Appendix,
  ChshML,
  CabelloML,
};

const char* preset_name(Preset p);
Preset preset_from_name(const std::string& name);
const std::vector<Preset>& all_presets();

// Builds the named problem. The *_lo2_* presets construct their constraint
// matrices here; the full two-copy families stream millions of cliques, so
// expect seconds of setup.
OptProblem preset(Preset p);

struct CompareReport {
  double delta = 0;  // |value_a - value_b|
  bool agree = false;
  std::string text;
};

CompareReport compare(const OptResult& a, const OptResult& b, double tol);

// Shared search kernels (the quantum reference search reuses them).

// Deterministic Nelder-Mead descent from x0; ties in the vertex ordering
// break lexicographically.
std::vector<double> nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, double step, int max_iters);

// Deterministic start scatter: half low-discrepancy, half seeded uniform.
std::vector<std::vector<double>> scatter_starts(
    std::span<const std::pair<double, double>> bounds, int count,
    std::uint64_t seed);

}  // namespace lobound
