#include "lobound/quantum.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

namespace lobound {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

}  // namespace

double TwoQubitState::norm() const {
  double s = 0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

bool TwoQubitState::normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

std::array<Complex, 2> QubitMeasurement::outcome0_ket() const {
  return {Complex{std::cos(theta / 2), 0.0},
          std::polar(std::sin(theta / 2), phi)};
}

NSBox born_box(const TwoQubitState& state, const QubitMeasurement& a0,
               const QubitMeasurement& a1, const QubitMeasurement& b0,
               const QubitMeasurement& b1) {
  const std::array<std::array<Complex, 2>, 2> va = {a0.outcome0_ket(),
                                                    a1.outcome0_ket()};
  const std::array<std::array<Complex, 2>, 2> vb = {b0.outcome0_ket(),
                                                    b1.outcome0_ket()};
  const auto& psi = state.amplitudes;

  // Alice marginal of outcome 0: collapse her qubit onto v, norm the rest.
  const auto marginal_a = [&](int x) {
    const auto& v = va[x];
    double m = 0;
    for (int j = 0; j < 2; ++j) {
      const Complex t = std::conj(v[0]) * psi[j] + std::conj(v[1]) * psi[2 + j];
      m += std::norm(t);
    }
    return m;
  };
  const auto marginal_b = [&](int y) {
    const auto& w = vb[y];
    double n = 0;
    for (int i = 0; i < 2; ++i) {
      const Complex t =
          std::conj(w[0]) * psi[2 * i] + std::conj(w[1]) * psi[2 * i + 1];
      n += std::norm(t);
    }
    return n;
  };
  const auto joint00 = [&](int x, int y) {
    const auto& v = va[x];
    const auto& w = vb[y];
    Complex amp = 0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        amp += std::conj(v[i]) * std::conj(w[j]) * psi[2 * i + j];
      }
    }
    return std::norm(amp);
  };

  NSBox box;
  box.m0 = marginal_a(0);
  box.m1 = marginal_a(1);
  box.n0 = marginal_b(0);
  box.n1 = marginal_b(1);
  box.c1 = joint00(0, 0);
  box.c2 = joint00(0, 1);
  box.c3 = joint00(1, 0);
  box.c4 = joint00(1, 1);
  return box;
}

TwoQubitState state_from_chart(std::span<const double> chart) {
  // Hypersphere magnitudes from chart[0..2], relative phases chart[3..5].
  const double t1 = chart[0], t2 = chart[1], t3 = chart[2];
  const double r0 = std::cos(t1);
  const double r1 = std::sin(t1) * std::cos(t2);
  const double r2 = std::sin(t1) * std::sin(t2) * std::cos(t3);
  const double r3 = std::sin(t1) * std::sin(t2) * std::sin(t3);
  TwoQubitState s;
  s.amplitudes[0] = Complex{r0, 0.0};
  s.amplitudes[1] = std::polar(r1, chart[3]);
  s.amplitudes[2] = std::polar(r2, chart[4]);
  s.amplitudes[3] = std::polar(r3, chart[5]);
  return s;
}

std::array<QubitMeasurement, 4> measurements_from_chart(
    std::span<const double> chart) {
  std::array<QubitMeasurement, 4> m;
  for (int k = 0; k < 4; ++k) {
    m[k].theta = chart[6 + 2 * k];
    m[k].phi = chart[6 + 2 * k + 1];
  }
  return m;
}

NSBox box_from_chart(std::span<const double> chart) {
  const auto m = measurements_from_chart(chart);
  return born_box(state_from_chart(chart), m[0], m[1], m[2], m[3]);
}

namespace {

// Shared quantum search: maximize objective(box) while driving the listed
// zero probabilities to zero by escalating exact penalties.
QuantumOptResult quantum_search(
    const char* name, const std::function<double(const NSBox&)>& objective,
    const std::vector<std::function<double(const NSBox&)>>& zeros,
    const OptConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<std::pair<double, double>> bounds(kQuantumChartDim);
  for (int i = 0; i < 3; ++i) bounds[i] = {0.0, kPi / 2};           // magnitudes
  for (int i = 3; i < 6; ++i) bounds[i] = {0.0, 2 * kPi};          // phases
  for (int k = 0; k < 4; ++k) {
    bounds[6 + 2 * k] = {0.0, kPi};                                 // theta
    bounds[6 + 2 * k + 1] = {0.0, 2 * kPi};                         // phi
  }

  const auto clamp_chart = [&](const std::vector<double>& x) {
    std::vector<double> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      c[i] = std::clamp(x[i], bounds[i].first, bounds[i].second);
    }
    return c;
  };

  struct Candidate {
    double value = -std::numeric_limits<double>::infinity();
    double viol = std::numeric_limits<double>::infinity();
    std::vector<double> x;
    std::array<double, kNumVars> box_values{};
  };

  const auto evaluate = [&](const std::vector<double>& raw) {
    Candidate c;
    c.x = clamp_chart(raw);
    const NSBox box = box_from_chart(c.x);
    c.box_values = box.values();
    c.value = objective(box);
    c.viol = 0;
    for (const auto& z : zeros) c.viol = std::max(c.viol, z(box));
    return c;
  };

  const auto solve_one = [&](std::vector<double> x) {
    for (double mu : {1e2, 1e4, 1e6, 1e8}) {
      const auto f = [&](const std::vector<double>& raw) {
        double overshoot = 0;
        for (std::size_t i = 0; i < raw.size(); ++i) {
          overshoot += std::max(0.0, bounds[i].first - raw[i]) +
                       std::max(0.0, raw[i] - bounds[i].second);
        }
        const NSBox box = box_from_chart(clamp_chart(raw));
        double viol = overshoot;
        for (const auto& z : zeros) viol += z(box);
        return -objective(box) + mu * viol;
      };
      x = nelder_mead_minimize(f, std::move(x), mu <= 1e2 ? 0.3 : 0.02,
                               cfg.max_iters);
    }
    return evaluate(x);
  };

  const auto starts = scatter_starts(bounds, cfg.starts, cfg.seed);
  const auto better = [&](const Candidate& a, const Candidate& b) {
    const bool af = a.viol <= cfg.tol, bf = b.viol <= cfg.tol;
    if (af != bf) return af;
    if (af && a.value != b.value) return a.value > b.value;
    if (!af && a.viol != b.viol) return a.viol < b.viol;
    if (a.value != b.value) return a.value > b.value;
    if (a.box_values != b.box_values) {
      return std::lexicographical_compare(a.box_values.begin(),
                                          a.box_values.end(),
                                          b.box_values.begin(),
                                          b.box_values.end());
    }
    return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(),
                                        b.x.end());
  };

  std::vector<Candidate> cands(starts.size());
  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) {
      cands[i] = solve_one(starts[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= starts.size()) return;
        cands[i] = solve_one(starts[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Candidate best = cands.front();
  for (std::size_t i = 1; i < cands.size(); ++i) {
    if (better(cands[i], best)) best = cands[i];
  }

  QuantumOptResult out;
  std::copy(best.x.begin(), best.x.end(), out.chart.begin());
  out.state = state_from_chart(out.chart);
  out.measurements = measurements_from_chart(out.chart);
  out.result.preset = name;
  out.result.point = box_from_chart(out.chart);
  out.result.value = best.value;
  out.result.feasibility = std::max(0.0, best.viol);
  out.result.feasible = best.viol <= cfg.tol;
  out.result.starts_used = static_cast<int>(starts.size());
  out.result.seed = cfg.seed;
  out.result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

double p_ab_xy(const NSBox& box, int a, int b, int x, int y) {
  return table_entry(box, x, y, a, b);
}

}  // namespace

QuantumOptResult max_quantum_hardy(const OptConfig& config) {
  return quantum_search(
      "quantum_hardy",
      [](const NSBox& box) { return p_ab_xy(box, 0, 0, 1, 0); },
      {
          [](const NSBox& box) { return p_ab_xy(box, 0, 1, 0, 1); },
          [](const NSBox& box) { return p_ab_xy(box, 0, 0, 1, 1); },
          [](const NSBox& box) { return p_ab_xy(box, 1, 0, 0, 0); },
      },
      config);
}

QuantumOptResult max_quantum_cabello(const OptConfig& config) {
  return quantum_search(
      "quantum_cabello",
      [](const NSBox& box) {
        return p_ab_xy(box, 0, 0, 1, 0) - p_ab_xy(box, 0, 1, 0, 1);
      },
      {
          [](const NSBox& box) { return p_ab_xy(box, 0, 0, 1, 1); },
          [](const NSBox& box) { return p_ab_xy(box, 1, 0, 0, 0); },
      },
      config);
}

}  // namespace lobound
