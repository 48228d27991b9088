#include <benchmark/benchmark.h>

#include <lobound/box.hpp>
#include <lobound/graph.hpp>
#include <lobound/lo.hpp>
#include <lobound/ml.hpp>
#include <lobound/optimizer.hpp>
#include <lobound/quantum.hpp>

#include <random>

using namespace lobound;

namespace {

OrthoGraph hardy_product() {
  OrthoGraph g1 = build_single_copy_graph(zero_events(Scenario::Hardy));
  return conormal_product(g1, g1);
}

void bm_build_product_graph(benchmark::State& state) {
  for (auto _ : state) {
    OrthoGraph g = hardy_product();
    benchmark::DoNotOptimize(g.edge_count());
  }
}
BENCHMARK(bm_build_product_graph);

void bm_count_product_cliques(benchmark::State& state) {
  OrthoGraph g = hardy_product();
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_maximal_cliques(g));
  }
}
BENCHMARK(bm_count_product_cliques)->Unit(benchmark::kMillisecond);

void bm_constraint_matrix_build(benchmark::State& state) {
  OrthoGraph g = hardy_product();
  Substitution subs = scenario_substitution(Scenario::Hardy);
  for (auto _ : state) {
    ConstraintMatrix m = ConstraintMatrix::build(g, subs);
    benchmark::DoNotOptimize(m.size());
  }
}
BENCHMARK(bm_constraint_matrix_build)->Unit(benchmark::kMillisecond);

void bm_constraint_matrix_eval(benchmark::State& state) {
  OrthoGraph g = hardy_product();
  ConstraintMatrix m =
      ConstraintMatrix::build(g, scenario_substitution(Scenario::Hardy));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 0.5);
  std::array<double, kNumVars> x{};
  for (double& v : x) v = u(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.max_violation(x));
  }
}
BENCHMARK(bm_constraint_matrix_eval)->Unit(benchmark::kMicrosecond);

void bm_polynomial_eval(benchmark::State& state) {
  OrthoGraph g1 = build_single_copy_graph(zero_events(Scenario::Hardy));
  OrthoGraph g2 = conormal_product(g1, g1);
  CliqueList cliques = maximal_cliques(g1);
  Polynomial p = clique_to_inequality(g1, cliques[0]).polynomial;
  std::array<double, kNumVars> x{0.3, 0.4, 0.2, 0.5, 0.1, 0.2, 0.15, 0.05};
  (void)g2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.evaluate(x));
  }
}
BENCHMARK(bm_polynomial_eval);

void bm_ml_functional(benchmark::State& state) {
  NSBox box = pr_box();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ml_functional(box).functional);
  }
}
BENCHMARK(bm_ml_functional);

void bm_nelder_mead_ns(benchmark::State& state) {
  OptProblem problem = preset(Preset::HardyNS);
  OptConfig cfg;
  cfg.starts = 16;
  cfg.jobs = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximize(problem, cfg).value);
  }
}
BENCHMARK(bm_nelder_mead_ns)->Unit(benchmark::kMillisecond);

void bm_born_box(benchmark::State& state) {
  std::array<double, kQuantumChartDim> chart{};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (double& c : chart) c = u(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(box_from_chart(chart).c3);
  }
}
BENCHMARK(bm_born_box);

}  // namespace

BENCHMARK_MAIN();
