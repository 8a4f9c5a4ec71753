#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "pucci/discretization.hpp"
#include "pucci/oracles.hpp"
#include "pucci/solver.hpp"

using namespace pucci;

namespace {

void BM_pucci_plus(benchmark::State& state) {
  const PucciPair pair(1.0, 2.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  SymMat2 m{d(rng), d(rng), d(rng)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pucci_plus(m, pair));
    m.m12 += 1e-9;
  }
}
BENCHMARK(BM_pucci_plus);

void BM_transcendental_root(benchmark::State& state) {
  double alpha = 4.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(transcendental_root(alpha, 0.5));
    alpha += 1e-9;
  }
}
BENCHMARK(BM_transcendental_root);

void BM_bellman_sweep_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PucciPair pair(1.0, 2.0);
  const GridPtr g = build_grid(Domain::rectangle(1.0, 1.0), n, n);
  const StencilSet st = StencilSet::make(*g);
  ScalarField f(g, 0.0);
  for (int node = 0; node < g->num_nodes(); ++node) {
    f.values[node] = std::sin(3.0 * g->x(node)) * std::cos(2.0 * g->y(node));
  }
  for (auto _ : state) {
    double acc = 0.0;
    for (int node = 0; node < g->num_nodes(); ++node) {
      if (g->is_boundary(node)) continue;
      acc += bellman_value(f, node, pair, Op::plus, st).value;
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * (n - 2) * (n - 2));
}
BENCHMARK(BM_bellman_sweep_2d)->Arg(65)->Arg(129);

void BM_howard_solve_1d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PucciPair pair(1.0, 4.0);
  const GridPtr g = build_grid(Domain::interval(1.0), n);
  const StencilSet st = StencilSet::make(*g);
  const double alpha = 4.0;
  const ShiftedProblem p{pair, Op::plus, alpha, adapt_shift(pair, alpha, *g),
                         ScalarField(g, 1.0), {}, true, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(howard_solve(p, *g, st, 1e-10, 50));
  }
}
BENCHMARK(BM_howard_solve_1d)->Arg(1024)->Arg(4096);

void BM_principal_eigen_1d(benchmark::State& state) {
  const PucciPair pair(1.0, 4.0);
  const GridPtr g = build_grid(Domain::interval(1.0), static_cast<int>(state.range(0)));
  const StencilSet st = StencilSet::make(*g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(principal_eigen(Mode::positive, pair, 4.0, g, st));
  }
}
BENCHMARK(BM_principal_eigen_1d)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_principal_eigen_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PucciPair pair(1.0, 2.0);
  const GridPtr g = build_grid(Domain::rectangle(1.0, 1.0), n, n);
  const StencilSet st = StencilSet::make(*g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(principal_eigen(Mode::positive, pair, 2.0, g, st));
  }
}
BENCHMARK(BM_principal_eigen_2d)->Arg(33)->Arg(65)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
