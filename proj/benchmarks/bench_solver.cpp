#include <benchmark/benchmark.h>

#include "frontier/analysis.hpp"
#include "frontier/oracle.hpp"
#include "frontier/solver.hpp"

namespace {

using namespace frontier;

ProblemInstance seven_route() {
  auto lin = [](long rho, long x) { return PiecewiseLinear::linear(Rational(rho), Rational(x)); };
  return ProblemInstance({{0, 2, 5}, {1, 3, 6}, {2, 3, 4, 5, 6}, {5, 6}},
                         {lin(2, -11), lin(2, -11), lin(1, -11), lin(1, -11), lin(1, 0), lin(2, -10), lin(2, -10)});
}

// Ring of n routes where resource j carries routes j and j+1.
ProblemInstance ring(std::size_t n) {
  std::vector<IndexSet> resources;
  std::vector<PiecewiseLinear> h;
  for (std::size_t j = 0; j < n; ++j) {
    IndexSet g{j, (j + 1) % n};
    std::sort(g.begin(), g.end());
    resources.push_back(g);
    h.push_back(PiecewiseLinear(Rational(-static_cast<long>(j % 3)), {{Rational(1), Rational(j % 2 + 1)}},
                                Rational(3)));
  }
  return ProblemInstance(std::move(resources), std::move(h));
}

void BM_SolveSevenRoute(benchmark::State& state) {
  const ProblemInstance inst = seven_route();
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst, Rational(5)));
}
BENCHMARK(BM_SolveSevenRoute);

void BM_SolveRing(benchmark::State& state) {
  const ProblemInstance inst = ring(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst, Rational(7, 2)));
}
BENCHMARK(BM_SolveRing)->RangeMultiplier(2)->Range(4, 64);

void BM_Trajectory(benchmark::State& state) {
  const ProblemInstance inst = seven_route();
  const auto grid = default_grid(inst, Rational(0), Rational(10), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sample_trajectory(inst, grid));
}
BENCHMARK(BM_Trajectory)->Arg(64)->Arg(256);

void BM_OracleDominance(benchmark::State& state) {
  auto lin = [](long rho, long x) { return PiecewiseLinear::linear(Rational(rho), Rational(x)); };
  const ProblemInstance inst({{0, 1}, {0, 2}}, {lin(1, -2), lin(1, -1), lin(5, 0)});
  const RVector F = solve(inst, Rational(2)).F;
  const GridSpec grid{Rational(1, state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(dominance_check(inst, Rational(2), grid, F));
}
BENCHMARK(BM_OracleDominance)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
