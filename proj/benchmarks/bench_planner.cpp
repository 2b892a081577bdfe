#include <landflow/planner.hpp>

#include <benchmark/benchmark.h>

#include "test_support.hpp"

using namespace landflow;

static void BM_Solve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  auto p = testkit::random_problem(7007, n, d, 0);
  p.continuation = false;
  for (auto _ : state) {
    const auto sol = solve(p);
    if (!sol.converged) state.SkipWithError("did not converge");
    benchmark::DoNotOptimize(sol.residual);
  }
}
BENCHMARK(BM_Solve)->Args({3, 1})->Args({2, 2})->Args({2, 3})->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_Residual(benchmark::State& state) {
  auto p = testkit::random_problem(7007, 3, 2, 0);
  SeededStream rng(6, {});
  ControlSchedule s(2);
  for (int k = 0; k < 24; ++k) {
    s.push_back(k % 2 == 0 ? Generator::x : Generator::y, k % 2 == 0 ? rng.uniform(-1, 1) : rng.uniform(-0.1, 0.1));
  }
  for (auto _ : state) benchmark::DoNotOptimize(residual(s, p).max_error);
}
BENCHMARK(BM_Residual)->Unit(benchmark::kMicrosecond);
