#include <landflow/bracketgen.hpp>
#include <landflow/ladders.hpp>

#include <benchmark/benchmark.h>

#include "test_support.hpp"

using namespace landflow;

static void BM_ClosureSearch(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(4);
  const auto cfg = testkit::random_exact_config(rng, d, n);
  for (auto _ : state) {
    const auto cert = closure_search(d, cfg);
    if (!cert.success) state.SkipWithError("rank deficient");
    benchmark::DoNotOptimize(cert.achieved_rank);
  }
}
BENCHMARK(BM_ClosureSearch)
    ->Args({1, 5})
    ->Args({2, 4})
    ->Args({3, 3})
    ->Args({4, 2})
    ->Unit(benchmark::kMillisecond);

static void BM_HigherLadder(benchmark::State& state) {
  const auto alpha = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    HigherLadder ladder(3);
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) benchmark::DoNotOptimize(ladder.pure(j, k, alpha).value());
    }
  }
}
BENCHMARK(BM_HigherLadder)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);
