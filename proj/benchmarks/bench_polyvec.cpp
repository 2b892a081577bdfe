#include <landflow/polyvec.hpp>

#include <benchmark/benchmark.h>

#include "test_support.hpp"

using namespace landflow;

static void BM_LieBracketGenerators(benchmark::State& state) {
  const auto g = generator_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lie_bracket(g.x, g.y));
}
BENCHMARK(BM_LieBracketGenerators)->Arg(1)->Arg(2)->Arg(3)->Arg(5);

static void BM_LieBracketRandom(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto deg = static_cast<std::uint32_t>(state.range(1));
  std::mt19937_64 rng(1);
  const auto a = testkit::random_field(rng, d, deg, 6);
  const auto b = testkit::random_field(rng, d, deg, 6);
  for (auto _ : state) benchmark::DoNotOptimize(lie_bracket(a, b));
}
BENCHMARK(BM_LieBracketRandom)->Args({2, 3})->Args({3, 3})->Args({3, 6})->Args({4, 6});

static void BM_IteratedBracket(benchmark::State& state) {
  const auto g = generator_pair(3);
  for (auto _ : state) {
    auto f = g.y;
    for (int k = 0; k < state.range(0); ++k) f = lie_bracket(g.y, lie_bracket(g.x, f));
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_IteratedBracket)->Arg(1)->Arg(2)->Arg(3);
