#include <landflow/flow.hpp>

#include <benchmark/benchmark.h>

#include "test_support.hpp"

using namespace landflow;

static void BM_FlowScheduleIntegrated(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  SeededStream rng(5, {d, n});
  const auto start = testkit::unit_diameter_points(rng, d, n);
  ControlSchedule s(d);
  for (int k = 0; k < 16; ++k) {
    s.push_back(k % 2 == 0 ? Generator::x : Generator::y, k % 2 == 0 ? rng.uniform(-1, 1) : rng.uniform(-0.05, 0.05));
  }
  FlowOptions o;
  o.record_trajectory = false;
  const FlowEngine engine(d, o);
  for (auto _ : state) {
    const auto r = engine.run(s, start);
    if (!r.ok()) state.SkipWithError("flow failed");
    benchmark::DoNotOptimize(r.final_state);
  }
}
BENCHMARK(BM_FlowScheduleIntegrated)->Args({2, 3})->Args({3, 3})->Args({3, 8})->Unit(benchmark::kMicrosecond);

static void BM_CubicPoint(benchmark::State& state) {
  const auto y = generator_pair(1).y;
  FlowOptions o;
  o.use_closed_forms = state.range(0) != 0;
  const std::vector<double> p{0.7};
  for (auto _ : state) benchmark::DoNotOptimize(flow_point(y, 0.5, p, o).point);
}
BENCHMARK(BM_CubicPoint)->ArgName("closed_form")->Arg(0)->Arg(1);
