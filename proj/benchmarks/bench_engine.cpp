#include <benchmark/benchmark.h>

#include "netlanch/integrator.hpp"
#include "netlanch/meanfield.hpp"
#include "netlanch/model.hpp"
#include "netlanch/optimizer.hpp"

using namespace netlanch;

namespace {

ScenarioSpec random_battle(std::size_t n) {
  Rng rng(derive_seed(1, n));
  ScenarioSpec s{seed_topology(n, 2 * n, n / 5, rng), BattleConfig{}, uniform_state(n, n, 1.0)};
  s.config.kappa_R = 0.5;
  return s;
}

void BM_Rhs(benchmark::State& state) {
  const auto spec = random_battle(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rhs(spec.initial, spec.topology, spec.config));
}
BENCHMARK(BM_Rhs)->Arg(20)->Arg(50)->Arg(200);

void BM_Settle(benchmark::State& state) {
  const auto spec = random_battle(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(settle(spec));
}
BENCHMARK(BM_Settle)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_ProposeMove(benchmark::State& state) {
  const auto spec = random_battle(50);
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(propose_move(spec.topology, MoveSet{}, rng));
}
BENCHMARK(BM_ProposeMove);

void BM_OptimizeIterations(benchmark::State& state) {
  const auto spec = random_battle(20);
  for (auto _ : state)
    benchmark::DoNotOptimize(optimize(spec, {0.5, 1.0}, MoveSet{}, static_cast<std::size_t>(state.range(0)), 7));
}
BENCHMARK(BM_OptimizeIterations)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_MeanField(benchmark::State& state) {
  const meanfield::MeanFieldSpec spec{50, 25, 25, 1, 50, 0.1, 1.0, 1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(meanfield::integrate(spec, 0.01, 20.0));
}
BENCHMARK(BM_MeanField)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
