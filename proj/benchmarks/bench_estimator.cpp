#include <benchmark/benchmark.h>

#include "rwre/environment.hpp"
#include "rwre/estimator.hpp"
#include "rwre/resampler.hpp"
#include "rwre/walker.hpp"

using namespace rwre;

namespace {

Trajectory source(std::size_t steps) {
  JumpSet jumps({GroupElement({-1}), GroupElement({1})});
  auto law = EnvironmentLaw::dirichlet(jumps, {1.0, 2.0});
  return simulate_quenched(law, 42, steps);
}

}  // namespace

static void BM_ingest(benchmark::State& state) {
  Trajectory traj = source(state.range(0));
  for (auto _ : state) {
    EstimatorState s = EstimatorState::ingest(traj, traj.alphabet());
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ingest)->Arg(10000)->Arg(100000)->Arg(1000000);

static void BM_classify_empirical(benchmark::State& state) {
  Trajectory traj = source(state.range(0));
  for (auto _ : state) {
    auto cls = classify_r_t_empirical(traj);
    benchmark::DoNotOptimize(cls);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_classify_empirical)->Arg(100000)->Arg(1000000);

static void BM_extract_pair(benchmark::State& state) {
  Trajectory traj = source(state.range(0));
  EstimatorState s = EstimatorState::ingest(traj, traj.alphabet());
  for (auto _ : state) {
    auto pair = extract_pair(s, traj.size());
    benchmark::DoNotOptimize(pair);
  }
}
BENCHMARK(BM_extract_pair)->Arg(100000);
