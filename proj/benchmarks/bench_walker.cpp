#include <benchmark/benchmark.h>

#include "rwre/environment.hpp"
#include "rwre/walker.hpp"

using namespace rwre;

namespace {

EnvironmentLaw dirichlet21() {
  JumpSet jumps({GroupElement({-1}), GroupElement({1})});
  return EnvironmentLaw::dirichlet(jumps, {1.0, 2.0});
}

EnvironmentLaw two_atom() {
  JumpSet jumps({GroupElement({-1}), GroupElement({1})});
  return EnvironmentLaw::mixture(jumps, {{0.5, SiteLaw{{0.9, 0.1}}},
                                         {0.5, SiteLaw{{0.1, 0.9}}}});
}

}  // namespace

static void BM_quenched_dirichlet(benchmark::State& state) {
  EnvironmentLaw law = dirichlet21();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    Trajectory traj = simulate_quenched(law, seed++, state.range(0));
    benchmark::DoNotOptimize(traj);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_quenched_dirichlet)->Arg(10000)->Arg(100000);

static void BM_quenched_mixture(benchmark::State& state) {
  EnvironmentLaw law = two_atom();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    Trajectory traj = simulate_quenched(law, seed++, state.range(0));
    benchmark::DoNotOptimize(traj);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_quenched_mixture)->Arg(10000)->Arg(100000);

static void BM_reinforced_dirichlet(benchmark::State& state) {
  EnvironmentLaw law = dirichlet21();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    AnalyticReinforcement v(law);
    Trajectory traj = simulate_reinforced(v, seed++, state.range(0));
    benchmark::DoNotOptimize(traj);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_reinforced_dirichlet)->Arg(10000);
