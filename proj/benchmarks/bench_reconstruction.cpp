#include <benchmark/benchmark.h>

#include "rwre/environment.hpp"
#include "rwre/reconstruction.hpp"

using namespace rwre;

namespace {

EnvironmentLaw dirichlet21() {
  JumpSet jumps({GroupElement({-1}), GroupElement({1})});
  return EnvironmentLaw::dirichlet(jumps, {1.0, 2.0});
}

}  // namespace

static void BM_build_moment_table(benchmark::State& state) {
  EnvironmentLaw law = dirichlet21();
  auto histories = enumerate_multi_indices(law.jumps().elements(), state.range(0));
  for (auto _ : state) {
    auto build = build_moment_table(analytic_v_oracle(law), law.jumps(), histories, JumpSet{});
    benchmark::DoNotOptimize(build);
  }
}
BENCHMARK(BM_build_moment_table)->Arg(16)->Arg(60)->Arg(200);

static void BM_cdf_bernstein(benchmark::State& state) {
  EnvironmentLaw law = dirichlet21();
  int degree = state.range(0);
  auto build = build_moment_table(analytic_v_oracle(law), law.jumps(),
                                  enumerate_multi_indices(law.jumps().elements(), degree),
                                  JumpSet{});
  GroupElement plus({1});
  for (auto _ : state) {
    for (int i = 1; i <= 9; ++i) {
      benchmark::DoNotOptimize(cdf_bernstein(build.table, {plus}, {i / 10.0}, degree));
    }
  }
}
BENCHMARK(BM_cdf_bernstein)->Arg(50)->Arg(100)->Arg(200);

BENCHMARK_MAIN();
