#include <doctest.h>

#include <cmath>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/errors.hpp"
#include "rwre/rng.hpp"
#include "rwre/statlab.hpp"
#include "rwre/walker.hpp"

using namespace rwre;

namespace {

GroupElement g(std::int32_t c) { return GroupElement({c}); }

EnvironmentLaw drift_law() {
  JumpSet jumps({g(1), g(2)});
  return EnvironmentLaw::mixture(jumps, {{1.0, SiteLaw{{0.5, 0.5}}}});
}

EnvironmentLaw two_atom_law() {
  JumpSet jumps({g(-1), g(1)});
  return EnvironmentLaw::mixture(jumps, {{0.5, SiteLaw{{0.9, 0.1}}},
                                         {0.5, SiteLaw{{0.1, 0.9}}}});
}

EnvironmentLaw dirichlet21_law() {
  JumpSet jumps({g(-1), g(1)});
  return EnvironmentLaw::dirichlet(jumps, {1.0, 2.0});
}

}  // namespace

TEST_SUITE_BEGIN("walker");

TEST_CASE("deterministic drift and the empty walk") {
  JumpSet jumps({g(1)});
  auto law = EnvironmentLaw::mixture(jumps, {{1.0, SiteLaw{{1.0}}}});
  Trajectory traj = simulate_quenched(law, 3, 5);
  REQUIRE(traj.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(traj.jump(i) == g(1));

  CHECK(simulate_quenched(law, 3, 0).empty());
}

TEST_CASE("seed determinism") {
  auto law = dirichlet21_law();
  CHECK(simulate_quenched(law, 99, 500) == simulate_quenched(law, 99, 500));
  AnalyticReinforcement v1(law), v2(law);
  CHECK(simulate_reinforced(v1, 99, 500) == simulate_reinforced(v2, 99, 500));
}

TEST_CASE("first-jump frequency of the drift law") {
  auto law = drift_law();
  int plus_one = 0;
  const int runs = 10000;
  for (int i = 0; i < runs; ++i) {
    Trajectory traj = simulate_quenched(law, derive_substream(500, "runs", i), 1);
    if (traj.jump(0) == g(1)) ++plus_one;
  }
  CHECK(std::fabs(plus_one / static_cast<double>(runs) - 0.5) <= 0.02);
}

TEST_CASE("constant reinforcement drifts") {
  JumpSet jumps({g(1)});
  ConstantReinforcement v(jumps, SiteLaw{{1.0}});
  Trajectory traj = simulate_reinforced(v, 1, 4);
  REQUIRE(traj.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(traj.jump(i) == g(1));
}

TEST_CASE("reinforced walk with analytic V: first-step law") {
  AnalyticReinforcement v(dirichlet21_law());
  int plus_one = 0;
  const int runs = 10000;
  for (int i = 0; i < runs; ++i) {
    Trajectory traj = simulate_reinforced(v, derive_substream(8300, "runs", i), 1);
    if (traj.jump(0) == g(1)) ++plus_one;
  }
  CHECK(std::fabs(plus_one / static_cast<double>(runs) - 2.0 / 3.0) <= 0.02);
}

TEST_CASE("reinforced walk reproduces the conditional second-departure law") {
  // After jumps (+1, -1) the origin's history is {+1:1}; the next jump from
  // the origin is +1 with probability 0.82 under the two-atom law.
  AnalyticReinforcement v(two_atom_law());
  int conditioning = 0, hits = 0;
  for (int i = 0; i < 30000; ++i) {
    Trajectory traj = simulate_reinforced(v, derive_substream(4810, "runs", i), 3);
    if (traj.jump(0) == g(1) && traj.jump(1) == g(-1)) {
      ++conditioning;
      if (traj.jump(2) == g(1)) ++hits;
    }
  }
  REQUIRE(conditioning > 500);
  CHECK(std::fabs(hits / static_cast<double>(conditioning) - 0.82) <= 0.03);
}

TEST_CASE("impossible-history abort carries the diagnostic") {
  JumpSet jumps({g(-1), g(1)});
  auto law = EnvironmentLaw::mixture(jumps, {{1.0, SiteLaw{{0.0, 1.0}}}});

  // A reinforcement that claims the walk may go left, over a law that says
  // it cannot: querying the history {-1:1} must abort with context.
  class Lying final : public ReinforcementFunction {
   public:
    explicit Lying(EnvironmentLaw inner) : inner_(std::move(inner)), fake_{{0.5, 0.5}} {}
    const JumpSet& jumps() const override { return inner_.jumps(); }
    const SiteLaw& probabilities(const MultiIndex& n) override {
      if (n.empty()) return fake_;
      (void)analytic_v_law(inner_, n);  // throws for histories with -1 counts
      return fake_;
    }

   private:
    EnvironmentLaw inner_;
    SiteLaw fake_;
  } v(law);

  bool aborted = false;
  for (int i = 0; i < 50 && !aborted; ++i) {
    try {
      simulate_reinforced(v, i, 10);
    } catch (const ImpossibleHistoryError& e) {
      aborted = true;
      CHECK(std::string(e.what()).find("history") != std::string::npos);
    }
  }
  CHECK(aborted);
}

TEST_CASE("quenched and reinforced four-step laws agree (smoke)") {
  // Full-strength equivalence runs in the acceptance suite; this is a
  // smaller fixed-seed check on one law.
  auto law = two_atom_law();
  AnalyticReinforcement v(law);
  const int runs = 20000, steps = 4;
  std::vector<std::vector<std::uint64_t>> table(2, std::vector<std::uint64_t>(16, 0));
  for (int i = 0; i < runs; ++i) {
    Trajectory q = simulate_quenched(law, derive_substream(61, "q", i), steps);
    Trajectory r = simulate_reinforced(v, derive_substream(61, "r", i), steps);
    std::size_t qi = 0, ri = 0;
    for (int s = 0; s < steps; ++s) {
      qi = qi * 2 + q.step_index(s);
      ri = ri * 2 + r.step_index(s);
    }
    ++table[0][qi];
    ++table[1][ri];
  }
  auto res = stats::chisq_independence(table);
  CHECK(res.pvalue >= 0.001);
}

TEST_SUITE_END();
