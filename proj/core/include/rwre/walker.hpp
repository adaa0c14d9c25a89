#pragma once

#include <cstdint>
#include <unordered_map>

#include "rwre/environment.hpp"
#include "rwre/multi_index.hpp"
#include "rwre/trajectory.hpp"

namespace rwre {

/// Next-jump law as a function of the local unordered history. Returned laws
/// are aligned to the canonical jump set and must sum to 1.
class ReinforcementFunction {
 public:
  virtual ~ReinforcementFunction() = default;
  virtual const JumpSet& jumps() const = 0;
  /// Throws ImpossibleHistoryError for histories outside N_poss.
  virtual const SiteLaw& probabilities(const MultiIndex& history) = 0;
};

/// The reinforcement function of the annealed RWRE: a ratio of mixed moments
/// of the environment law. Evaluations are memoized per history.
class AnalyticReinforcement final : public ReinforcementFunction {
 public:
  explicit AnalyticReinforcement(EnvironmentLaw law) : law_(std::move(law)) {}

  const JumpSet& jumps() const override { return law_.jumps(); }
  const SiteLaw& probabilities(const MultiIndex& history) override;

 private:
  EnvironmentLaw law_;
  std::unordered_map<MultiIndex, SiteLaw, MultiIndexHash> cache_;
};

/// History-independent law; handy in tests.
class ConstantReinforcement final : public ReinforcementFunction {
 public:
  ConstantReinforcement(JumpSet jumps, SiteLaw law)
      : jumps_(std::move(jumps)), law_(std::move(law)) {}

  const JumpSet& jumps() const override { return jumps_; }
  const SiteLaw& probabilities(const MultiIndex&) override { return law_; }

 private:
  JumpSet jumps_;
  SiteLaw law_;
};

/// One realization of the quenched walk Q_nu inside the given environment;
/// deterministic in walk_seed.
Trajectory simulate_quenched(Environment& env, std::uint64_t walk_seed, std::size_t steps);

/// The annealed law P^mu: draws the environment from (law, seed) and walks.
/// Environment and walk randomness come from named sub-streams of the seed.
Trajectory simulate_quenched(const EnvironmentLaw& law, std::uint64_t seed, std::size_t steps);

/// The edge-oriented reinforced walk P^V; deterministic in seed. An
/// ImpossibleHistoryError from V aborts with the offending history attached.
Trajectory simulate_reinforced(ReinforcementFunction& v, std::uint64_t seed, std::size_t steps);

}  // namespace rwre
