#include "rwre/walker.hpp"

#include "rwre/errors.hpp"
#include "rwre/history.hpp"
#include "rwre/rng.hpp"

namespace rwre {

const SiteLaw& AnalyticReinforcement::probabilities(const MultiIndex& history) {
  auto it = cache_.find(history);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(history, analytic_v_law(law_, history)).first->second;
}

Trajectory simulate_quenched(Environment& env, std::uint64_t walk_seed, std::size_t steps) {
  Rng rng(walk_seed);
  Trajectory traj(env.law().jumps());
  traj.reserve(steps);
  GroupElement pos = GroupElement::zero(traj.dim());
  for (std::size_t i = 0; i < steps; ++i) {
    const SiteLaw& law = env.site_law(pos);
    std::uint8_t idx = static_cast<std::uint8_t>(rng.categorical(law.probs));
    traj.append(idx);
    pos = pos + traj.alphabet().at(idx);
  }
  return traj;
}

Trajectory simulate_quenched(const EnvironmentLaw& law, std::uint64_t seed, std::size_t steps) {
  Environment env(law, derive_substream(seed, "environment"));
  return simulate_quenched(env, derive_substream(seed, "walk"), steps);
}

Trajectory simulate_reinforced(ReinforcementFunction& v, std::uint64_t seed, std::size_t steps) {
  Rng rng(derive_substream(seed, "walk"));
  Trajectory traj(v.jumps());
  traj.reserve(steps);
  HistoryTracker tracker(v.jumps().dim());
  for (std::size_t i = 0; i < steps; ++i) {
    const MultiIndex& local = tracker.local_unordered();
    const SiteLaw* law = nullptr;
    try {
      law = &v.probabilities(local);
    } catch (const ImpossibleHistoryError& e) {
      throw ImpossibleHistoryError("reinforced walk aborted at step " + std::to_string(i) +
                                   ", site " + tracker.current_site().to_string() +
                                   ", history " + local.to_string() + ": " + e.what());
    }
    std::uint8_t idx = static_cast<std::uint8_t>(rng.categorical(law->probs));
    traj.append(idx);
    tracker.record_step(traj.alphabet().at(idx));
  }
  return traj;
}

}  // namespace rwre
