#include "rwre/resampler.hpp"

#include <unordered_map>

#include "rwre/errors.hpp"
#include "rwre/history.hpp"

namespace rwre {

namespace {

Replica extract_one(const EstimatorState& state, std::size_t max_steps, bool odd,
                    std::map<MultiIndex, std::uint32_t, HistoryOrderLess>* consumed) {
  Replica rep;
  rep.traj = Trajectory(state.jumps());
  HistoryTracker tracker(state.jumps().dim());
  std::unordered_map<MultiIndex, std::uint32_t, MultiIndexHash> occurrences;

  for (std::size_t n = 0; n < max_steps; ++n) {
    const MultiIndex& local = tracker.local_unordered();
    std::uint32_t tau = ++occurrences[local];
    std::uint64_t position = odd ? 2ull * tau - 1 : 2ull * tau;  // 1-based
    auto stream = state.stream(local);
    if (position > stream.size()) {
      rep.truncated = true;
      rep.blocking_history = local;
      break;
    }
    if (consumed) (*consumed)[local] = tau;
    std::uint8_t idx = stream[position - 1];
    rep.traj.append(idx);
    tracker.record_step(state.jumps().at(idx));
  }
  return rep;
}

}  // namespace

PairExtraction extract_pair(const EstimatorState& state, std::size_t max_steps) {
  PairExtraction out;
  out.x1 = extract_one(state, max_steps, /*odd=*/true, &out.consumed.odd);
  out.x2 = extract_one(state, max_steps, /*odd=*/false, &out.consumed.even);
  return out;
}

std::vector<Replica> extract_many(const Trajectory& source, std::size_t k,
                                  std::size_t max_steps) {
  if (k < 1) throw ValidationError("extract_many: k must be >= 1");
  std::vector<Replica> out;
  out.reserve(k);
  Trajectory current = source;
  for (std::size_t i = 0; i < k; ++i) {
    EstimatorState state = EstimatorState::ingest(current, source.alphabet());
    PairExtraction pair = extract_pair(state, max_steps);
    out.push_back(std::move(pair.x1));
    current = std::move(pair.x2.traj);
  }
  return out;
}

}  // namespace rwre
