#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rwre/estimator.hpp"
#include "rwre/trajectory.hpp"

namespace rwre {

/// One extracted replica. Truncation is a normal outcome of a finite source:
/// the walk stops cleanly when its next stream position does not exist, and
/// reports the history it was blocked on.
struct Replica {
  Trajectory traj;
  bool truncated = false;
  std::optional<MultiIndex> blocking_history;
};

/// Per-history consumption accounting of one extraction (odd and even
/// 1-based positions read), kept so that conservation is checkable exactly.
struct StreamConsumption {
  std::map<MultiIndex, std::uint32_t, HistoryOrderLess> odd;
  std::map<MultiIndex, std::uint32_t, HistoryOrderLess> even;
};

struct PairExtraction {
  Replica x1;  // reads stream positions 1, 3, 5, ...
  Replica x2;  // reads stream positions 2, 4, 6, ...
  StreamConsumption consumed;
};

/// The parity-splitting construction: each replica walks from 0, keeps its
/// own history tracker, and at occurrence tau of its local history fetches
/// stream position 2*tau-1 (X1) or 2*tau (X2). Purely mechanical: no
/// probability is ever evaluated.
PairExtraction extract_pair(const EstimatorState& state, std::size_t max_steps);

/// k independent replicas by iterated binary splitting: ingest the source
/// for (X1, X2), re-ingest the realized X2 for (X3, X4), and so on; returns
/// X1, X3, X5, ...
std::vector<Replica> extract_many(const Trajectory& source, std::size_t k, std::size_t max_steps);

}  // namespace rwre
