#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "rwre/lattice.hpp"
#include "rwre/multi_index.hpp"

namespace rwre {

/// Per-site ordered and unordered departure histories of one walk, with
/// O(1)-amortized access to the local unordered history of the current site.
///
/// Ordered lists are retained only on request: the estimator needs unordered
/// histories only, and long runs care about memory.
class HistoryTracker {
 public:
  explicit HistoryTracker(int dim, bool track_ordered = false);

  /// Appends the jump to the current site's history and moves there.
  void record_step(const GroupElement& jump);

  /// N-vec(n, X_n): empty for sites never departed from.
  const MultiIndex& local_unordered() const;
  const MultiIndex& unordered_at(const GroupElement& site) const;

  /// Departure sequence of a site; throws ValidationError unless ordered
  /// tracking was requested at construction.
  std::span<const GroupElement> ordered_at(const GroupElement& site) const;

  const GroupElement& current_site() const { return current_; }
  std::uint64_t step_count() const { return steps_; }

  /// Sites with at least one departure, in canonical order (copy).
  std::vector<GroupElement> departed_sites() const;

 private:
  struct SiteRecord {
    MultiIndex unordered;
    std::vector<GroupElement> ordered;
  };

  bool track_ordered_;
  GroupElement current_;
  std::uint64_t steps_ = 0;
  std::unordered_map<GroupElement, SiteRecord, GroupElementHash> sites_;
  MultiIndex empty_;
};

}  // namespace rwre
