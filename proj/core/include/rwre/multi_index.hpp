#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rwre/lattice.hpp"

namespace rwre {

/// Sparse multiset of jumps: the unordered history n-vec of a site, and the
/// multi-index of a mixed moment. Canonical form: entries sorted by jump,
/// zero counts never stored.
class MultiIndex {
 public:
  using Entry = std::pair<GroupElement, std::uint32_t>;

  MultiIndex() = default;
  /// Builds canonical form from arbitrary (jump, count) pairs; counts of
  /// equal jumps accumulate, zero counts drop out.
  explicit MultiIndex(std::vector<Entry> entries);

  bool empty() const { return entries_.empty(); }
  std::uint64_t total() const;
  std::size_t support_size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  std::uint32_t count(const GroupElement& g) const;

  /// In-place increment/decrement keep canonical form. decrement throws
  /// ValidationError if the count is already zero.
  void increment(const GroupElement& g);
  void decrement(const GroupElement& g);

  MultiIndex incremented(const GroupElement& g) const;
  MultiIndex decremented(const GroupElement& g) const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;

  /// Text form "{}" or "{[-1]:1,[1]:2}" (jumps in canonical order).
  std::string to_string() const;

 private:
  std::vector<Entry> entries_;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& n) const noexcept;
};

/// Report order for histories: by total count, then lexicographically on the
/// canonical entry list.
bool history_order_less(const MultiIndex& a, const MultiIndex& b);

struct HistoryOrderLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return history_order_less(a, b);
  }
};

/// All multi-indices over the given jumps with total <= max_total, in
/// history order (used as moment-table build paths and report layouts).
std::vector<MultiIndex> enumerate_multi_indices(const std::vector<GroupElement>& jumps,
                                                int max_total);

}  // namespace rwre
