#include "rwre/history.hpp"

#include <algorithm>

#include "rwre/errors.hpp"

namespace rwre {

HistoryTracker::HistoryTracker(int dim, bool track_ordered)
    : track_ordered_(track_ordered), current_(GroupElement::zero(dim)) {}

void HistoryTracker::record_step(const GroupElement& jump) {
  SiteRecord& rec = sites_[current_];
  rec.unordered.increment(jump);
  if (track_ordered_) rec.ordered.push_back(jump);
  current_ = current_ + jump;
  ++steps_;
}

const MultiIndex& HistoryTracker::local_unordered() const { return unordered_at(current_); }

const MultiIndex& HistoryTracker::unordered_at(const GroupElement& site) const {
  auto it = sites_.find(site);
  return it == sites_.end() ? empty_ : it->second.unordered;
}

std::span<const GroupElement> HistoryTracker::ordered_at(const GroupElement& site) const {
  if (!track_ordered_) {
    throw ValidationError("ordered histories were not tracked for this run");
  }
  auto it = sites_.find(site);
  if (it == sites_.end()) return {};
  return it->second.ordered;
}

std::vector<GroupElement> HistoryTracker::departed_sites() const {
  std::vector<GroupElement> out;
  out.reserve(sites_.size());
  for (const auto& [site, rec] : sites_) out.push_back(site);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rwre
