#include "rwre/multi_index.hpp"

#include <algorithm>

#include "rwre/errors.hpp"

namespace rwre {

MultiIndex::MultiIndex(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& e : entries) {
    if (e.second == 0) continue;
    if (!entries_.empty() && entries_.back().first == e.first) {
      entries_.back().second += e.second;
    } else {
      entries_.push_back(std::move(e));
    }
  }
}

std::uint64_t MultiIndex::total() const {
  std::uint64_t t = 0;
  for (const auto& [g, c] : entries_) t += c;
  return t;
}

std::uint32_t MultiIndex::count(const GroupElement& g) const {
  for (const auto& [jump, c] : entries_) {
    if (jump == g) return c;
    if (g < jump) break;
  }
  return 0;
}

void MultiIndex::increment(const GroupElement& g) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), g,
                             [](const Entry& e, const GroupElement& v) { return e.first < v; });
  if (it != entries_.end() && it->first == g) {
    ++it->second;
  } else {
    entries_.insert(it, {g, 1});
  }
}

void MultiIndex::decrement(const GroupElement& g) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), g,
                             [](const Entry& e, const GroupElement& v) { return e.first < v; });
  if (it == entries_.end() || !(it->first == g)) {
    throw ValidationError("decrement of zero count at " + g.to_string());
  }
  if (--it->second == 0) entries_.erase(it);
}

MultiIndex MultiIndex::incremented(const GroupElement& g) const {
  MultiIndex out = *this;
  out.increment(g);
  return out;
}

MultiIndex MultiIndex::decremented(const GroupElement& g) const {
  MultiIndex out = *this;
  out.decrement(g);
  return out;
}

std::string MultiIndex::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0) s += ',';
    s += entries_[i].first.to_string();
    s += ':';
    s += std::to_string(entries_[i].second);
  }
  s += '}';
  return s;
}

std::size_t MultiIndexHash::operator()(const MultiIndex& n) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  GroupElementHash gh;
  for (const auto& [g, c] : n.entries()) {
    h ^= gh(g) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

bool history_order_less(const MultiIndex& a, const MultiIndex& b) {
  const auto ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb;
  return a.entries() < b.entries();
}

namespace {

void enumerate_rec(const std::vector<GroupElement>& jumps, std::size_t pos, int remaining,
                   std::vector<MultiIndex::Entry>& acc, std::vector<MultiIndex>& out) {
  if (pos == jumps.size()) {
    out.emplace_back(acc);
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    if (c > 0) acc.push_back({jumps[pos], static_cast<std::uint32_t>(c)});
    enumerate_rec(jumps, pos + 1, remaining - c, acc, out);
    if (c > 0) acc.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(const std::vector<GroupElement>& jumps,
                                                int max_total) {
  std::vector<MultiIndex> out;
  std::vector<MultiIndex::Entry> acc;
  enumerate_rec(jumps, 0, max_total, acc, out);
  std::sort(out.begin(), out.end(), history_order_less);
  return out;
}

}  // namespace rwre
