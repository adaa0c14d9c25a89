#include "rwre/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "rwre/errors.hpp"
#include "rwre/history.hpp"

namespace rwre {

EstimatorState EstimatorState::ingest(const Trajectory& traj, const JumpSet& declared) {
  EstimatorState state;
  state.jumps_ = declared;

  // Remap the trajectory alphabet onto the declared jump set once.
  std::vector<std::uint8_t> remap(traj.alphabet().size());
  for (std::size_t i = 0; i < traj.alphabet().size(); ++i) {
    auto idx = declared.index_of(traj.alphabet().at(i));
    if (!idx) {
      throw ValidationError("jump " + traj.alphabet().at(i).to_string() +
                            " not in the declared jump set");
    }
    remap[i] = *idx;
  }

  HistoryTracker tracker(declared.dim());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    state.streams_[tracker.local_unordered()].push_back(remap[traj.step_index(i)]);
    tracker.record_step(traj.jump(i));
  }
  state.source_length_ = traj.size();
  return state;
}

void EstimatorState::merge(const EstimatorState& other) {
  if (jumps_.empty()) {
    jumps_ = other.jumps_;
  } else if (!(jumps_ == other.jumps_)) {
    throw ValidationError("merge of estimator states over different jump sets");
  }
  for (const auto& [n, stream] : other.streams_) {
    auto& dst = streams_[n];
    dst.insert(dst.end(), stream.begin(), stream.end());
  }
  source_length_ += other.source_length_;
}

std::span<const std::uint8_t> EstimatorState::stream(const MultiIndex& n) const {
  auto it = streams_.find(n);
  if (it == streams_.end()) return {};
  return it->second;
}

VEstimate EstimatorState::empirical_v(const MultiIndex& n) const {
  auto it = streams_.find(n);
  if (it == streams_.end() || it->second.empty()) {
    throw NoObservationsError("no observations for history " + n.to_string());
  }
  const auto& stream = it->second;
  VEstimate est;
  est.history = n;
  est.count = stream.size();
  est.probs.assign(jumps_.size(), 0.0);
  for (std::uint8_t idx : stream) est.probs[idx] += 1.0;
  est.se.resize(jumps_.size());
  const double m = static_cast<double>(est.count);
  for (std::size_t i = 0; i < est.probs.size(); ++i) {
    est.probs[i] /= m;
    est.se[i] = std::sqrt(est.probs[i] * (1.0 - est.probs[i]) / m);
  }
  return est;
}

std::vector<MultiIndex> EstimatorState::observed_histories(std::uint64_t min_count) const {
  if (min_count < 1) throw ValidationError("observed_histories: min_count must be >= 1");
  std::vector<MultiIndex> out;
  for (const auto& [n, stream] : streams_) {
    if (stream.size() >= min_count) out.push_back(n);
  }
  std::sort(out.begin(), out.end(), history_order_less);
  return out;
}

EmpiricalClassification classify_r_t_empirical(const Trajectory& traj) {
  // A jump g taken at time n from site x is certified recurrent iff x is
  // visited again later. One pass records the last visit time per site, a
  // second pass compares.
  std::unordered_map<GroupElement, std::uint64_t, GroupElementHash> last_visit;
  GroupElement pos = GroupElement::zero(traj.dim());
  last_visit[pos] = 0;
  {
    GroupElement p = pos;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      p = p + traj.jump(i);
      last_visit[p] = i + 1;
    }
  }

  EmpiricalClassification out;
  std::map<GroupElement, std::uint64_t> observed;
  GroupElement p = GroupElement::zero(traj.dim());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const GroupElement& g = traj.jump(i);
    ++observed[g];
    if (last_visit[p] > i) ++out.evidence[g];
    p = p + g;
  }

  std::vector<GroupElement> r, t;
  for (const auto& [g, n] : observed) {
    if (out.evidence.count(g)) {
      r.push_back(g);
    } else {
      t.push_back(g);
    }
  }
  out.r = JumpSet(std::move(r));
  out.t = JumpSet(std::move(t));
  return out;
}

SiteEstimate estimate_site_environment(const Trajectory& traj, const GroupElement& site) {
  SiteEstimate est;
  est.freq.assign(traj.alphabet().size(), 0.0);
  GroupElement p = GroupElement::zero(traj.dim());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (p == site) {
      est.freq[traj.step_index(i)] += 1.0;
      ++est.count;
    }
    p = p + traj.jump(i);
  }
  if (est.count == 0) {
    throw NoObservationsError("site " + site.to_string() + " was never departed from");
  }
  for (double& f : est.freq) f /= static_cast<double>(est.count);
  return est;
}

RecurrenceReport recurrence_diagnostic(const Trajectory& traj) {
  RecurrenceReport rep;
  std::unordered_map<GroupElement, std::uint64_t, GroupElementHash> visits;
  GroupElement p = GroupElement::zero(traj.dim());
  visits[p] = 1;
  std::uint64_t revisits = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    p = p + traj.jump(i);
    auto [it, fresh] = visits.try_emplace(p, 0);
    if (!fresh) ++revisits;
    ++it->second;
  }
  rep.distinct_sites = visits.size();
  for (const auto& [site, v] : visits) rep.max_visits = std::max(rep.max_visits, v);
  rep.revisit_fraction = traj.empty() ? 0.0 : static_cast<double>(revisits) / traj.size();
  return rep;
}

std::map<std::string, std::uint64_t> succession_counts(const Trajectory& traj) {
  std::unordered_map<GroupElement, std::uint8_t, GroupElementHash> last_departure;
  std::map<std::string, std::uint64_t> counts;
  GroupElement p = GroupElement::zero(traj.dim());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    auto it = last_departure.find(p);
    if (it != last_departure.end()) {
      ++counts[traj.alphabet().at(it->second).to_string() + "->" + traj.jump(i).to_string()];
    }
    last_departure[p] = traj.step_index(i);
    p = p + traj.jump(i);
  }
  return counts;
}

}  // namespace rwre
