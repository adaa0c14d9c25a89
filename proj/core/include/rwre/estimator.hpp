#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "rwre/lattice.hpp"
#include "rwre/multi_index.hpp"
#include "rwre/trajectory.hpp"

namespace rwre {

/// V-hat at one history: next-jump frequencies with the stream length behind
/// them, aligned to the canonical jump set.
struct VEstimate {
  MultiIndex history;
  std::vector<double> probs;
  std::vector<double> se;  // binomial standard errors sqrt(p(1-p)/count)
  std::uint64_t count = 0;
};

/// Ordered streams Delta_i^{n-vec}: the successive next-jumps taken from
/// sites whose unordered history was n-vec at the moment of decision.
/// Grouping by history is what removes the visit bias: each stream is iid
/// with law V(n-vec).
class EstimatorState {
 public:
  EstimatorState() = default;

  /// Replays the trajectory; every step lands in exactly one stream, keyed by
  /// the departure site's history before the move. Throws ValidationError if
  /// a jump falls outside the declared jump set.
  static EstimatorState ingest(const Trajectory& traj, const JumpSet& declared);

  /// Stream-wise concatenation of states from independent trajectories of
  /// the same law (streams stay iid). States must share the jump set.
  void merge(const EstimatorState& other);

  const JumpSet& jumps() const { return jumps_; }
  std::uint64_t source_length() const { return source_length_; }
  std::size_t stream_count() const { return streams_.size(); }

  /// Jump indices of the stream at `n`, in time order; empty if unseen.
  std::span<const std::uint8_t> stream(const MultiIndex& n) const;

  /// Throws NoObservationsError for unseen histories.
  VEstimate empirical_v(const MultiIndex& n) const;

  /// Histories with stream length >= min_count, in history order: the
  /// empirically certified part of N_poss.
  std::vector<MultiIndex> observed_histories(std::uint64_t min_count) const;

 private:
  JumpSet jumps_;
  std::unordered_map<MultiIndex, std::vector<std::uint8_t>, MultiIndexHash> streams_;
  std::uint64_t source_length_ = 0;
};

/// Empirical R/T split: a jump is certified recurrent by an observed return
/// to its departure site; soundness is one-sided (R-hat is always a subset
/// of the true R).
struct EmpiricalClassification {
  JumpSet r;
  JumpSet t;
  std::map<GroupElement, std::uint64_t> evidence;  // certified returns per jump
};

EmpiricalClassification classify_r_t_empirical(const Trajectory& traj);

/// Departure frequencies of one site. A consistent estimate of nu(x) only in
/// the recurrent regime; the transient-case bias is the reason the estimator
/// above exists.
struct SiteEstimate {
  std::vector<double> freq;  // aligned to the trajectory alphabet
  std::uint64_t count = 0;
};

SiteEstimate estimate_site_environment(const Trajectory& traj, const GroupElement& site);

/// Descriptive statistics backing a recurrent-vs-transient judgment; no hard
/// classification is attempted.
struct RecurrenceReport {
  double revisit_fraction = 0.0;  // arrivals at already-visited sites / steps
  std::uint64_t max_visits = 0;
  std::uint64_t distinct_sites = 0;
};

RecurrenceReport recurrence_diagnostic(const Trajectory& traj);

/// Same-site consecutive departure pairs (g then h), keyed "g->h"; needs the
/// full trajectory replay with ordered histories.
std::map<std::string, std::uint64_t> succession_counts(const Trajectory& traj);

}  // namespace rwre
