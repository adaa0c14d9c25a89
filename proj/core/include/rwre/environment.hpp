#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rwre/lattice.hpp"
#include "rwre/multi_index.hpp"

namespace rwre {

/// Transition probabilities of one site, aligned to the canonical order of
/// the run's JumpSet.
struct SiteLaw {
  std::vector<double> probs;

  double prob_of(const JumpSet& jumps, const GroupElement& g) const;
  /// Throws ValidationError unless entries are >= 0 and sum to 1 within 1e-12.
  void validate() const;
};

/// The distribution mu of the environment at a site: a finite mixture of
/// fixed site laws, or a Dirichlet law over the jump set. Both admit exact
/// mixed moments, which is what makes every downstream estimate testable.
class EnvironmentLaw {
 public:
  enum class Kind { mixture, dirichlet };

  struct Atom {
    double weight;
    SiteLaw law;
  };

  static EnvironmentLaw mixture(JumpSet jumps, std::vector<Atom> atoms);
  static EnvironmentLaw dirichlet(JumpSet jumps, std::vector<double> alphas);

  Kind kind() const { return kind_; }
  const JumpSet& jumps() const { return jumps_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<double>& alphas() const { return alphas_; }

 private:
  EnvironmentLaw() = default;

  Kind kind_ = Kind::mixture;
  JumpSet jumps_;
  std::vector<Atom> atoms_;
  std::vector<double> alphas_;
};

/// A lazily realized environment: the site law at a site is a deterministic
/// function of (master_seed, site), so unvisited sites cost nothing and
/// re-queries always agree.
class Environment {
 public:
  Environment(EnvironmentLaw law, std::uint64_t master_seed);

  const EnvironmentLaw& law() const { return law_; }
  std::uint64_t master_seed() const { return master_seed_; }

  const SiteLaw& site_law(const GroupElement& site);

 private:
  EnvironmentLaw law_;
  std::uint64_t master_seed_;
  std::unordered_map<GroupElement, SiteLaw, GroupElementHash> realized_;
};

/// E[prod_g nu_g^{n_g}] in closed form. Jumps outside the law's support give 0.
double mixed_moment(const EnvironmentLaw& law, const MultiIndex& n);

/// log of the above; -inf encodes a zero moment. Stable for deep histories
/// where the plain value underflows.
double log_mixed_moment(const EnvironmentLaw& law, const MultiIndex& n);

/// V_e(n) = E[nu_e prod nu^n] / E[prod nu^n]. Throws ImpossibleHistoryError
/// when the denominator vanishes (n outside N_poss).
double analytic_v(const EnvironmentLaw& law, const MultiIndex& n, const GroupElement& e);

/// V(n) over the whole jump set (one denominator evaluation).
SiteLaw analytic_v_law(const EnvironmentLaw& law, const MultiIndex& n);

/// R/T partition of the jump set by bounded breadth-first search over
/// partial sums of jumps. `saturated` certifies that the search closed
/// (no new sums appeared), in which case the partition is exact.
struct RtPartition {
  JumpSet r;
  JumpSet t;
  bool saturated = false;
};

RtPartition classify_r_t_analytic(const JumpSet& jumps, int bound);

}  // namespace rwre
