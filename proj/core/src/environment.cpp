#include "rwre/environment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "rwre/errors.hpp"
#include "rwre/rng.hpp"

namespace rwre {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double SiteLaw::prob_of(const JumpSet& jumps, const GroupElement& g) const {
  auto idx = jumps.index_of(g);
  return idx ? probs[*idx] : 0.0;
}

void SiteLaw::validate() const {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ValidationError("site law has a negative probability");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw ValidationError("site law probabilities sum to " + std::to_string(sum));
  }
}

EnvironmentLaw EnvironmentLaw::mixture(JumpSet jumps, std::vector<Atom> atoms) {
  if (atoms.empty()) throw ValidationError("mixture law needs at least one atom");
  double wsum = 0.0;
  for (const Atom& a : atoms) {
    if (!(a.weight >= 0.0)) throw ValidationError("mixture weight must be >= 0");
    wsum += a.weight;
    if (a.law.probs.size() != jumps.size()) {
      throw ValidationError("mixture atom not aligned to the jump set");
    }
    a.law.validate();
  }
  if (std::fabs(wsum - 1.0) > 1e-12) {
    throw ValidationError("mixture weights sum to " + std::to_string(wsum));
  }
  EnvironmentLaw law;
  law.kind_ = Kind::mixture;
  law.jumps_ = std::move(jumps);
  law.atoms_ = std::move(atoms);
  return law;
}

EnvironmentLaw EnvironmentLaw::dirichlet(JumpSet jumps, std::vector<double> alphas) {
  if (alphas.size() != jumps.size()) {
    throw ValidationError("dirichlet alphas not aligned to the jump set");
  }
  for (double a : alphas) {
    if (!(a > 0.0)) throw ValidationError("dirichlet alphas must be strictly positive");
  }
  EnvironmentLaw law;
  law.kind_ = Kind::dirichlet;
  law.jumps_ = std::move(jumps);
  law.alphas_ = std::move(alphas);
  return law;
}

Environment::Environment(EnvironmentLaw law, std::uint64_t master_seed)
    : law_(std::move(law)), master_seed_(master_seed) {}

const SiteLaw& Environment::site_law(const GroupElement& site) {
  auto it = realized_.find(site);
  if (it != realized_.end()) return it->second;

  // Counter-based derivation: the per-site seed depends only on
  // (master_seed, site coordinates), never on query order.
  std::uint64_t s = master_seed_;
  for (std::int32_t c : site.coords()) {
    s ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c)) + 0x9e3779b97f4a7c15ull;
    splitmix64(s);
  }
  Rng rng(splitmix64(s));

  SiteLaw out;
  if (law_.kind() == EnvironmentLaw::Kind::mixture) {
    std::vector<double> weights;
    weights.reserve(law_.atoms().size());
    for (const auto& a : law_.atoms()) weights.push_back(a.weight);
    out = law_.atoms()[rng.categorical(weights)].law;
  } else {
    out.probs.resize(law_.alphas().size());
    double sum = 0.0;
    for (std::size_t i = 0; i < out.probs.size(); ++i) {
      out.probs[i] = rng.gamma(law_.alphas()[i]);
      sum += out.probs[i];
    }
    for (double& p : out.probs) p /= sum;
  }
  return realized_.emplace(site, std::move(out)).first->second;
}

double log_mixed_moment(const EnvironmentLaw& law, const MultiIndex& n) {
  // Map the multi-index onto jump-set slots; a jump outside the set means a
  // zero factor, hence a zero moment.
  std::vector<std::pair<std::uint8_t, std::uint32_t>> slots;
  slots.reserve(n.entries().size());
  for (const auto& [g, c] : n.entries()) {
    auto idx = law.jumps().index_of(g);
    if (!idx) return kNegInf;
    slots.push_back({*idx, c});
  }

  if (law.kind() == EnvironmentLaw::Kind::mixture) {
    // logsumexp over atoms of log w_k + sum n_g log p_{k,g}.
    std::vector<double> terms;
    terms.reserve(law.atoms().size());
    for (const auto& atom : law.atoms()) {
      if (atom.weight == 0.0) continue;
      double t = std::log(atom.weight);
      for (const auto& [idx, c] : slots) {
        double p = atom.law.probs[idx];
        if (p == 0.0) {
          t = kNegInf;
          break;
        }
        t += c * std::log(p);
      }
      if (t != kNegInf) terms.push_back(t);
    }
    if (terms.empty()) return kNegInf;
    double m = *std::max_element(terms.begin(), terms.end());
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - m);
    return m + std::log(acc);
  }

  // Dirichlet: prod_g rising(alpha_g, n_g) / rising(sum alpha, sum n).
  double lognum = 0.0;
  std::uint64_t total = 0;
  for (const auto& [idx, c] : slots) {
    double a = law.alphas()[idx];
    for (std::uint32_t i = 0; i < c; ++i) lognum += std::log(a + i);
    total += c;
  }
  double asum = 0.0;
  for (double a : law.alphas()) asum += a;
  double logden = 0.0;
  for (std::uint64_t i = 0; i < total; ++i) logden += std::log(asum + static_cast<double>(i));
  return lognum - logden;
}

double mixed_moment(const EnvironmentLaw& law, const MultiIndex& n) {
  double lm = log_mixed_moment(law, n);
  return lm == kNegInf ? 0.0 : std::exp(lm);
}

double analytic_v(const EnvironmentLaw& law, const MultiIndex& n, const GroupElement& e) {
  double lden = log_mixed_moment(law, n);
  if (lden == kNegInf) {
    throw ImpossibleHistoryError("history outside N_poss: " + n.to_string());
  }
  double lnum = log_mixed_moment(law, n.incremented(e));
  return lnum == kNegInf ? 0.0 : std::exp(lnum - lden);
}

SiteLaw analytic_v_law(const EnvironmentLaw& law, const MultiIndex& n) {
  double lden = log_mixed_moment(law, n);
  if (lden == kNegInf) {
    throw ImpossibleHistoryError("history outside N_poss: " + n.to_string());
  }
  SiteLaw out;
  out.probs.resize(law.jumps().size());
  for (std::size_t i = 0; i < out.probs.size(); ++i) {
    double lnum = log_mixed_moment(law, n.incremented(law.jumps().at(i)));
    out.probs[i] = lnum == kNegInf ? 0.0 : std::exp(lnum - lden);
  }
  return out;
}

RtPartition classify_r_t_analytic(const JumpSet& jumps, int bound) {
  if (bound < 1) throw ValidationError("classify_r_t_analytic: bound must be >= 1");

  // Any sum of <= bound jumps stays inside the per-coordinate box
  // bound * max|coord|, so the box never prunes a reachable sum and an
  // empty frontier certifies the full semigroup closure.
  std::int64_t maxc = 1;
  for (const auto& g : jumps) {
    for (std::int32_t c : g.coords()) maxc = std::max<std::int64_t>(maxc, std::abs(c));
  }
  const std::int64_t box = static_cast<std::int64_t>(bound) * maxc;

  std::unordered_set<GroupElement, GroupElementHash> seen;
  std::vector<GroupElement> frontier;
  auto in_box = [&](const GroupElement& g) {
    for (std::int32_t c : g.coords()) {
      if (std::abs(static_cast<std::int64_t>(c)) > box) return false;
    }
    return true;
  };

  for (const auto& g : jumps) {
    if (seen.insert(g).second) frontier.push_back(g);
  }
  bool saturated = false;
  for (int level = 2; level <= bound; ++level) {
    std::vector<GroupElement> next;
    for (const auto& s : frontier) {
      for (const auto& g : jumps) {
        GroupElement v = s + g;
        if (!in_box(v)) continue;
        if (seen.insert(v).second) next.push_back(v);
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) {
      saturated = true;
      break;
    }
  }
  // One extra closure probe when the level budget ran out exactly.
  if (!saturated && !frontier.empty()) {
    saturated = true;
    for (const auto& s : frontier) {
      for (const auto& g : jumps) {
        GroupElement v = s + g;
        if (in_box(v) && !seen.count(v)) {
          saturated = false;
          break;
        }
      }
      if (!saturated) break;
    }
  }

  std::vector<GroupElement> r, t;
  for (const auto& g : jumps) {
    if (seen.count(-g)) {
      r.push_back(g);
    } else {
      t.push_back(g);
    }
  }
  return RtPartition{JumpSet(std::move(r)), JumpSet(std::move(t)), saturated};
}

}  // namespace rwre
