#include "rwre/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rwre/errors.hpp"
#include "rwre/rng.hpp"

namespace rwre {

namespace {

// Multinomial coefficient n! / prod(parts!). Exact in double while it fits
// 53 bits (computed as a product of binomials); log-space beyond that, per
// the max-shift-free positive accumulation used below.
double log_multinomial(std::uint64_t n, std::span<const std::uint32_t> parts) {
  double lg = std::lgamma(static_cast<double>(n) + 1.0);
  for (std::uint32_t p : parts) lg -= std::lgamma(static_cast<double>(p) + 1.0);
  return lg;
}

double multinomial_if_exact(std::uint64_t n, std::span<const std::uint32_t> parts) {
  double result = 1.0;
  std::uint64_t remaining = n;
  for (std::uint32_t p : parts) {
    // C(remaining, p) multiplicatively; bail out past 2^53.
    for (std::uint32_t i = 1; i <= p; ++i) {
      result = result * static_cast<double>(remaining - p + i) / static_cast<double>(i);
      if (result > 9.007199254740992e15) return std::numeric_limits<double>::quiet_NaN();
    }
    remaining -= p;
  }
  return std::round(result);
}

double coefficient_times(double coef_log, double exact_coef, double moment) {
  if (moment <= 0.0) return 0.0;
  if (!std::isnan(exact_coef)) return exact_coef * moment;
  return std::exp(coef_log + std::log(moment));
}

}  // namespace

MomentTable::MomentTable(JumpSet universe, JumpSet terminal_jumps, MomentSource source)
    : universe_(std::move(universe)), terminal_(std::move(terminal_jumps)), source_(source) {}

void MomentTable::set(const MultiIndex& n, double value) {
  entries_[n] = value;
  max_total_ = std::max<int>(max_total_, static_cast<int>(n.total()));
}

std::optional<double> MomentTable::find(const MultiIndex& n) const {
  auto it = entries_.find(n);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double MomentTable::at(const MultiIndex& n) const {
  auto v = find(n);
  if (!v) throw InsufficientTableError("moment table has no entry for " + n.to_string());
  return *v;
}

VOracle analytic_v_oracle(const EnvironmentLaw& law) {
  return [law](const MultiIndex& n) -> std::optional<std::vector<double>> {
    double lden = log_mixed_moment(law, n);
    if (lden == -std::numeric_limits<double>::infinity()) return std::nullopt;
    return analytic_v_law(law, n).probs;
  };
}

VOracle empirical_v_oracle(const EstimatorState& state, std::uint64_t min_count) {
  const EstimatorState* s = &state;
  return [s, min_count](const MultiIndex& n) -> std::optional<std::vector<double>> {
    auto stream = s->stream(n);
    if (stream.size() < min_count) return std::nullopt;
    return s->empirical_v(n).probs;
  };
}

MomentBuildResult build_moment_table(const VOracle& v, const JumpSet& jumps,
                                     const std::vector<MultiIndex>& histories,
                                     const JumpSet& jumps_t, BuildPath path,
                                     std::uint64_t path_seed) {
  MomentBuildResult out;
  out.table = MomentTable(jumps, jumps_t, MomentSource::empirical);

  std::vector<MultiIndex> ordered = histories;
  std::sort(ordered.begin(), ordered.end(), history_order_less);
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  Rng rng(path_seed);
  // Cache of V evaluations at predecessors; each used up to |jumps| times.
  std::unordered_map<MultiIndex, std::optional<std::vector<double>>, MultiIndexHash> vcache;
  auto v_at = [&](const MultiIndex& n) -> const std::optional<std::vector<double>>& {
    auto it = vcache.find(n);
    if (it == vcache.end()) it = vcache.emplace(n, v(n)).first;
    return it->second;
  };

  for (const MultiIndex& n : ordered) {
    if (n.empty()) {
      out.table.set(n, 1.0);
      continue;
    }
    // Pick the entry to decrement: canonical takes the lexicographically
    // largest jump with a positive count (the last canonical entry).
    const auto& entries = n.entries();
    const GroupElement* e = nullptr;
    if (path == BuildPath::canonical) {
      e = &entries.back().first;
    } else {
      e = &entries[rng.next_u64() % entries.size()].first;
    }
    MultiIndex prev = n.decremented(*e);
    auto base = out.table.find(prev);
    if (!base) {
      out.truncated.push_back(n);
      continue;
    }
    const auto& vp = v_at(prev);
    if (!vp) {
      out.truncated.push_back(n);
      continue;
    }
    auto idx = jumps.index_of(*e);
    if (!idx) throw ValidationError("history " + n.to_string() + " uses a jump outside the set");
    out.table.set(n, *base * (*vp)[*idx]);
  }

  // Terminal entries E[prod nu_r^{n_r} nu_t]: one extra t-power, never extended.
  if (!jumps_t.empty()) {
    std::vector<std::pair<MultiIndex, double>> terminals;
    for (const auto& [n, value] : out.table.entries()) {
      bool pure = true;
      for (const auto& [g, c] : n.entries()) {
        if (jumps_t.contains(g)) {
          pure = false;
          break;
        }
      }
      if (!pure) continue;
      const auto& vp = v_at(n);
      if (!vp) continue;
      for (const auto& t : jumps_t) {
        auto idx = jumps.index_of(t);
        if (idx) terminals.push_back({n.incremented(t), value * (*vp)[*idx]});
      }
    }
    for (auto& [n, value] : terminals) out.table.set(n, value);
  }
  return out;
}

namespace {

// One Bernstein cell term E[(1 - sum U)^{k0} prod U_i^{k_i}] via the
// positive multinomial expansion over the non-variable jumps. nullopt means
// a needed moment is missing from the table.
std::optional<double> cell_positive(const MomentTable& m,
                                    const std::vector<GroupElement>& variables,
                                    const std::vector<GroupElement>& others,
                                    std::span<const std::uint32_t> kvec, std::uint32_t k0,
                                    bool probe_only) {
  std::vector<MultiIndex::Entry> base;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (kvec[i] > 0) base.push_back({variables[i], kvec[i]});
  }
  if (k0 == 0) {
    auto v = m.find(MultiIndex(base));
    if (!v) return std::nullopt;
    return probe_only ? 0.0 : *v;
  }
  if (others.empty()) return 0.0;  // complement is identically zero

  // Enumerate compositions of k0 over the other jumps.
  std::vector<std::uint32_t> comp(others.size(), 0);
  comp[0] = k0;
  double acc = 0.0;
  for (;;) {
    auto entry = base;
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (comp[i] > 0) entry.push_back({others[i], comp[i]});
    }
    auto v = m.find(MultiIndex(entry));
    if (!v) return std::nullopt;
    if (!probe_only && *v > 0.0) {
      double lc = log_multinomial(k0, comp);
      double ec = multinomial_if_exact(k0, comp);
      acc += coefficient_times(lc, ec, *v);
    }
    // Next composition (colex order).
    std::size_t i = 0;
    while (i + 1 < comp.size() && comp[i] == 0) ++i;
    if (i + 1 >= comp.size()) break;
    std::uint32_t head = comp[i];
    comp[i] = 0;
    comp[i + 1] += 1;
    comp[0] = head - 1;
  }
  return acc;
}

// Fallback: alternating expansion of the complement power in the variables'
// own moments. Algebraically exact; cancellation limits it to modest degrees.
std::optional<double> cell_alternating(const MomentTable& m,
                                       const std::vector<GroupElement>& variables,
                                       std::span<const std::uint32_t> kvec, std::uint32_t k0,
                                       bool probe_only) {
  const std::size_t l = variables.size();
  std::vector<std::uint32_t> j(l, 0);
  double acc = 0.0;
  double compensation = 0.0;
  for (;;) {
    std::uint32_t jsum = 0;
    for (std::uint32_t x : j) jsum += x;
    if (jsum <= k0) {
      std::vector<MultiIndex::Entry> entry;
      std::vector<std::uint32_t> parts;
      parts.reserve(l + 1);
      parts.push_back(k0 - jsum);
      for (std::size_t i = 0; i < l; ++i) {
        parts.push_back(j[i]);
        if (kvec[i] + j[i] > 0) entry.push_back({variables[i], kvec[i] + j[i]});
      }
      auto v = m.find(MultiIndex(entry));
      if (!v) return std::nullopt;
      if (!probe_only) {
        double lc = log_multinomial(k0, parts);
        double ec = multinomial_if_exact(k0, parts);
        double term = coefficient_times(lc, ec, *v);
        if (jsum % 2 == 1) term = -term;
        // Kahan accumulation; the signed terms can nearly cancel.
        double y = term - compensation;
        double t = acc + y;
        compensation = (t - acc) - y;
        acc = t;
      }
    }
    // Advance j over the box [0..k0]^l (bounded by jsum <= k0 check above).
    std::size_t i = 0;
    for (; i < l; ++i) {
      if (j[i] < k0) {
        ++j[i];
        break;
      }
      j[i] = 0;
    }
    if (i == l) break;
  }
  return acc;
}

struct CellPlan {
  bool use_positive = false;
  std::vector<GroupElement> others;
};

std::optional<CellPlan> plan_for_degree(const MomentTable& m,
                                        const std::vector<GroupElement>& variables, int degree) {
  CellPlan plan;
  for (const auto& g : m.universe()) {
    if (std::find(variables.begin(), variables.end(), g) == variables.end()) {
      plan.others.push_back(g);
    }
  }
  const std::size_t l = variables.size();
  // Probe every cell of the degree for each route.
  auto probe = [&](bool positive) {
    std::vector<std::uint32_t> kvec(l, 0);
    for (;;) {
      std::uint32_t ksum = 0;
      for (std::uint32_t x : kvec) ksum += x;
      if (ksum <= static_cast<std::uint32_t>(degree)) {
        std::uint32_t k0 = degree - ksum;
        auto r = positive
                     ? cell_positive(m, variables, plan.others, kvec, k0, /*probe_only=*/true)
                     : cell_alternating(m, variables, kvec, k0, /*probe_only=*/true);
        if (!r) return false;
      }
      std::size_t i = 0;
      for (; i < l; ++i) {
        if (kvec[i] < static_cast<std::uint32_t>(degree)) {
          ++kvec[i];
          break;
        }
        kvec[i] = 0;
      }
      if (i == l) break;
    }
    return true;
  };
  if (probe(true)) {
    plan.use_positive = true;
    return plan;
  }
  if (probe(false)) {
    plan.use_positive = false;
    return plan;
  }
  return std::nullopt;
}

}  // namespace

double cdf_bernstein(const MomentTable& m, const std::vector<GroupElement>& variables,
                     const std::vector<double>& a, int degree) {
  if (degree < 1) throw ValidationError("cdf_bernstein: degree must be >= 1");
  if (variables.empty()) throw ValidationError("cdf_bernstein: need at least one variable");
  if (a.size() != variables.size()) {
    throw ValidationError("cdf_bernstein: grid point arity does not match the variables");
  }
  for (double ai : a) {
    if (!(ai > 0.0 && ai <= 1.0)) {
      throw ValidationError("cdf_bernstein: grid coordinates must lie in (0,1]");
    }
  }
  for (const auto& g : variables) {
    if (!m.universe().contains(g)) {
      throw ValidationError("cdf_bernstein: variable " + g.to_string() + " not in the table");
    }
  }

  auto plan = plan_for_degree(m, variables, degree);
  if (!plan) {
    throw InsufficientTableError("moment table cannot support degree " +
                                 std::to_string(degree) + " for the requested variables");
  }

  const std::size_t l = variables.size();
  const double n = static_cast<double>(degree);
  std::vector<std::uint32_t> kvec(l, 0);
  double acc = 0.0, compensation = 0.0;
  for (;;) {
    std::uint32_t ksum = 0;
    bool in_window = true;
    for (std::size_t i = 0; i < l; ++i) {
      ksum += kvec[i];
      // Strict k_i/n < a_i, evaluated exactly as written so that grid points
      // landing on lattice values behave like the formula says.
      if (!(static_cast<double>(kvec[i]) / n < a[i])) in_window = false;
    }
    if (in_window && ksum <= static_cast<std::uint32_t>(degree)) {
      std::uint32_t k0 = degree - ksum;
      auto e = plan->use_positive
                   ? cell_positive(m, variables, plan->others, kvec, k0, false)
                   : cell_alternating(m, variables, kvec, k0, false);
      if (!e) {
        throw InsufficientTableError("moment table entry vanished mid-evaluation");
      }
      if (*e != 0.0) {
        std::vector<std::uint32_t> parts;
        parts.reserve(l + 1);
        parts.push_back(k0);
        for (std::uint32_t x : kvec) parts.push_back(x);
        double lc = log_multinomial(degree, parts);
        double ec = multinomial_if_exact(degree, parts);
        double term = !std::isnan(ec) && *e > 0.0 ? ec * *e
                      : *e > 0.0                  ? std::exp(lc + std::log(*e))
                                                  : -std::exp(lc + std::log(-*e));
        double y = term - compensation;
        double t = acc + y;
        compensation = (t - acc) - y;
        acc = t;
      }
    }
    std::size_t i = 0;
    for (; i < l; ++i) {
      if (kvec[i] < static_cast<std::uint32_t>(degree)) {
        ++kvec[i];
        break;
      }
      kvec[i] = 0;
    }
    if (i == l) break;
  }
  return acc;
}

int usable_bernstein_degree(const MomentTable& m, const std::vector<GroupElement>& variables,
                            int requested) {
  for (int d = requested; d >= 1; --d) {
    if (plan_for_degree(m, variables, d)) return d;
  }
  return 0;
}

ReconstructionResult reconstruct_environment_law(const EstimatorState& state,
                                                 const EmpiricalClassification& classification,
                                                 const ReconstructionParams& params) {
  ReconstructionResult out;
  out.requested_degree = params.degree;
  out.verdict = classification.t.size() <= 1 ? "complete" : "moments-only";

  // Reachable local histories are supported on R-hat; build the table there.
  std::vector<MultiIndex> histories =
      enumerate_multi_indices(classification.r.elements(), params.max_total);
  VOracle oracle = empirical_v_oracle(state, params.min_count);
  auto build = build_moment_table(oracle, state.jumps(), histories, classification.t);
  out.table = std::move(build.table);
  out.truncated = std::move(build.truncated);

  std::vector<GroupElement> variables = params.variables;
  if (variables.empty() && !classification.r.empty()) {
    variables.push_back(classification.r.at(classification.r.size() - 1));
  }
  for (const auto& g : variables) {
    if (!classification.r.contains(g)) {
      throw ValidationError("cdf variable " + g.to_string() + " is not in R-hat");
    }
  }
  if (variables.empty() || params.grid.empty()) return out;

  int degree = usable_bernstein_degree(out.table, variables, params.degree);
  if (degree == 0) return out;

  CdfGrid grid;
  grid.variables = variables;
  grid.degree = degree;
  for (const auto& point : params.grid) {
    double v = cdf_bernstein(out.table, variables, point, degree);
    grid.values.push_back({point, std::clamp(v, 0.0, 1.0)});
  }
  out.cdf = std::move(grid);
  return out;
}

}  // namespace rwre
