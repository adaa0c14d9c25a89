#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/estimator.hpp"
#include "rwre/lattice.hpp"
#include "rwre/multi_index.hpp"

namespace rwre {

enum class MomentSource { analytic, empirical };

/// Estimated mixed moments E[prod_g nu_g^{n_g}] keyed by multi-index.
/// Entries over T jumps carry at most one power (a t-jump ends the site's
/// history, so higher T-powers are unobservable); they are terminal and
/// never extended.
class MomentTable {
 public:
  MomentTable() = default;
  MomentTable(JumpSet universe, JumpSet terminal_jumps, MomentSource source);

  const JumpSet& universe() const { return universe_; }
  const JumpSet& terminal_jumps() const { return terminal_; }
  MomentSource source() const { return source_; }
  int max_total() const { return max_total_; }

  void set(const MultiIndex& n, double value);
  std::optional<double> find(const MultiIndex& n) const;
  /// Throws InsufficientTableError naming the missing multi-index.
  double at(const MultiIndex& n) const;
  bool contains(const MultiIndex& n) const { return entries_.count(n) > 0; }

  const std::map<MultiIndex, double, HistoryOrderLess>& entries() const { return entries_; }

 private:
  JumpSet universe_;
  JumpSet terminal_;
  MomentSource source_ = MomentSource::analytic;
  int max_total_ = 0;
  std::map<MultiIndex, double, HistoryOrderLess> entries_;
};

/// Next-jump law at a history, aligned to the full jump set; nullopt when
/// the source cannot speak for that history (below min_count, unseen).
using VOracle = std::function<std::optional<std::vector<double>>(const MultiIndex&)>;

VOracle analytic_v_oracle(const EnvironmentLaw& law);
VOracle empirical_v_oracle(const EstimatorState& state, std::uint64_t min_count);

/// Order in which telescoping picks the jump to decrement when extending an
/// entry from its predecessor. The canonical path makes empirical tables
/// reproducible; randomized paths measure the path spread.
enum class BuildPath { canonical, randomized };

struct MomentBuildResult {
  MomentTable table;
  std::vector<MultiIndex> truncated;  // requested entries the oracle could not reach
};

/// Telescopes M(n + delta_e) = V_e(n) * M(n) from M(0) = 1 over the given
/// target histories (history-ordered, closed under decrement), then adds the
/// terminal nu_t entries for t in jumps_t.
MomentBuildResult build_moment_table(const VOracle& v, const JumpSet& jumps,
                                     const std::vector<MultiIndex>& histories,
                                     const JumpSet& jumps_t,
                                     BuildPath path = BuildPath::canonical,
                                     std::uint64_t path_seed = 0);

/// The multinomial CDF partial sum at Bernstein degree n:
///   F_n(a) = sum over k-cells with k_i/n < a_i of
///            multinomial(n; k_0..k_l) E[(1-sum U)^{k_0} prod U_i^{k_i}].
///
/// The complement power is expanded multinomially over the jumps not among
/// the variables when those mixed moments are stored (an all-positive sum);
/// otherwise it falls back to the alternating expansion in the variables'
/// own moments (exact algebraically, ill-conditioned at high degree).
/// Throws InsufficientTableError when neither route has its moments, and
/// ValidationError for grid points outside (0,1].
double cdf_bernstein(const MomentTable& m, const std::vector<GroupElement>& variables,
                     const std::vector<double>& a, int degree);

/// Largest degree <= requested at which cdf_bernstein can evaluate from this
/// table (0 if none).
int usable_bernstein_degree(const MomentTable& m, const std::vector<GroupElement>& variables,
                            int requested);

struct CdfGrid {
  std::vector<GroupElement> variables;
  int degree = 0;
  /// (grid point, CDF value), in input order.
  std::vector<std::pair<std::vector<double>, double>> values;
};

struct ReconstructionParams {
  int max_total = 16;
  int degree = 16;
  std::vector<std::vector<double>> grid;       // points; each of the variables' arity
  std::vector<GroupElement> variables;         // empty = auto (lex-greatest jump of R-hat)
  std::uint64_t min_count = 30;
};

struct ReconstructionResult {
  MomentTable table;
  std::vector<MultiIndex> truncated;
  std::optional<CdfGrid> cdf;
  /// "complete" when card T-hat <= 1 (the trajectory pins down mu);
  /// "moments-only" otherwise — the moment table is still emitted.
  std::string verdict;
  int requested_degree = 0;
};

/// Full chain: empirical V -> moment table -> Bernstein CDF grid.
ReconstructionResult reconstruct_environment_law(const EstimatorState& state,
                                                 const EmpiricalClassification& classification,
                                                 const ReconstructionParams& params);

}  // namespace rwre
