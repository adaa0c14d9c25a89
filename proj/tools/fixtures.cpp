#include <cmath>
#include <iostream>
#include <unordered_map>

#include "commands.hpp"
#include "rwre/errors.hpp"
#include "rwre/report.hpp"
#include "rwre/rng.hpp"
#include "rwre/statlab.hpp"
#include "rwre/trajectory_io.hpp"
#include "rwre/walker.hpp"

namespace rwre::cli {

namespace fs = std::filesystem;

namespace {

struct CheckList {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  bool all_pass = true;

  void add(const std::string& name, bool pass, nlohmann::ordered_json detail) {
    detail["name"] = name;
    detail["pass"] = pass;
    checks.push_back(std::move(detail));
    all_pass &= pass;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << "\n";
  }
};

// Example walk on {1,2}: deterministic environment moving +1 or +2 with
// probability 1/2 each.
EnvironmentLaw example1_deterministic() {
  JumpSet jumps({GroupElement({1}), GroupElement({2})});
  return EnvironmentLaw::mixture(jumps, {{1.0, SiteLaw{{0.5, 0.5}}}});
}

// The same one-step law realized by coin-tossing a point mass per site.
EnvironmentLaw example1_coin_tossed() {
  JumpSet jumps({GroupElement({1}), GroupElement({2})});
  return EnvironmentLaw::mixture(jumps, {{0.5, SiteLaw{{1.0, 0.0}}},
                                         {0.5, SiteLaw{{0.0, 1.0}}}});
}

// Example walk on {0,1,2}: with probability 1/2 the site loops (p0=p1=1/2),
// with probability 1/2 it jumps +2 surely.
EnvironmentLaw example2_law() {
  JumpSet jumps({GroupElement({0}), GroupElement({1}), GroupElement({2})});
  return EnvironmentLaw::mixture(jumps, {{0.5, SiteLaw{{0.5, 0.5, 0.0}}},
                                         {0.5, SiteLaw{{0.0, 0.0, 1.0}}}});
}

int run_example1(std::uint64_t steps, std::uint64_t seed, const fs::path& out_dir) {
  EnvironmentLaw law_a = example1_deterministic();
  EnvironmentLaw law_b = example1_coin_tossed();

  Trajectory traj_a = simulate_quenched(law_a, derive_substream(seed, "example1-a"), steps);
  Trajectory traj_b = simulate_quenched(law_b, derive_substream(seed, "example1-b"), steps);

  EstimatorState state_a = EstimatorState::ingest(traj_a, law_a.jumps());
  EstimatorState state_b = EstimatorState::ingest(traj_b, law_b.jumps());
  VEstimate v_a = state_a.empirical_v(MultiIndex{});
  VEstimate v_b = state_b.empirical_v(MultiIndex{});

  CheckList checks;

  // The two walks have the same law: their estimated V on the empty history
  // must be statistically indistinguishable.
  std::vector<std::vector<std::uint64_t>> table(2);
  for (std::size_t i = 0; i < law_a.jumps().size(); ++i) {
    table[0].push_back(static_cast<std::uint64_t>(std::llround(v_a.probs[i] * v_a.count)));
    table[1].push_back(static_cast<std::uint64_t>(std::llround(v_b.probs[i] * v_b.count)));
  }
  auto test = stats::chisq_independence(table);
  checks.add("V(empty) indistinguishable (chi-square alpha=0.001)", test.pvalue >= 0.001,
             {{"stat", test.stat}, {"pvalue", test.pvalue}});

  double tv = stats::tv_distance(v_a.probs, v_b.probs);
  checks.add("TV distance of first-step laws <= 0.01", tv <= 0.01, {{"tv", tv}});

  auto cls_a = classify_r_t_empirical(traj_a);
  auto cls_b = classify_r_t_empirical(traj_b);
  JumpSet expected_t({GroupElement({1}), GroupElement({2})});
  checks.add("T-hat = {1,2} for both walks",
             cls_a.t == expected_t && cls_b.t == expected_t && cls_a.r.empty() && cls_b.r.empty(),
             {{"T_a", cls_a.t.size()}, {"T_b", cls_b.t.size()}});

  nlohmann::ordered_json out;
  out["fixture"] = "example1";
  out["steps"] = steps;
  out["seed"] = seed;
  out["checks"] = checks.checks;
  out["pass"] = checks.all_pass;
  write_json(out_dir / "fixture_report.json", out);
  std::cout << (checks.all_pass ? "example1 PASS\n" : "example1 FAIL\n");
  return checks.all_pass ? kExitOk : kExitFixtureFailure;
}

int run_example2(std::uint64_t steps, std::uint64_t seed, const fs::path& out_dir) {
  EnvironmentLaw law = example2_law();
  const GroupElement zero({0}), one({1}), two({2});

  Trajectory traj = simulate_quenched(law, derive_substream(seed, "example2"), steps);

  CheckList checks;

  auto cls = classify_r_t_empirical(traj);
  checks.add("R-hat = {0}", cls.r.size() == 1 && cls.r.contains(zero),
             {{"R_size", cls.r.size()}});

  // Per-site departure sequences. Only jumps {0,1,2} exist, so a site's
  // history is a run of 0-loops closed by a single 1 or 2, after which the
  // walk never returns. A trailing open run (last departure 0) is dropped.
  std::unordered_map<GroupElement, std::vector<std::uint8_t>, GroupElementHash> departures;
  GroupElement pos = GroupElement::zero(1);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    departures[pos].push_back(traj.step_index(i));
    pos = pos + traj.jump(i);
  }
  const std::uint8_t idx0 = *traj.alphabet().index_of(zero);
  const std::uint8_t idx1 = *traj.alphabet().index_of(one);

  std::uint64_t complete_sites = 0, terminal_one = 0, terminal_two = 0;
  std::uint64_t sites_with_zero = 0, unique_one = 0;
  std::uint64_t run_total = 0, run_count = 0;
  for (const auto& [site, seq] : departures) {
    if (seq.back() == idx0) continue;  // open run at the end of the trajectory
    ++complete_sites;
    std::uint64_t zeros = 0;
    while (zeros < seq.size() && seq[zeros] == idx0) ++zeros;
    if (seq.back() == idx1) {
      ++terminal_one;
      run_total += zeros;
      ++run_count;
      if (zeros == 0) ++unique_one;
    } else {
      ++terminal_two;
    }
    if (zeros > 0) ++sites_with_zero;
  }
  if (complete_sites == 0) throw ValidationError("example2: trajectory too short");

  // Geometric parameter of the 0-run length at loop sites.
  double mean_run = static_cast<double>(run_total) / static_cast<double>(run_count);
  double a_hat = mean_run / (1.0 + mean_run);
  checks.add("0-run geometric parameter a = 0.5 +/- 0.02", std::fabs(a_hat - 0.5) <= 0.02,
             {{"a_hat", a_hat}, {"runs", run_count}});

  // Proportion of sites where a 0 was possible but not taken (inferred via
  // the unique 1-transition sites) matches the proportion showing a 0.
  double n = static_cast<double>(complete_sites);
  double p_zero = sites_with_zero / n;
  double p_unique_one = unique_one / n;
  checks.add("proportion identity: P(>=1 zero) = P(unique 1-transition) +/- 0.01",
             std::fabs(p_zero - p_unique_one) <= 0.01,
             {{"p_zero", p_zero}, {"p_unique_one", p_unique_one}});

  // Mixture weights from the terminal transition of each site.
  double w1 = terminal_one / n;
  double w2 = terminal_two / n;
  checks.add("mixture weights 0.5 +/- 0.03", std::fabs(w1 - 0.5) <= 0.03 &&
                                                 std::fabs(w2 - 0.5) <= 0.03,
             {{"w1", w1}, {"w2", w2}});

  auto successions = succession_counts(traj);
  std::uint64_t zero_then_two = 0;
  if (auto it = successions.find("[0]->[2]"); it != successions.end()) zero_then_two = it->second;
  checks.add("0-transition never followed by 2-transition at the same site", zero_then_two == 0,
             {{"count", zero_then_two}});

  nlohmann::ordered_json out;
  out["fixture"] = "example2";
  out["steps"] = steps;
  out["seed"] = seed;
  out["a_hat"] = a_hat;
  out["weights"] = {w1, w2};
  out["checks"] = checks.checks;
  out["pass"] = checks.all_pass;
  write_json(out_dir / "fixture_report.json", out);
  std::cout << (checks.all_pass ? "example2 PASS\n" : "example2 FAIL\n");
  return checks.all_pass ? kExitOk : kExitFixtureFailure;
}

}  // namespace

int cmd_fixture(const std::string& name, std::uint64_t steps, std::uint64_t seed,
                const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string());
  if (name == "example1") return run_example1(steps, seed, out_dir);
  if (name == "example2") return run_example2(steps, seed, out_dir);
  throw ValidationError("unknown fixture '" + name + "' (expected example1 or example2)");
}

}  // namespace rwre::cli
