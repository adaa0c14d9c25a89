#include "commands.hpp"

#include <algorithm>
#include <iostream>

#include "rwre/errors.hpp"
#include "rwre/report.hpp"
#include "rwre/resampler.hpp"
#include "rwre/trajectory_io.hpp"
#include "rwre/walker.hpp"

namespace rwre::cli {

namespace fs = std::filesystem;

namespace {

void ensure_out_dir(const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string());
}

}  // namespace

int cmd_simulate(const RunConfig& config, const fs::path& out_dir) {
  if (!config.law) throw ValidationError("simulate needs a 'law' in the config");
  ensure_out_dir(out_dir);

  Trajectory traj = simulate_quenched(*config.law, config.seed, config.steps);
  TrajectoryHeader header;
  header.dim = config.dim;
  write_trajectory(out_dir / "trajectory.txt", traj, header);

  nlohmann::ordered_json prov;
  prov["command"] = "simulate";
  prov["version"] = kVersion;
  prov["seed"] = config.seed;
  prov["config"] = config_to_json(config);
  write_json(out_dir / "provenance.json", prov);

  std::cout << "wrote " << (out_dir / "trajectory.txt").string() << " (" << traj.size()
            << " steps)\n";
  return kExitOk;
}

int cmd_estimate(const fs::path& traj_path, const RunConfig& config, const fs::path& out_dir) {
  ensure_out_dir(out_dir);
  Trajectory traj = read_trajectory(traj_path, config.jumps).traj;

  EstimatorState state = EstimatorState::ingest(traj, config.jumps);
  EmpiricalClassification classification = classify_r_t_empirical(traj);
  RecurrenceReport recurrence = recurrence_diagnostic(traj);
  auto successions = succession_counts(traj);

  nlohmann::ordered_json report = build_estimator_report(state, classification, recurrence,
                                                         config.min_count, &successions);
  write_json(out_dir / "report.json", report);
  std::cout << "wrote " << (out_dir / "report.json").string() << " ("
            << report["histories"].size() << " histories with count >= " << config.min_count
            << ")\n";
  return kExitOk;
}

int cmd_resample(const fs::path& traj_path, const RunConfig& config, std::size_t replicas,
                 std::size_t max_steps, const fs::path& out_dir) {
  if (replicas < 1) throw ValidationError("resample needs --replicas >= 1");
  ensure_out_dir(out_dir);
  Trajectory traj = read_trajectory(traj_path, config.jumps).traj;
  if (max_steps == 0) max_steps = traj.size();

  std::vector<Replica> reps = extract_many(traj, replicas, max_steps);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    TrajectoryHeader header;
    header.dim = config.dim;
    header.replica = static_cast<int>(i + 1);
    header.truncated = reps[i].truncated;
    fs::path path = out_dir / ("replica_" + std::to_string(i + 1) + ".txt");
    write_trajectory(path, reps[i].traj, header);
    std::cout << "wrote " << path.string() << " (" << reps[i].traj.size() << " steps"
              << (reps[i].truncated ? ", truncated" : "") << ")\n";
  }
  return kExitOk;
}

int cmd_reconstruct(const std::optional<fs::path>& traj_path,
                    const std::optional<fs::path>& report_path, const RunConfig& config,
                    const fs::path& out_dir) {
  if (!traj_path && !report_path) {
    throw ValidationError("reconstruct needs --traj or --report");
  }
  ensure_out_dir(out_dir);

  ReconstructionResult result;
  if (traj_path) {
    Trajectory traj = read_trajectory(*traj_path, config.jumps).traj;
    EstimatorState state = EstimatorState::ingest(traj, config.jumps);
    EmpiricalClassification classification = classify_r_t_empirical(traj);
    result = reconstruct_environment_law(state, classification, config.reconstruction);
  } else {
    ReportData report = read_estimator_report(*report_path);
    const ReconstructionParams& params = config.reconstruction;
    std::vector<MultiIndex> histories =
        enumerate_multi_indices(report.classification.r.elements(), params.max_total);
    auto build = build_moment_table(report_v_oracle(report, params.min_count), report.jumps,
                                    histories, report.classification.t);
    result.table = std::move(build.table);
    result.truncated = std::move(build.truncated);
    result.requested_degree = params.degree;
    result.verdict = report.classification.t.size() <= 1 ? "complete" : "moments-only";
    std::vector<GroupElement> variables = params.variables;
    if (variables.empty() && !report.classification.r.empty()) {
      variables.push_back(report.classification.r.at(report.classification.r.size() - 1));
    }
    if (!variables.empty() && !params.grid.empty()) {
      int degree = usable_bernstein_degree(result.table, variables, params.degree);
      if (degree > 0) {
        CdfGrid grid;
        grid.variables = variables;
        grid.degree = degree;
        for (const auto& point : params.grid) {
          grid.values.push_back(
              {point, std::clamp(cdf_bernstein(result.table, variables, point, degree), 0.0, 1.0)});
        }
        result.cdf = std::move(grid);
      }
    }
  }

  atomic_write_text(out_dir / "moments.csv", moment_table_csv(result.table));
  nlohmann::ordered_json meta;
  meta["verdict"] = result.verdict;
  meta["requested_degree"] = result.requested_degree;
  meta["table_entries"] = result.table.entries().size();
  meta["truncated_count"] = result.truncated.size();
  meta["truncated_first"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < result.truncated.size() && i < 10; ++i) {
    meta["truncated_first"].push_back(result.truncated[i].to_string());
  }
  if (result.cdf) {
    atomic_write_text(out_dir / "cdf.csv", cdf_grid_csv(*result.cdf));
    meta["degree_used"] = result.cdf->degree;
    meta["variables"] = nlohmann::ordered_json::array();
    for (const auto& g : result.cdf->variables) meta["variables"].push_back(g.coords());
  } else {
    meta["degree_used"] = 0;
  }
  write_json(out_dir / "reconstruction.json", meta);

  std::cout << "verdict: " << result.verdict << " (degree "
            << (result.cdf ? result.cdf->degree : 0) << ", " << result.table.entries().size()
            << " moment entries)\n";
  return kExitOk;
}

}  // namespace rwre::cli
