#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "commands.hpp"
#include "rwre/errors.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> steps;
  std::optional<std::uint64_t> min_count;
  std::optional<int> degree;
  std::string out_dir = ".";
};

// Config file wins over defaults, flags win over config.
rwre::RunConfig effective_config(const CommonOptions& opts) {
  rwre::RunConfig config;
  if (!opts.config_path.empty()) {
    config = rwre::load_config(opts.config_path);
  }
  if (opts.seed) config.seed = *opts.seed;
  if (opts.steps) config.steps = *opts.steps;
  if (opts.min_count) {
    config.min_count = *opts.min_count;
    config.reconstruction.min_count = *opts.min_count;
  }
  if (opts.degree) {
    if (*opts.degree < 1) throw rwre::ValidationError("--degree must be >= 1");
    config.reconstruction.degree = *opts.degree;
    config.reconstruction.max_total =
        std::max(config.reconstruction.max_total, config.reconstruction.degree);
  }
  return config;
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool config_required) {
  auto* c = cmd->add_option("--config", opts.config_path, "run configuration (JSON)");
  if (config_required) c->required();
  cmd->add_option("--seed", opts.seed, "master seed (overrides config)");
  cmd->add_option("--steps", opts.steps, "number of steps (overrides config)");
  cmd->add_option("--min-count", opts.min_count, "per-history reporting threshold");
  cmd->add_option("--degree", opts.degree, "Bernstein degree for reconstruction");
  cmd->add_option("--out", opts.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random walks in random environments: simulation and single-trajectory inference"};
  app.require_subcommand(1);

  CommonOptions sim_opts, est_opts, res_opts, rec_opts, fix_opts;
  std::string traj_path, report_path;
  std::size_t replicas = 2;
  std::size_t max_steps = 0;
  std::string fixture_name;

  auto* sim = app.add_subcommand("simulate", "simulate the annealed walk and write a trajectory");
  add_common(sim, sim_opts, /*config_required=*/true);

  auto* est = app.add_subcommand("estimate", "estimate V-hat, R/T and diagnostics from a trajectory");
  add_common(est, est_opts, /*config_required=*/true);
  est->add_option("--traj", traj_path, "trajectory file")->required();

  auto* res = app.add_subcommand("resample", "extract iid replica trajectories");
  add_common(res, res_opts, /*config_required=*/true);
  res->add_option("--traj", traj_path, "trajectory file")->required();
  res->add_option("--replicas", replicas, "number of replicas");
  res->add_option("--max-steps", max_steps, "cap on replica length (default: source length)");

  auto* rec = app.add_subcommand("reconstruct", "moment table and CDF grid of the environment law");
  add_common(rec, rec_opts, /*config_required=*/true);
  rec->add_option("--traj", traj_path, "trajectory file");
  rec->add_option("--report", report_path, "estimator report (alternative input)");

  auto* fix = app.add_subcommand("fixture", "run a named end-to-end fixture");
  fix->add_option("--name", fixture_name, "example1 or example2")->required();
  add_common(fix, fix_opts, /*config_required=*/false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return rwre::cli::cmd_simulate(effective_config(sim_opts), sim_opts.out_dir);
    }
    if (est->parsed()) {
      return rwre::cli::cmd_estimate(traj_path, effective_config(est_opts), est_opts.out_dir);
    }
    if (res->parsed()) {
      return rwre::cli::cmd_resample(traj_path, effective_config(res_opts), replicas, max_steps,
                                     res_opts.out_dir);
    }
    if (rec->parsed()) {
      std::optional<std::filesystem::path> traj, report;
      if (!traj_path.empty()) traj = traj_path;
      if (!report_path.empty()) report = report_path;
      return rwre::cli::cmd_reconstruct(traj, report, effective_config(rec_opts),
                                        rec_opts.out_dir);
    }
    if (fix->parsed()) {
      return rwre::cli::cmd_fixture(fixture_name, fix_opts.steps.value_or(1000000),
                                    fix_opts.seed.value_or(1), fix_opts.out_dir);
    }
  } catch (const rwre::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rwre::cli::kExitValidation;
  } catch (const rwre::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rwre::cli::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
