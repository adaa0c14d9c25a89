#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "rwre/config.hpp"

namespace rwre::cli {

/// Exit codes: 0 ok, 2 validation, 3 I/O, 4 statistical fixture failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitFixtureFailure = 4;

inline constexpr const char* kVersion = "0.1.0";

int cmd_simulate(const RunConfig& config, const std::filesystem::path& out_dir);

int cmd_estimate(const std::filesystem::path& traj_path, const RunConfig& config,
                 const std::filesystem::path& out_dir);

int cmd_resample(const std::filesystem::path& traj_path, const RunConfig& config,
                 std::size_t replicas, std::size_t max_steps,
                 const std::filesystem::path& out_dir);

int cmd_reconstruct(const std::optional<std::filesystem::path>& traj_path,
                    const std::optional<std::filesystem::path>& report_path,
                    const RunConfig& config, const std::filesystem::path& out_dir);

int cmd_fixture(const std::string& name, std::uint64_t steps, std::uint64_t seed,
                const std::filesystem::path& out_dir);

}  // namespace rwre::cli
