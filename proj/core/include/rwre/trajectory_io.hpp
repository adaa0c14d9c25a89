#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "rwre/trajectory.hpp"

namespace rwre {

/// Trajectory files: a header line "#rwre-traj v1 dim=<d>" (replicas add
/// " replica=<i> truncated=<bool>"), then one jump per line in group-element
/// text form. steps=0 gives a header-only file.
struct TrajectoryHeader {
  int dim = 1;
  std::optional<int> replica;
  std::optional<bool> truncated;
};

/// Atomic write (temp file + rename).
void write_trajectory(const std::filesystem::path& path, const Trajectory& traj,
                      const TrajectoryHeader& header);

struct ReadTrajectory {
  Trajectory traj;
  TrajectoryHeader header;
};

/// Parses and validates against the declared jump set; errors carry the
/// offending line number.
ReadTrajectory read_trajectory(const std::filesystem::path& path, const JumpSet& declared);

/// Writes text atomically (temp + rename); shared by all file emitters.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace rwre
