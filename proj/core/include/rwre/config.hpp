#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "rwre/environment.hpp"
#include "rwre/lattice.hpp"
#include "rwre/reconstruction.hpp"

namespace rwre {

/// One run's validated configuration. Probabilities and alphas in the JSON
/// are aligned to the jump order as written there; parsing remaps them onto
/// the canonical (sorted) jump set.
struct RunConfig {
  int dim = 1;
  JumpSet jumps;
  std::optional<EnvironmentLaw> law;
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  std::uint64_t min_count = 30;
  ReconstructionParams reconstruction;
};

/// Strict parse: unknown keys and schema violations raise ValidationError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// The effective configuration (after flag overrides), for provenance files.
nlohmann::ordered_json config_to_json(const RunConfig& config);

}  // namespace rwre
