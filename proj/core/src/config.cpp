#include "rwre/config.hpp"

#include <fstream>
#include <set>
#include <string>

#include "rwre/errors.hpp"

namespace rwre {

namespace {

void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ValidationError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

GroupElement parse_jump(const nlohmann::json& j, int dim) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(dim)) {
    throw ValidationError("jump must be an array of " + std::to_string(dim) + " integers");
  }
  std::vector<std::int32_t> coords;
  for (const auto& c : j) {
    if (!c.is_number_integer()) throw ValidationError("jump coordinates must be integers");
    coords.push_back(c.get<std::int32_t>());
  }
  return GroupElement(std::move(coords));
}

// p/alphas are aligned to the jump order as written in the config; build the
// canonical-slot vector.
std::vector<double> remap_to_canonical(const std::vector<double>& values,
                                       const std::vector<GroupElement>& config_order,
                                       const JumpSet& canonical) {
  std::vector<double> out(canonical.size(), 0.0);
  for (std::size_t i = 0; i < config_order.size(); ++i) {
    out[*canonical.index_of(config_order[i])] = values[i];
  }
  return out;
}

EnvironmentLaw parse_law(const nlohmann::json& j, const std::vector<GroupElement>& config_order,
                         const JumpSet& canonical) {
  if (!j.is_object()) throw ValidationError("'law' must be an object");
  std::string kind = j.value("kind", "");
  if (kind == "mixture") {
    reject_unknown_keys(j, {"kind", "atoms"}, "law");
    if (!j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty()) {
      throw ValidationError("mixture law needs a nonempty 'atoms' array");
    }
    std::vector<EnvironmentLaw::Atom> atoms;
    for (const auto& aj : j["atoms"]) {
      reject_unknown_keys(aj, {"w", "p"}, "law.atoms[]");
      if (!aj.contains("w") || !aj.contains("p")) {
        throw ValidationError("mixture atom needs 'w' and 'p'");
      }
      std::vector<double> p = aj["p"].get<std::vector<double>>();
      if (p.size() != config_order.size()) {
        throw ValidationError("atom 'p' must align with 'jumps'");
      }
      atoms.push_back({aj["w"].get<double>(), SiteLaw{remap_to_canonical(p, config_order, canonical)}});
    }
    return EnvironmentLaw::mixture(canonical, std::move(atoms));
  }
  if (kind == "dirichlet") {
    reject_unknown_keys(j, {"kind", "alphas"}, "law");
    if (!j.contains("alphas")) throw ValidationError("dirichlet law needs 'alphas'");
    std::vector<double> alphas = j["alphas"].get<std::vector<double>>();
    if (alphas.size() != config_order.size()) {
      throw ValidationError("'alphas' must align with 'jumps'");
    }
    return EnvironmentLaw::dirichlet(canonical, remap_to_canonical(alphas, config_order, canonical));
  }
  throw ValidationError("law kind must be 'mixture' or 'dirichlet'");
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  reject_unknown_keys(j,
                      {"dim", "jumps", "law", "steps", "seed", "min_count", "reconstruction"},
                      "config");

  RunConfig config;
  config.dim = j.value("dim", 1);
  if (config.dim < 1 || config.dim > 16) throw ValidationError("'dim' must be in [1,16]");

  if (!j.contains("jumps") || !j["jumps"].is_array() || j["jumps"].empty()) {
    throw ValidationError("config needs a nonempty 'jumps' array");
  }
  std::vector<GroupElement> config_order;
  for (const auto& jj : j["jumps"]) config_order.push_back(parse_jump(jj, config.dim));
  config.jumps = JumpSet(config_order);

  if (j.contains("law")) {
    config.law = parse_law(j["law"], config_order, config.jumps);
  }

  if (j.contains("steps")) {
    if (!j["steps"].is_number_unsigned()) throw ValidationError("'steps' must be a nonnegative integer");
    config.steps = j["steps"].get<std::uint64_t>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ValidationError("'seed' must be a nonnegative integer");
    config.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("min_count")) {
    if (!j["min_count"].is_number_unsigned() || j["min_count"].get<std::uint64_t>() < 1) {
      throw ValidationError("'min_count' must be a positive integer");
    }
    config.min_count = j["min_count"].get<std::uint64_t>();
  }
  config.reconstruction.min_count = config.min_count;

  // Default univariate grid 0.1 .. 0.9.
  config.reconstruction.grid.clear();
  for (int i = 1; i <= 9; ++i) config.reconstruction.grid.push_back({i / 10.0});

  if (j.contains("reconstruction")) {
    const auto& rj = j["reconstruction"];
    reject_unknown_keys(rj, {"max_total", "degree", "grid", "variables"}, "reconstruction");
    if (rj.contains("max_total")) config.reconstruction.max_total = rj["max_total"].get<int>();
    if (rj.contains("degree")) config.reconstruction.degree = rj["degree"].get<int>();
    if (config.reconstruction.max_total < 1 || config.reconstruction.degree < 1) {
      throw ValidationError("reconstruction degree and max_total must be >= 1");
    }
    if (rj.contains("grid")) {
      config.reconstruction.grid.clear();
      for (const auto& gj : rj["grid"]) {
        if (gj.is_number()) {
          config.reconstruction.grid.push_back({gj.get<double>()});
        } else if (gj.is_array()) {
          config.reconstruction.grid.push_back(gj.get<std::vector<double>>());
        } else {
          throw ValidationError("grid entries must be numbers or arrays of numbers");
        }
      }
    }
    if (rj.contains("variables")) {
      for (const auto& vj : rj["variables"]) {
        GroupElement g = parse_jump(vj, config.dim);
        if (!config.jumps.contains(g)) {
          throw ValidationError("reconstruction variable " + g.to_string() +
                                " not in the jump set");
        }
        config.reconstruction.variables.push_back(g);
      }
    }
  }
  if (config.reconstruction.max_total < config.reconstruction.degree) {
    // The Bernstein sum needs full diagonals up to the degree.
    config.reconstruction.max_total = config.reconstruction.degree;
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

nlohmann::ordered_json config_to_json(const RunConfig& config) {
  nlohmann::ordered_json j;
  j["dim"] = config.dim;
  auto jump_array = [](const GroupElement& g) { return nlohmann::ordered_json(g.coords()); };
  j["jumps"] = nlohmann::ordered_json::array();
  for (const auto& g : config.jumps) j["jumps"].push_back(jump_array(g));
  if (config.law) {
    nlohmann::ordered_json lj;
    if (config.law->kind() == EnvironmentLaw::Kind::mixture) {
      lj["kind"] = "mixture";
      lj["atoms"] = nlohmann::ordered_json::array();
      for (const auto& atom : config.law->atoms()) {
        lj["atoms"].push_back({{"w", atom.weight}, {"p", atom.law.probs}});
      }
    } else {
      lj["kind"] = "dirichlet";
      lj["alphas"] = config.law->alphas();
    }
    j["law"] = std::move(lj);
  }
  j["steps"] = config.steps;
  j["seed"] = config.seed;
  j["min_count"] = config.min_count;
  nlohmann::ordered_json rj;
  rj["max_total"] = config.reconstruction.max_total;
  rj["degree"] = config.reconstruction.degree;
  rj["grid"] = nlohmann::ordered_json::array();
  for (const auto& point : config.reconstruction.grid) rj["grid"].push_back(point);
  if (!config.reconstruction.variables.empty()) {
    rj["variables"] = nlohmann::ordered_json::array();
    for (const auto& g : config.reconstruction.variables) rj["variables"].push_back(jump_array(g));
  }
  j["reconstruction"] = std::move(rj);
  return j;
}

}  // namespace rwre
