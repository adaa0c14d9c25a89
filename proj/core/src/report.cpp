#include "rwre/report.hpp"

#include <fstream>

#include "rwre/errors.hpp"
#include "rwre/trajectory_io.hpp"

namespace rwre {

namespace {

nlohmann::ordered_json jump_probs_object(const JumpSet& jumps, const std::vector<double>& values) {
  nlohmann::ordered_json o;
  for (std::size_t i = 0; i < jumps.size(); ++i) o[jumps.at(i).to_string()] = values[i];
  return o;
}

nlohmann::ordered_json history_object(const MultiIndex& n) {
  nlohmann::ordered_json o = nlohmann::ordered_json::object();
  for (const auto& [g, c] : n.entries()) o[g.to_string()] = c;
  return o;
}

std::string csv_number(double v) { return nlohmann::json(v).dump(); }

}  // namespace

nlohmann::ordered_json build_estimator_report(
    const EstimatorState& state, const EmpiricalClassification& classification,
    const RecurrenceReport& recurrence, std::uint64_t min_count,
    const std::map<std::string, std::uint64_t>* successions) {
  nlohmann::ordered_json j;
  j["source"] = {{"steps", state.source_length()},
                 {"dim", state.jumps().dim()},
                 {"jumps", nlohmann::ordered_json::array()}};
  for (const auto& g : state.jumps()) j["source"]["jumps"].push_back(g.coords());
  j["min_count"] = min_count;

  j["histories"] = nlohmann::ordered_json::array();
  for (const MultiIndex& n : state.observed_histories(min_count)) {
    VEstimate est = state.empirical_v(n);
    nlohmann::ordered_json rec;
    rec["history"] = history_object(n);
    rec["count"] = est.count;
    rec["V"] = jump_probs_object(state.jumps(), est.probs);
    rec["se"] = jump_probs_object(state.jumps(), est.se);
    j["histories"].push_back(std::move(rec));
  }

  nlohmann::ordered_json cls;
  cls["R"] = nlohmann::ordered_json::array();
  for (const auto& g : classification.r) cls["R"].push_back(g.coords());
  cls["T"] = nlohmann::ordered_json::array();
  for (const auto& g : classification.t) cls["T"].push_back(g.coords());
  cls["evidence"] = nlohmann::ordered_json::object();
  for (const auto& [g, n] : classification.evidence) cls["evidence"][g.to_string()] = n;
  j["classification"] = std::move(cls);

  j["recurrence"] = {{"revisit_fraction", recurrence.revisit_fraction},
                     {"max_visits", recurrence.max_visits},
                     {"distinct_sites", recurrence.distinct_sites}};

  if (successions) {
    nlohmann::ordered_json s = nlohmann::ordered_json::object();
    for (const auto& [key, count] : *successions) s[key] = count;
    j["successions"] = std::move(s);
  }
  return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  atomic_write_text(path, j.dump(2) + "\n");
}

ReportData read_estimator_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open report " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("report " + path.string() + " is not valid JSON: " + e.what());
  }

  ReportData data;
  try {
    std::vector<GroupElement> jumps;
    for (const auto& cj : j.at("source").at("jumps")) {
      jumps.push_back(GroupElement(cj.get<std::vector<std::int32_t>>()));
    }
    data.jumps = JumpSet(std::move(jumps));

    for (const auto& rec : j.at("histories")) {
      std::vector<MultiIndex::Entry> entries;
      for (auto it = rec.at("history").begin(); it != rec.at("history").end(); ++it) {
        entries.push_back({GroupElement::parse(it.key()), it.value().get<std::uint32_t>()});
      }
      MultiIndex n(std::move(entries));
      std::vector<double> probs(data.jumps.size(), 0.0);
      for (auto it = rec.at("V").begin(); it != rec.at("V").end(); ++it) {
        auto idx = data.jumps.index_of(GroupElement::parse(it.key()));
        if (idx) probs[*idx] = it.value().get<double>();
      }
      data.histories[n] = {std::move(probs), rec.at("count").get<std::uint64_t>()};
    }

    std::vector<GroupElement> r, t;
    for (const auto& cj : j.at("classification").at("R")) {
      r.push_back(GroupElement(cj.get<std::vector<std::int32_t>>()));
    }
    for (const auto& cj : j.at("classification").at("T")) {
      t.push_back(GroupElement(cj.get<std::vector<std::int32_t>>()));
    }
    data.classification.r = JumpSet(std::move(r));
    data.classification.t = JumpSet(std::move(t));
    for (auto it = j.at("classification").at("evidence").begin();
         it != j.at("classification").at("evidence").end(); ++it) {
      data.classification.evidence[GroupElement::parse(it.key())] =
          it.value().get<std::uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError("report " + path.string() + " has unexpected shape: " + e.what());
  }
  return data;
}

VOracle report_v_oracle(const ReportData& report, std::uint64_t min_count) {
  const ReportData* r = &report;
  return [r, min_count](const MultiIndex& n) -> std::optional<std::vector<double>> {
    auto it = r->histories.find(n);
    if (it == r->histories.end() || it->second.second < min_count) return std::nullopt;
    return it->second.first;
  };
}

std::string moment_table_csv(const MomentTable& table) {
  std::string out = "multi_index,value\n";
  for (const auto& [n, value] : table.entries()) {
    out += '"' + n.to_string() + "\"," + csv_number(value) + '\n';
  }
  return out;
}

std::string cdf_grid_csv(const CdfGrid& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.variables.size(); ++i) {
    out += "a_" + std::to_string(i + 1) + ",";
  }
  out += "cdf\n";
  for (const auto& [point, value] : grid.values) {
    for (double c : point) out += csv_number(c) + ",";
    out += csv_number(value) + '\n';
  }
  return out;
}

}  // namespace rwre
