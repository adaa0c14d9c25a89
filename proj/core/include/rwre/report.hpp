#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "rwre/estimator.hpp"
#include "rwre/reconstruction.hpp"

namespace rwre {

/// Estimator report: per-history V-hat records with counts and standard
/// errors, the empirical R/T classification, and the recurrence diagnostic.
/// Histories are emitted in history order so reruns are byte-identical.
nlohmann::ordered_json build_estimator_report(
    const EstimatorState& state, const EmpiricalClassification& classification,
    const RecurrenceReport& recurrence, std::uint64_t min_count,
    const std::map<std::string, std::uint64_t>* successions = nullptr);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);

/// Enough of a report to rebuild moments without the trajectory.
struct ReportData {
  JumpSet jumps;
  std::map<MultiIndex, std::pair<std::vector<double>, std::uint64_t>, HistoryOrderLess> histories;
  EmpiricalClassification classification;
};

ReportData read_estimator_report(const std::filesystem::path& path);

/// V oracle backed by a report's recorded estimates.
VOracle report_v_oracle(const ReportData& report, std::uint64_t min_count);

/// CSV emitters ("multi_index,value" and "a_1,...,a_l,cdf").
std::string moment_table_csv(const MomentTable& table);
std::string cdf_grid_csv(const CdfGrid& grid);

}  // namespace rwre
