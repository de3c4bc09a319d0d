#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "itf/algorithms.hpp"
#include "itf/exhaustive.hpp"
#include "itf/graph.hpp"

namespace itf {

using OrderedJson = nlohmann::ordered_json;

OrderedJson to_json(const SolverParams& params);
OrderedJson to_json(const StageReport& report);
/// n x k index matrix, one array per row.
OrderedJson to_json(const PartialFactor& factor);

/// Result document of a solve. wall_time_ms is null unless given, so the
/// document is reproducible byte for byte.
struct SolveRecord {
  std::string algorithm;
  std::string status;  // "success", "failure" or "no-factor-exists"
  std::optional<PartialFactor> factor;
  std::vector<StageReport> stage_reports;
  std::optional<SolverParams> params;
  std::uint64_t seed = 0;
  int attempts = 0;
  std::optional<double> wall_time_ms;
  /// Set for greedy failures.
  std::optional<int> failed_stage;
  std::vector<int> hall_witness;
  std::vector<int> hall_neighbors;
};

OrderedJson to_json(const SolveRecord& record);

OrderedJson to_json(const VerificationReport& report, bool include_timing);

}  // namespace itf
