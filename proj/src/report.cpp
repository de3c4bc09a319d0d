#include "itf/report.hpp"

namespace itf {

OrderedJson to_json(const SolverParams& params) {
  OrderedJson doc;
  doc["c"] = params.c;
  doc["delta"] = params.delta;
  doc["eta"] = params.eta;
  doc["epsilon"] = params.epsilon;
  doc["restarts"] = params.restarts;
  doc["greedy_shortcut"] = params.greedy_shortcut;
  return doc;
}

OrderedJson to_json(const StageReport& report) {
  OrderedJson doc;
  doc["t"] = report.t;
  doc["m_t"] = report.m_t;
  doc["good"] = report.good;
  doc["s_t"] = report.s_t;
  doc["reshuffle_success"] = report.reshuffle_success;
  doc["fallback_used"] = report.fallback_used;
  doc["insufficient_matching"] = report.insufficient_matching;
  doc["leftover_size"] = report.leftover_size;
  return doc;
}

OrderedJson to_json(const PartialFactor& factor) {
  OrderedJson rows = OrderedJson::array();
  for (int j = 0; j < factor.rows(); ++j) {
    OrderedJson row = OrderedJson::array();
    for (int part = 0; part < factor.parts(); ++part) row.push_back(factor.at(j, part));
    rows.push_back(std::move(row));
  }
  return rows;
}

OrderedJson to_json(const SolveRecord& record) {
  OrderedJson doc;
  doc["status"] = record.status;
  doc["algorithm"] = record.algorithm;
  doc["factor"] = record.factor ? to_json(*record.factor) : OrderedJson(nullptr);
  doc["stage_reports"] = OrderedJson::array();
  for (const auto& report : record.stage_reports) doc["stage_reports"].push_back(to_json(report));
  doc["params"] = record.params ? to_json(*record.params) : OrderedJson(nullptr);
  doc["seed"] = record.seed;
  doc["attempts"] = record.attempts;
  doc["wall_time_ms"] = record.wall_time_ms ? OrderedJson(*record.wall_time_ms) : OrderedJson(nullptr);
  if (record.failed_stage) {
    doc["failed_stage"] = *record.failed_stage;
    doc["hall_witness"] = record.hall_witness;
    doc["hall_neighbors"] = record.hall_neighbors;
  }
  return doc;
}

OrderedJson to_json(const VerificationReport& report, bool include_timing) {
  OrderedJson doc;
  doc["instances"] = report.checked;
  doc["failures"] = report.failures.size();
  doc["failed_instances"] = report.failures;
  doc["wall_time_ms"] = include_timing ? OrderedJson(report.wall_ms) : OrderedJson(nullptr);
  return doc;
}

}  // namespace itf
