#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "itf/algorithms.hpp"
#include "itf/report.hpp"

namespace itf {

enum class Algorithm { Greedy, Semirandom, Brute };

/// "greedy", "semirandom" or "brute"; InvalidArgument otherwise.
Algorithm parse_algorithm(std::string_view name);
std::string to_string(Algorithm algorithm);

struct SweepConfig {
  std::vector<double> ratios;  // k / n
  std::vector<int> sizes;      // n
  int trials = 1;
  Algorithm algorithm = Algorithm::Semirandom;
  SolverParams params;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct SweepRow {
  double ratio = 0;
  int n = 0;
  int k = 0;
  int trials = 0;
  int successes = 0;
  /// Stages completed before the first failing stage, averaged; k - 1 for
  /// successful trials.
  double mean_stages_before_fallback = 0;
  double mean_wall_ms = 0;
  double success_rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

/// k = max(2, ceil(ratio n)).
int parts_for_ratio(double ratio, int n);

/// One row per (ratio, n), in input order. Trial instances and solver
/// seeds derive from config.seed only, so results do not depend on the
/// thread count. Every reported success has passed is_factor.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

std::string sweep_csv(const std::vector<SweepRow>& rows, Algorithm algorithm, bool include_timing);
OrderedJson sweep_json(const std::vector<SweepRow>& rows, Algorithm algorithm, bool include_timing);

}  // namespace itf
