#include "itf/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include "itf/constructions.hpp"
#include "itf/exhaustive.hpp"

namespace itf {
namespace {

struct TrialResult {
  bool success = false;
  int stages_before_fallback = 0;
  double wall_ms = 0;
};

int leading_clean_stages(const std::vector<StageReport>& reports) {
  int count = 0;
  for (const auto& report : reports) {
    if (report.fallback_used) break;
    ++count;
  }
  return count;
}

TrialResult run_trial(const SweepConfig& config, int k, int n, std::uint64_t trial_seed) {
  Rng rng(trial_seed);
  const SparsePartiteGraph g = random_knd1(k, n, rng);
  const auto start = std::chrono::steady_clock::now();
  TrialResult result;
  switch (config.algorithm) {
    case Algorithm::Greedy: {
      const auto outcome = greedy_hall_factor(g);
      if (const auto* failure = std::get_if<GreedyFailure>(&outcome)) {
        result.stages_before_fallback = failure->t - 1;
      } else {
        result.success = is_factor(g, std::get<PartialFactor>(outcome));
        result.stages_before_fallback = k - 1;
      }
      break;
    }
    case Algorithm::Semirandom: {
      SolverParams params = config.params;
      params.seed = derive_seed(trial_seed, 1);
      const auto outcome = semirandom_factor(g, params);
      if (const auto* success = std::get_if<SemirandomSuccess>(&outcome)) {
        result.success = is_factor(g, success->factor);
        result.stages_before_fallback = k - 1;
      } else {
        result.stages_before_fallback = leading_clean_stages(std::get<SolverFailure>(outcome).reports);
      }
      break;
    }
    case Algorithm::Brute: {
      const auto factor = brute_force_factor(g);
      result.success = factor && is_factor(g, *factor);
      result.stages_before_fallback = result.success ? k - 1 : 0;
      break;
    }
  }
  result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string format_number(double value) {
  std::ostringstream out;
  out << std::setprecision(10) << value;
  return out.str();
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "greedy") return Algorithm::Greedy;
  if (name == "semirandom") return Algorithm::Semirandom;
  if (name == "brute") return Algorithm::Brute;
  throw InvalidArgument("unknown algorithm '" + std::string(name) + "'");
}

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Greedy: return "greedy";
    case Algorithm::Semirandom: return "semirandom";
    case Algorithm::Brute: return "brute";
  }
  return "unknown";
}

int parts_for_ratio(double ratio, int n) {
  return std::max(2, static_cast<int>(std::ceil(ratio * n - 1e-9)));
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  if (config.trials < 1) throw InvalidArgument("sweep needs at least one trial");
  if (config.algorithm == Algorithm::Semirandom) config.params.validate();

  struct Job {
    std::size_t row;
    int k;
    int n;
    std::uint64_t seed;
  };
  std::vector<SweepRow> rows;
  std::vector<Job> jobs;
  for (std::size_t r = 0; r < config.ratios.size(); ++r) {
    for (std::size_t s = 0; s < config.sizes.size(); ++s) {
      const int n = config.sizes[s];
      if (n < 1) throw InvalidArgument("part size must be positive");
      SweepRow row;
      row.ratio = config.ratios[r];
      row.n = n;
      row.k = parts_for_ratio(config.ratios[r], n);
      row.trials = config.trials;
      for (int trial = 0; trial < config.trials; ++trial) {
        const std::uint64_t key = (static_cast<std::uint64_t>(r) << 40) ^ (static_cast<std::uint64_t>(s) << 20) ^
                                  static_cast<std::uint64_t>(trial);
        jobs.push_back({rows.size(), row.k, n, derive_seed(config.seed, key)});
      }
      rows.push_back(row);
    }
  }

  std::vector<TrialResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      results[i] = run_trial(config, jobs[i].k, jobs[i].n, jobs[i].seed);
    }
  };
  if (config.threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < config.threads; ++w) pool.emplace_back(work);
  }

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    SweepRow& row = rows[jobs[i].row];
    row.successes += results[i].success ? 1 : 0;
    row.mean_stages_before_fallback += results[i].stages_before_fallback;
    row.mean_wall_ms += results[i].wall_ms;
  }
  for (auto& row : rows) {
    row.mean_stages_before_fallback /= row.trials;
    row.mean_wall_ms /= row.trials;
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, Algorithm algorithm, bool include_timing) {
  std::ostringstream out;
  out << "ratio,n,k,algorithm,trials,successes,success_rate,mean_stages_before_fallback,mean_wall_ms\n";
  for (const auto& row : rows) {
    out << format_number(row.ratio) << ',' << row.n << ',' << row.k << ',' << to_string(algorithm) << ','
        << row.trials << ',' << row.successes << ',' << format_number(row.success_rate()) << ','
        << format_number(row.mean_stages_before_fallback) << ','
        << (include_timing ? format_number(row.mean_wall_ms) : std::string()) << '\n';
  }
  return out.str();
}

OrderedJson sweep_json(const std::vector<SweepRow>& rows, Algorithm algorithm, bool include_timing) {
  OrderedJson doc = OrderedJson::array();
  for (const auto& row : rows) {
    OrderedJson entry;
    entry["ratio"] = row.ratio;
    entry["n"] = row.n;
    entry["k"] = row.k;
    entry["algorithm"] = to_string(algorithm);
    entry["trials"] = row.trials;
    entry["successes"] = row.successes;
    entry["success_rate"] = row.success_rate();
    entry["mean_stages_before_fallback"] = row.mean_stages_before_fallback;
    entry["mean_wall_ms"] = include_timing ? OrderedJson(row.mean_wall_ms) : OrderedJson(nullptr);
    doc.push_back(std::move(entry));
  }
  return doc;
}

}  // namespace itf
