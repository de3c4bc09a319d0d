#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "itf/graph.hpp"
#include "itf/matching.hpp"
#include "itf/rng.hpp"

namespace itf {

/// Constants of the semi-random staged solver.
///
/// c is the slope of the retained-pair count s_t = floor(c t + eta n);
/// delta is the goodness tolerance |m_t - (n - t)| <= delta n; epsilon is
/// the headroom in the intended regime k <= n (1 - epsilon) / (1 + c).
struct SolverParams {
  double c = 0.778;
  double delta = 0.02;
  double eta = 0.10;
  double epsilon = 0.05;
  /// Extra whole-run attempts after the first, each on a fresh stream.
  int restarts = 20;
  std::uint64_t seed = 0;
  /// Use the greedy Hall solver when n >= 2k - 2.
  bool greedy_shortcut = false;
  /// Keep running stages after the first fallback. The attempt is failed
  /// either way; this only affects the reports.
  bool complete_failed_attempts = false;

  /// Throws InvalidArgument: needs 0 < c <= 1 with 2c^2 ln((1+c)/c) >= 1,
  /// 0 < delta < eta, epsilon > 0, restarts >= 0.
  void validate() const;

  /// Largest k with k (1 + c) <= n (1 - epsilon).
  int intended_max_parts(int n) const;
};

struct StageReport {
  int t = 0;  // number of parts covered before the stage
  int m_t = 0;
  bool good = false;
  int s_t = 0;
  bool reshuffle_success = false;
  bool fallback_used = false;
  /// Good stage with m_t < s_t; the reshuffle could not run.
  bool insufficient_matching = false;
  /// Side size of the leftover graph, 0 when no reshuffle ran.
  int leftover_size = 0;
};

/// B_t: row j of f is joined to vertex v of part t = f.parts() when no
/// vertex of the row is a neighbour of v. Checks the n - t minimum degree
/// on both sides (InvariantViolation otherwise).
BipartiteAdjacency build_auxiliary(const SparsePartiteGraph& g, const PartialFactor& f);

/// Appends part f.parts() using a perfect matching of B_t (or any pairing).
PartialFactor extend_with(const PartialFactor& f, const PairAssignment& pairing);

struct GreedyFailure {
  int t = 0;  // parts covered when Hall failed
  HallWitness witness;
  PartialFactor partial;
};

using GreedyResult = std::variant<PartialFactor, GreedyFailure>;

/// Repeated perfect matchings of B_t from the trivial F_1.
GreedyResult greedy_hall_factor(const SparsePartiteGraph& g);
/// Same, continuing from a given partial factor.
GreedyResult greedy_hall_extend(const SparsePartiteGraph& g, PartialFactor start);

enum class OnInsufficientMatching { Throw, Fallback };

struct StageOutcome {
  PartialFactor next;
  StageReport report;
};

/// One stage: trim B_t to left degree n - t, pair through a random
/// permutation, test goodness, reshuffle with s_t = floor(c t + eta n), and
/// extend by the resulting perfect matching or, failing that, by the raw
/// permutation.
StageOutcome semirandom_stage(const SparsePartiteGraph& g, const PartialFactor& f,
                              const SolverParams& params, Rng& rng,
                              OnInsufficientMatching policy = OnInsufficientMatching::Throw);

struct SemirandomSuccess {
  PartialFactor factor;
  std::vector<StageReport> reports;
  int attempts = 0;
  bool used_greedy = false;
};

struct SolverFailure {
  std::vector<StageReport> reports;  // last attempt
  int attempts = 0;
};

using SemirandomResult = std::variant<SemirandomSuccess, SolverFailure>;

/// Runs stages 1..k-1; an attempt with any fallback stage is discarded and
/// retried with a seed derived from (params.seed, attempt).
SemirandomResult semirandom_factor(const SparsePartiteGraph& g, const SolverParams& params);

/// floor(c t) and n - floor(eta n / 7).
struct SuccessConditionSizes {
  int w_size;
  int threshold;
};
SuccessConditionSizes success_condition_sizes(int n, int t, double c, double eta);

inline constexpr int kExactConditionMaxSide = 20;

/// Every right set W with |W| = w_size has |N(W)| >= threshold, by full
/// enumeration. Throws ExactModeTooLarge above kExactConditionMaxSide.
bool check_success_condition_exact(const BipartiteAdjacency& b, int w_size, int threshold);

/// The same condition on `samples` uniformly random W; false as soon as a
/// violating set is drawn.
bool check_success_condition_sampled(const BipartiteAdjacency& b, int w_size, int threshold,
                                     int samples, Rng& rng);

}  // namespace itf
