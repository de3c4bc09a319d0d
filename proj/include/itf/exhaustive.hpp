#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "itf/graph.hpp"

namespace itf {

using Permutation4 = std::array<int, 4>;

/// The 24 permutations of {0, 1, 2, 3} in lexicographic order.
const std::array<Permutation4, 24>& permutations4();

inline constexpr std::size_t kF4InstanceCount = 24 * 24 * 24;

/// Instance `index` of the [4,4,1] family: parts 0-1, 0-2, 0-3 joined by
/// the identity, and pairs (1,2), (1,3), (2,3) by permutations number
/// index / 576, (index / 24) % 24 and index % 24. Vertex a of the lower
/// part meets vertex perm[a] of the higher one.
SparsePartiteGraph f4_instance(std::size_t index);

/// Calls visit(index, graph) for every instance in order.
void for_each_f4_instance(const std::function<void(std::size_t, const SparsePartiteGraph&)>& visit);

/// Searches rows {j, pi_1(j), pi_2(j), pi_3(j)} over all 24^3 permutation
/// triples. Requires a [4,4,1]-graph.
std::optional<PartialFactor> find_factor_by_permutation_triples(const SparsePartiteGraph& g);
bool has_factor_by_permutation_triples(const SparsePartiteGraph& g);

struct BruteForceOptions {
  int max_n = 6;
  int max_k = 6;
  /// Wall-clock limit; none by default.
  std::optional<std::chrono::milliseconds> time_budget;
  /// Limit on search nodes; none by default.
  std::optional<std::uint64_t> node_budget;
};

/// Exhaustive backtracking: parts are taken in decreasing order of incident
/// edges, the first one fixes the rows, and each later part is placed row by
/// row among vertices not adjacent to anything already in the row.
/// Throws InvalidArgument above the size cap and BudgetExceeded when a
/// budget runs out.
std::optional<PartialFactor> brute_force_factor(const SparsePartiteGraph& g,
                                                const BruteForceOptions& options = {});

struct VerifyOptions {
  std::size_t limit = kF4InstanceCount;
  unsigned threads = 1;
  /// Relabel each instance's vertices at random (seeded per instance)
  /// before checking.
  std::optional<std::uint64_t> relabel_seed;
};

struct VerificationReport {
  std::size_t checked = 0;
  std::vector<std::size_t> failures;
  double wall_ms = 0.0;
};

VerificationReport verify_f4(const VerifyOptions& options = {});

/// The relabeled copy of instance `index` that verify_f4 checks under
/// `relabel_seed`.
SparsePartiteGraph relabeled_f4_instance(std::size_t index, std::uint64_t relabel_seed);

}  // namespace itf
