#pragma once

#include <Eigen/Core>

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "itf/rng.hpp"

namespace itf {

/// Square bipartite graph: entry (r, c) is the edge between left vertex r
/// and right vertex c.
using BipartiteAdjacency = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Left vertex i is paired with right vertex pairs(i) (kUnpaired if none).
/// edge_flags(i) marks pairs that are edges of the adjacency they were
/// built against. For matchings every pair is an edge.
struct PairAssignment {
  static constexpr int kUnpaired = -1;

  Eigen::VectorXi pairs;
  Eigen::Array<bool, Eigen::Dynamic, 1> edge_flags;

  int size() const { return static_cast<int>(pairs.size()); }
  /// Number of flagged pairs (m_t for a permutation pairing).
  int flagged() const { return static_cast<int>(edge_flags.count()); }

  friend bool operator==(const PairAssignment& a, const PairAssignment& b) {
    return a.pairs == b.pairs && (a.edge_flags == b.edge_flags).all();
  }
};

/// Right-side set W with |N(W)| < |W|; `neighbors` is N(W), sorted.
struct HallWitness {
  std::vector<int> right;
  std::vector<int> neighbors;
};

using MatchingOrWitness = std::variant<PairAssignment, HallWitness>;

enum class PairSelection {
  Random,
  /// Draws the lowest-indexed flagged pairs into the leftover graph. Only
  /// for tests that need a fixed leftover graph.
  FirstFlaggedForTesting,
};

struct ReshuffleOutcome {
  bool success = false;
  /// Vertices of the leftover graph B*, ascending.
  std::vector<int> leftover_left;
  std::vector<int> leftover_right;
  /// Flagged pairs left out of B*, as (left, right).
  std::vector<std::pair<int, int>> kept_pairs;
  /// Size of the maximum matching found inside B*.
  int leftover_matching_size = 0;
  /// Perfect matching of the input adjacency; meaningful only on success.
  PairAssignment final_matching;
};

/// Throws InvalidArgument unless b is square.
void require_square(const BipartiteAdjacency& b);

/// Left vertices adjacent to at least one vertex of `right`, ascending.
std::vector<int> neighborhood(const BipartiteAdjacency& b, std::span<const int> right);

/// True iff pairs form a permutation and every pair is an edge of b.
bool is_perfect_matching(const BipartiteAdjacency& b, const PairAssignment& m);

/// Paired right vertices are distinct and in range; flags agree with b.
bool is_consistent_assignment(const BipartiteAdjacency& b, const PairAssignment& m);

/// Maximum-cardinality matching (Hopcroft-Karp). Deterministic.
PairAssignment max_matching(const BipartiteAdjacency& b);

/// A perfect matching if one exists; otherwise a deficient right-side set
/// grown by alternating search from the lowest unmatched right vertex.
MatchingOrWitness perfect_matching_or_witness(const BipartiteAdjacency& b);

/// Pairs left i with right perm(i) for a uniform random permutation and
/// flags the pairs that are edges of b.
PairAssignment random_pairing(const BipartiteAdjacency& b, Rng& rng);

/// Flags for an explicit pairing.
PairAssignment pairing_from_permutation(const BipartiteAdjacency& b, const Eigen::VectorXi& perm);

/// Removes uniformly chosen surplus edges from each row until every left
/// vertex has degree exactly `degree`. Throws DegreeDeficit if a row has
/// fewer.
BipartiteAdjacency trim_to_exact_degree(const BipartiteAdjacency& b, int degree, Rng& rng);

/// The (B, M, s)-reshuffle: the flagged pairs of `m` are the matching;
/// `retained` of them are drawn into the leftover graph together with every
/// vertex they do not cover, and the leftover graph is matched maximally.
/// Throws InsufficientMatching if fewer than `retained` pairs are flagged.
ReshuffleOutcome reshuffle(const BipartiteAdjacency& b, const PairAssignment& m, int retained,
                           Rng& rng, PairSelection selection = PairSelection::Random);

/// Debug dump in the instance pair syntax, as the pair (0, 1).
std::string dump_adjacency(const BipartiteAdjacency& b);

}  // namespace itf
