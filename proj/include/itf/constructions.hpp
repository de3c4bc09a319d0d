#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "itf/graph.hpp"
#include "itf/matching.hpp"
#include "itf/rng.hpp"

namespace itf {

/// q x q array whose rows and columns are permutations of 0..q-1.
struct LatinSquare {
  Eigen::MatrixXi cells;
  int order() const { return static_cast<int>(cells.rows()); }
};

/// L(a, b) = (a + b) mod q.
LatinSquare cyclic_latin_square(int q);
bool is_latin(const Eigen::MatrixXi& cells);

/// [k, k-1, 1]-graph whose only edges join index 0 of every pair of parts.
/// Has no factor.
SparsePartiteGraph first_column_clique(int k);

/// [k, k, 1]-graph: index t joined to index t across parts for t < k-2, and
/// the last two indices joined crosswise. No factor when k is odd.
/// Throws InvalidArgument for k < 3.
SparsePartiteGraph catlin(int k);

/// Warning text for Catlin parameters that do not give an obstruction.
std::optional<std::string> catlin_warning(int k);

/// Final greedy stage on n = 2k-3 vertices per side where Hall fails.
struct LatinTrap {
  BipartiteAdjacency adjacency;
  /// V*: the k-1 right vertices whose neighbourhood has only k-2 rows.
  std::vector<int> witness;
};

/// Rows 0..k-2 (F*) each see, through the Latin square, a G-neighbour in
/// every vertex of V* = right 0..k-2, so they are joined only to the k-2
/// right vertices outside V*. All other pairs are edges.
LatinTrap latin_greedy_trap(int k);

/// Full [k, 2k-3, 1]-graph and pinned (k-1)-partial factor whose final
/// auxiliary graph is the trap above. Parts 0..k-2 carry no edges among
/// themselves and the partial factor is row j = (j, ..., j).
struct TrapInstance {
  SparsePartiteGraph graph;
  PartialFactor forced;
};
TrapInstance latin_trap_instance(int k, const std::optional<LatinSquare>& square = std::nullopt);

/// Every pair of parts joined by an independent uniform random perfect
/// matching, pairs drawn in lexicographic order.
SparsePartiteGraph random_knd1(int k, int n, Rng& rng);

}  // namespace itf
