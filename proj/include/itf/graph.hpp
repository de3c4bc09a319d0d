#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <utility>
#include <vector>

#include "itf/errors.hpp"

namespace itf {

/// A k-partite graph with parts of size n in which every pair of parts
/// induces a (possibly partial) matching. Vertices are addressed as
/// (part, index), both 0-based.
class SparsePartiteGraph {
 public:
  static constexpr int kNone = -1;

  /// Edgeless graph. Throws InvalidArgument unless k >= 2 and n >= 1.
  SparsePartiteGraph(int k, int n);

  int parts() const { return k_; }
  int part_size() const { return n_; }

  /// Index of the unique neighbour of (i, a) in part j, or kNone.
  int neighbor(int i, int a, int j) const {
    return mate_[slot(i, j, a)];
  }
  bool adjacent(int i, int a, int j, int b) const {
    return i != j && neighbor(i, a, j) == b;
  }

  /// Adds the edge (i, a)-(j, b). Re-adding an existing edge is a no-op.
  /// Throws MatchingViolation if either endpoint already has another
  /// neighbour in the other part.
  void add_edge(int i, int a, int j, int b);

  std::size_t edge_count(int i, int j) const;
  std::size_t edge_count() const;
  /// Number of edges with one endpoint in `part`.
  std::size_t incident_edges(int part) const;

  /// Edges of the pair (i, j) as (index in i, index in j), sorted by the
  /// index in i.
  std::vector<std::pair<int, int>> pair_edges(int i, int j) const;

  /// Checks index ranges and the per-pair matching property in both
  /// directions. Throws MatchingViolation or InvariantViolation.
  void validate() const;

  friend bool operator==(const SparsePartiteGraph&, const SparsePartiteGraph&) = default;
  friend SparsePartiteGraph induced_prefix(const SparsePartiteGraph& g, int t);

 private:
  struct SinglePartTag {};
  SparsePartiteGraph(int k, int n, SinglePartTag);

  std::size_t slot(int i, int j, int a) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(k_) +
            static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(a);
  }
  void check_vertex(int part, int index) const;

  int k_;
  int n_;
  std::vector<int> mate_;  // k*k*n, diagonal blocks unused
};

/// Subgraph induced by parts 0..t-1, 1 <= t <= k. For t = 1 this is the
/// single-part edgeless graph, the only way to obtain k = 1.
SparsePartiteGraph induced_prefix(const SparsePartiteGraph& g, int t);

/// Renames vertices: vertex a of part p becomes labels[p][a].
SparsePartiteGraph relabel(const SparsePartiteGraph& g,
                           const std::vector<std::vector<int>>& labels);

/// n rows of transversals over the first t parts, stored as an n x t index
/// matrix: entry (j, l) is the vertex of part l in row j.
class PartialFactor {
 public:
  using Matrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

  /// Validates that every column is a permutation of 0..n-1.
  explicit PartialFactor(Matrix rows);

  /// F_1: row j is the single vertex j of part 0.
  static PartialFactor trivial(int n);

  int rows() const { return static_cast<int>(rows_.rows()); }
  int parts() const { return static_cast<int>(rows_.cols()); }
  const Matrix& matrix() const { return rows_; }
  auto row(int j) const { return rows_.row(j); }
  int at(int j, int part) const { return rows_(j, part); }

  /// Appends a column; column(j) is the vertex of the next part for row j.
  /// Must be a permutation.
  PartialFactor extended(const Eigen::VectorXi& column) const;

  friend bool operator==(const PartialFactor& a, const PartialFactor& b) {
    return a.rows_ == b.rows_;
  }

 private:
  Matrix rows_;
};

/// True iff every column is a permutation of 0..rows-1.
bool columns_are_permutations(const PartialFactor::Matrix& rows);
/// True iff no two rows share a vertex of any part (the same property,
/// checked row-pairwise).
bool rows_pairwise_disjoint(const PartialFactor::Matrix& rows);

/// picks(l) is the chosen vertex of part l for l < picks.size().
/// True iff no two picks are adjacent.
template <typename Derived>
bool is_independent_transversal(const SparsePartiteGraph& g,
                                const Eigen::DenseBase<Derived>& picks) {
  const auto t = static_cast<int>(picks.size());
  if (t > g.parts()) throw InvalidArgument("transversal longer than part count");
  for (int i = 0; i < t; ++i) {
    const int a = picks(i);
    if (a < 0 || a >= g.part_size()) throw InvalidArgument("transversal index out of range");
  }
  for (int i = 0; i < t; ++i) {
    for (int j = i + 1; j < t; ++j) {
      if (g.neighbor(i, picks(i), j) == picks(j)) return false;
    }
  }
  return true;
}

/// Number of rows of `f` that are independent in g.
int independent_row_count(const SparsePartiteGraph& g, const PartialFactor& f);

/// True iff `f` covers all k parts and every row is an independent
/// transversal of g.
bool is_factor(const SparsePartiteGraph& g, const PartialFactor& f);

}  // namespace itf
