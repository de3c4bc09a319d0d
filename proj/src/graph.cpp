#include "itf/graph.hpp"

#include <string>

namespace itf {

SparsePartiteGraph::SparsePartiteGraph(int k, int n) : k_(k), n_(n) {
  if (k < 2) throw InvalidArgument("part count k must be at least 2, got " + std::to_string(k));
  if (n < 1) throw InvalidArgument("part size n must be at least 1, got " + std::to_string(n));
  mate_.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(k) * static_cast<std::size_t>(n),
               kNone);
}

SparsePartiteGraph::SparsePartiteGraph(int k, int n, SinglePartTag) : k_(k), n_(n) {
  mate_.assign(static_cast<std::size_t>(n), kNone);
}

void SparsePartiteGraph::check_vertex(int part, int index) const {
  if (part < 0 || part >= k_) throw InvalidArgument("part " + std::to_string(part) + " out of range");
  if (index < 0 || index >= n_) {
    throw InvalidArgument("vertex index " + std::to_string(index) + " out of range");
  }
}

void SparsePartiteGraph::add_edge(int i, int a, int j, int b) {
  check_vertex(i, a);
  check_vertex(j, b);
  if (i == j) throw InvalidArgument("edge endpoints must lie in different parts");
  int& forward = mate_[slot(i, j, a)];
  int& backward = mate_[slot(j, i, b)];
  if (forward == b && backward == a) return;
  if (forward != kNone) {
    throw MatchingViolation("vertex " + std::to_string(a) + " of part " + std::to_string(i) +
                            " already has neighbour " + std::to_string(forward) + " in part " +
                            std::to_string(j));
  }
  if (backward != kNone) {
    throw MatchingViolation("vertex " + std::to_string(b) + " of part " + std::to_string(j) +
                            " already has neighbour " + std::to_string(backward) + " in part " +
                            std::to_string(i));
  }
  forward = b;
  backward = a;
}

std::size_t SparsePartiteGraph::edge_count(int i, int j) const {
  std::size_t count = 0;
  if (i == j) return 0;
  for (int a = 0; a < n_; ++a) count += neighbor(i, a, j) != kNone ? 1 : 0;
  return count;
}

std::size_t SparsePartiteGraph::edge_count() const {
  std::size_t total = 0;
  for (int i = 0; i < k_; ++i)
    for (int j = i + 1; j < k_; ++j) total += edge_count(i, j);
  return total;
}

std::size_t SparsePartiteGraph::incident_edges(int part) const {
  std::size_t total = 0;
  for (int j = 0; j < k_; ++j) total += edge_count(part, j);
  return total;
}

std::vector<std::pair<int, int>> SparsePartiteGraph::pair_edges(int i, int j) const {
  std::vector<std::pair<int, int>> edges;
  if (i == j) return edges;
  for (int a = 0; a < n_; ++a) {
    const int b = neighbor(i, a, j);
    if (b != kNone) edges.emplace_back(a, b);
  }
  return edges;
}

void SparsePartiteGraph::validate() const {
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) {
      if (i == j) continue;
      for (int a = 0; a < n_; ++a) {
        const int b = neighbor(i, a, j);
        if (b == kNone) continue;
        if (b < 0 || b >= n_) throw InvariantViolation("neighbour index out of range");
        if (neighbor(j, b, i) != a) {
          throw MatchingViolation("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") is not a symmetric matching at vertex " + std::to_string(a));
        }
      }
    }
  }
}

SparsePartiteGraph induced_prefix(const SparsePartiteGraph& g, int t) {
  if (t < 1 || t > g.parts()) throw InvalidArgument("prefix length out of range");
  if (t == 1) return SparsePartiteGraph(1, g.part_size(), SparsePartiteGraph::SinglePartTag{});
  SparsePartiteGraph prefix(t, g.part_size());
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j)
      for (const auto& [a, b] : g.pair_edges(i, j)) prefix.add_edge(i, a, j, b);
  return prefix;
}

SparsePartiteGraph relabel(const SparsePartiteGraph& g, const std::vector<std::vector<int>>& labels) {
  if (static_cast<int>(labels.size()) != g.parts()) throw InvalidArgument("one label map per part");
  for (const auto& map : labels) {
    if (static_cast<int>(map.size()) != g.part_size()) throw InvalidArgument("label map size");
  }
  SparsePartiteGraph out(g.parts(), g.part_size());
  for (int i = 0; i < g.parts(); ++i)
    for (int j = i + 1; j < g.parts(); ++j)
      for (const auto& [a, b] : g.pair_edges(i, j))
        out.add_edge(i, labels[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)], j,
                     labels[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)]);
  return out;
}

bool columns_are_permutations(const PartialFactor::Matrix& rows) {
  const auto n = rows.rows();
  std::vector<char> seen(static_cast<std::size_t>(n));
  for (Eigen::Index col = 0; col < rows.cols(); ++col) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Eigen::Index r = 0; r < n; ++r) {
      const int v = rows(r, col);
      if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }
  return true;
}

bool rows_pairwise_disjoint(const PartialFactor::Matrix& rows) {
  const auto n = rows.rows();
  for (Eigen::Index col = 0; col < rows.cols(); ++col) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const int v = rows(r, col);
      if (v < 0 || v >= n) return false;
      for (Eigen::Index s = r + 1; s < n; ++s) {
        if (rows(s, col) == v) return false;
      }
    }
  }
  return true;
}

PartialFactor::PartialFactor(Matrix rows) : rows_(std::move(rows)) {
  if (rows_.rows() < 1 || rows_.cols() < 1) throw InvalidArgument("partial factor must be non-empty");
  if (!columns_are_permutations(rows_)) {
    throw InvalidArgument("partial factor column is not a permutation of the part");
  }
}

PartialFactor PartialFactor::trivial(int n) {
  if (n < 1) throw InvalidArgument("part size must be positive");
  return PartialFactor(Eigen::VectorXi::LinSpaced(n, 0, n - 1));
}

PartialFactor PartialFactor::extended(const Eigen::VectorXi& column) const {
  if (column.size() != rows_.rows()) throw InvalidArgument("column length must equal row count");
  Matrix next(rows_.rows(), rows_.cols() + 1);
  next << rows_, column;
  return PartialFactor(std::move(next));
}

int independent_row_count(const SparsePartiteGraph& g, const PartialFactor& f) {
  int count = 0;
  for (int j = 0; j < f.rows(); ++j) count += is_independent_transversal(g, f.row(j)) ? 1 : 0;
  return count;
}

bool is_factor(const SparsePartiteGraph& g, const PartialFactor& f) {
  if (f.parts() != g.parts() || f.rows() != g.part_size()) return false;
  return independent_row_count(g, f) == f.rows();
}

}  // namespace itf
