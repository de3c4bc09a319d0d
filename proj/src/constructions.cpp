#include "itf/constructions.hpp"

#include <string>

namespace itf {

LatinSquare cyclic_latin_square(int q) {
  if (q < 1) throw InvalidArgument("Latin square order must be positive");
  LatinSquare square{Eigen::MatrixXi(q, q)};
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) square.cells(a, b) = (a + b) % q;
  return square;
}

bool is_latin(const Eigen::MatrixXi& cells) {
  if (cells.rows() != cells.cols()) return false;
  const auto q = cells.rows();
  for (Eigen::Index line = 0; line < q; ++line) {
    std::vector<char> in_row(static_cast<std::size_t>(q), 0);
    std::vector<char> in_col(static_cast<std::size_t>(q), 0);
    for (Eigen::Index i = 0; i < q; ++i) {
      const int r = cells(line, i);
      const int c = cells(i, line);
      if (r < 0 || r >= q || c < 0 || c >= q) return false;
      if (in_row[static_cast<std::size_t>(r)] || in_col[static_cast<std::size_t>(c)]) return false;
      in_row[static_cast<std::size_t>(r)] = 1;
      in_col[static_cast<std::size_t>(c)] = 1;
    }
  }
  return true;
}

SparsePartiteGraph first_column_clique(int k) {
  if (k < 2) throw InvalidArgument("first-column clique needs k >= 2");
  SparsePartiteGraph g(k, k - 1);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) g.add_edge(i, 0, j, 0);
  return g;
}

SparsePartiteGraph catlin(int k) {
  if (k < 3) throw InvalidArgument("Catlin construction needs k >= 3");
  SparsePartiteGraph g(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      for (int t = 0; t < k - 2; ++t) g.add_edge(i, t, j, t);
      g.add_edge(i, k - 2, j, k - 1);
      g.add_edge(i, k - 1, j, k - 2);
    }
  }
  return g;
}

std::optional<std::string> catlin_warning(int k) {
  if (k >= 3 && k % 2 == 0) {
    return "Catlin construction with even k=" + std::to_string(k) +
           " is not an obstruction and may admit a factor";
  }
  return std::nullopt;
}

LatinTrap latin_greedy_trap(int k) {
  if (k < 3) throw InvalidArgument("greedy trap needs k >= 3");
  const int n = 2 * k - 3;
  const int q = k - 1;
  LatinTrap trap{BipartiteAdjacency::Constant(n, n, true), {}};
  trap.adjacency.topLeftCorner(q, q).setConstant(false);
  for (int b = 0; b < q; ++b) trap.witness.push_back(b);
  return trap;
}

TrapInstance latin_trap_instance(int k, const std::optional<LatinSquare>& square) {
  if (k < 3) throw InvalidArgument("greedy trap needs k >= 3");
  const int n = 2 * k - 3;
  const int q = k - 1;
  const LatinSquare latin = square ? *square : cyclic_latin_square(q);
  if (latin.order() != q || !is_latin(latin.cells)) {
    throw InvalidArgument("trap needs a Latin square of order k-1");
  }
  SparsePartiteGraph g(k, n);
  const int last = k - 1;
  // Right vertex b meets row j (vertex j of every part) in part L(j, b).
  for (int j = 0; j < q; ++j)
    for (int b = 0; b < q; ++b) g.add_edge(latin.cells(j, b), j, last, b);
  PartialFactor::Matrix rows(n, q);
  for (int j = 0; j < n; ++j) rows.row(j).setConstant(j);
  return {std::move(g), PartialFactor(std::move(rows))};
}

SparsePartiteGraph random_knd1(int k, int n, Rng& rng) {
  SparsePartiteGraph g(k, n);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const auto perm = random_permutation(n, rng);
      for (int a = 0; a < n; ++a) g.add_edge(i, a, j, perm[static_cast<std::size_t>(a)]);
    }
  }
  return g;
}

}  // namespace itf
