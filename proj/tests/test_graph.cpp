#include <doctest.h>

#include <Eigen/Core>

#include "itf/constructions.hpp"
#include "itf/exhaustive.hpp"
#include "itf/graph.hpp"
#include "oracles.hpp"

using namespace itf;

TEST_SUITE("graph") {

TEST_CASE("new graph shapes") {
  SparsePartiteGraph tiny(2, 1);
  CHECK(tiny.parts() == 2);
  CHECK(tiny.part_size() == 1);
  CHECK(tiny.edge_count() == 0);
  CHECK_NOTHROW(tiny.validate());

  SparsePartiteGraph g(4, 4);
  CHECK(g.edge_count() == 0);
  CHECK_NOTHROW(g.validate());

  CHECK_THROWS_AS(SparsePartiteGraph(3, 0), InvalidArgument);
  CHECK_THROWS_AS(SparsePartiteGraph(1, 3), InvalidArgument);
}

TEST_CASE("add_edge keeps each pair a matching") {
  SparsePartiteGraph g(2, 2);
  g.add_edge(0, 0, 1, 0);
  CHECK(g.edge_count() == 1);
  CHECK(g.adjacent(0, 0, 1, 0));
  CHECK(g.adjacent(1, 0, 0, 0));
  CHECK(g.neighbor(1, 0, 0) == 0);

  g.add_edge(1, 0, 0, 0);  // same edge from the other side
  CHECK(g.edge_count() == 1);

  CHECK_THROWS_AS(g.add_edge(0, 0, 1, 1), MatchingViolation);
  CHECK_THROWS_AS(g.add_edge(0, 1, 1, 0), MatchingViolation);
  CHECK(g.edge_count() == 1);

  CHECK_THROWS_AS(g.add_edge(0, 0, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(g.add_edge(0, 2, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(g.add_edge(0, 0, 2, 1), InvalidArgument);
}

TEST_CASE("identity spanning forest from part 0") {
  SparsePartiteGraph g(4, 4);
  for (int j = 1; j < 4; ++j)
    for (int a = 0; a < 4; ++a) CHECK_NOTHROW(g.add_edge(0, a, j, a));
  CHECK(g.edge_count() == 12);
  CHECK(g.incident_edges(0) == 12);
  CHECK(g.incident_edges(1) == 4);
  CHECK_NOTHROW(g.validate());
}

TEST_CASE("pair_edges is sorted by the lower part's index") {
  SparsePartiteGraph g(3, 4);
  g.add_edge(2, 0, 1, 3);
  g.add_edge(1, 0, 2, 2);
  const auto edges = g.pair_edges(1, 2);
  REQUIRE(edges.size() == 2);
  CHECK(edges[0] == std::pair{0, 2});
  CHECK(edges[1] == std::pair{3, 0});
  CHECK(g.edge_count(2, 1) == 2);
}

TEST_CASE("independent transversals") {
  SparsePartiteGraph edgeless(3, 3);
  Eigen::Vector3i picks(2, 0, 1);
  CHECK(is_independent_transversal(edgeless, picks));

  const auto clique = first_column_clique(4);
  CHECK_FALSE(is_independent_transversal(clique, Eigen::Vector4i::Zero()));
  CHECK(is_independent_transversal(clique, Eigen::Vector4i(0, 1, 1, 2)));

  // Catlin(3): index 0 is the identity column, indices 1 and 2 are crossed.
  const auto cat = catlin(3);
  CHECK_FALSE(is_independent_transversal(cat, Eigen::Vector3i(1, 2, 1)));
  CHECK_FALSE(is_independent_transversal(cat, Eigen::Vector3i(0, 0, 1)));
  CHECK(is_independent_transversal(cat, Eigen::Vector3i(1, 1, 0)));

  // Prefix transversals only look at the first t parts.
  CHECK(is_independent_transversal(cat, Eigen::Vector2i(1, 1)));

  CHECK_THROWS_AS(is_independent_transversal(cat, Eigen::Vector3i(0, 3, 0)), InvalidArgument);
  CHECK_THROWS_AS(is_independent_transversal(cat, Eigen::Vector4i::Zero()), InvalidArgument);
}

TEST_CASE("is_factor") {
  SparsePartiteGraph edgeless(3, 3);
  PartialFactor::Matrix diagonal(3, 3);
  diagonal << 0, 0, 0, 1, 1, 1, 2, 2, 2;
  CHECK(is_factor(edgeless, PartialFactor(diagonal)));

  // Too few parts is not a factor.
  CHECK_FALSE(is_factor(edgeless, PartialFactor::trivial(3)));

  // Catlin(3): no candidate passes. Rows are (j, p(j), q(j)) over all p, q.
  const auto cat = catlin(3);
  std::array<int, 3> p{0, 1, 2};
  int passing = 0;
  do {
    std::array<int, 3> q{0, 1, 2};
    do {
      PartialFactor::Matrix rows(3, 3);
      for (int j = 0; j < 3; ++j) rows.row(j) << j, p[static_cast<std::size_t>(j)], q[static_cast<std::size_t>(j)];
      passing += is_factor(cat, PartialFactor(rows)) ? 1 : 0;
    } while (std::next_permutation(q.begin(), q.end()));
  } while (std::next_permutation(p.begin(), p.end()));
  CHECK(passing == 0);
}

TEST_CASE("partial factor columns must be permutations") {
  PartialFactor::Matrix bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(PartialFactor{bad}, InvalidArgument);
  CHECK_FALSE(columns_are_permutations(bad));
  CHECK_FALSE(rows_pairwise_disjoint(bad));

  const auto f = PartialFactor::trivial(3);
  CHECK(f.parts() == 1);
  CHECK(f.rows() == 3);
  CHECK_THROWS_AS(f.extended(Eigen::Vector3i(0, 0, 1)), InvalidArgument);
  const auto g = f.extended(Eigen::Vector3i(2, 0, 1));
  CHECK(g.parts() == 2);
  CHECK(g.at(0, 1) == 2);
}

TEST_CASE("column permutations iff rows pairwise disjoint, on random matrices") {
  Rng rng(2024);
  int permutation_cases = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 6));
    const int t = 1 + static_cast<int>(uniform_below(rng, 4));
    PartialFactor::Matrix m(n, t);
    const bool from_permutations = trial % 2 == 0;
    for (int col = 0; col < t; ++col) {
      const auto perm = random_permutation(n, rng);
      for (int j = 0; j < n; ++j) {
        m(j, col) = from_permutations ? perm[static_cast<std::size_t>(j)]
                                      : static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
      }
    }
    const bool columns = columns_are_permutations(m);
    permutation_cases += columns ? 1 : 0;
    CHECK(columns == rows_pairwise_disjoint(m));
  }
  CHECK(permutation_cases > 1000);
  CHECK(permutation_cases < 2000);
}

TEST_CASE("induced prefix") {
  Rng rng(5);
  const auto g = random_knd1(4, 6, rng);
  CHECK(induced_prefix(g, 4) == g);

  const auto single = induced_prefix(catlin(5), 1);
  CHECK(single.parts() == 1);
  CHECK(single.part_size() == 5);
  CHECK(single.edge_count() == 0);

  // Canonical [4,4,1] instance: six perfect matchings, three of them touch part 3.
  const auto canonical = f4_instance(0);
  CHECK(canonical.edge_count() == 24);
  const auto three = induced_prefix(canonical, 3);
  CHECK(three.edge_count() == 12);
  CHECK(three.edge_count(0, 1) == canonical.edge_count(0, 1));

  CHECK_THROWS_AS(induced_prefix(g, 0), InvalidArgument);
  CHECK_THROWS_AS(induced_prefix(g, 5), InvalidArgument);
}

TEST_CASE("relabel preserves structure") {
  Rng rng(11);
  const auto g = oracle::random_partial_knd1(4, 5, 0.7, rng);
  std::vector<std::vector<int>> labels;
  for (int p = 0; p < 4; ++p) labels.push_back(random_permutation(5, rng));
  const auto h = relabel(g, labels);
  CHECK_NOTHROW(h.validate());
  CHECK(h.edge_count() == g.edge_count());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int a = 0; a < 5; ++a) {
        if (i == j) continue;
        const int b = g.neighbor(i, a, j);
        const auto ia = static_cast<std::size_t>(a);
        if (b == SparsePartiteGraph::kNone) {
          CHECK(h.neighbor(i, labels[static_cast<std::size_t>(i)][ia], j) == SparsePartiteGraph::kNone);
        } else {
          CHECK(h.neighbor(i, labels[static_cast<std::size_t>(i)][ia], j) ==
                labels[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)]);
        }
      }
}

TEST_CASE("independent_row_count") {
  const auto clique = first_column_clique(3);
  PartialFactor::Matrix rows(2, 3);
  rows << 0, 0, 1, 1, 1, 0;
  const PartialFactor f(rows);
  CHECK(independent_row_count(clique, f) == 1);
  CHECK(independent_row_count(SparsePartiteGraph(3, 2), f) == 2);
  CHECK_FALSE(is_factor(clique, f));
}

}  // TEST_SUITE
