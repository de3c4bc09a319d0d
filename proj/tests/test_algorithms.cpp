#include <doctest.h>

#include <cmath>

#include "itf/algorithms.hpp"
#include "itf/constructions.hpp"
#include "itf/exhaustive.hpp"
#include "oracles.hpp"

using namespace itf;

namespace {

void check_min_degree(const BipartiteAdjacency& b, int bound) {
  CHECK(b.rowwise().count().minCoeff() >= bound);
  CHECK(b.colwise().count().minCoeff() >= bound);
}

void check_report_consistency(const std::vector<StageReport>& reports, int n) {
  for (const auto& r : reports) {
    CHECK(r.fallback_used == !(r.good && r.reshuffle_success));
    CHECK(r.m_t >= 0);
    CHECK(r.m_t <= n);
  }
}

SolverParams wide_params(std::uint64_t seed) {
  SolverParams p;
  p.delta = 0.09;
  p.eta = 0.10;
  p.restarts = 5;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_SUITE("algorithms") {

TEST_CASE("solver parameters") {
  SolverParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.c == doctest::Approx(0.778));
  CHECK(p.restarts == 20);

  auto bad = p;
  bad.c = 0.5;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = p;
  bad.c = 1.01;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = p;
  bad.delta = 0.2;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = p;
  bad.delta = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = p;
  bad.epsilon = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = p;
  bad.restarts = -1;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);

  bad = p;
  bad.c = 0.7776;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  auto edge = p;
  edge.c = 1.0;
  CHECK_NOTHROW(edge.validate());

  CHECK(p.intended_max_parts(300) == static_cast<int>(std::floor(300 * 0.95 / 1.778)));
}

TEST_CASE("auxiliary graph") {
  SparsePartiteGraph edgeless(3, 5);
  CHECK(build_auxiliary(edgeless, PartialFactor::trivial(5)).all());

  SparsePartiteGraph single(2, 6);
  Rng rng(1);
  const auto perm = random_permutation(6, rng);
  for (int a = 0; a < 6; ++a) single.add_edge(0, a, 1, perm[static_cast<std::size_t>(a)]);
  const auto b1 = build_auxiliary(single, PartialFactor::trivial(6));
  for (int j = 0; j < 6; ++j)
    for (int v = 0; v < 6; ++v) CHECK(b1(j, v) == (v != perm[static_cast<std::size_t>(j)]));
  CHECK((b1.rowwise().count() == 5).all());
  CHECK((b1.colwise().count() == 5).all());

  CHECK_THROWS_AS(build_auxiliary(single, PartialFactor::trivial(5)), InvalidArgument);
  PartialFactor::Matrix both(6, 2);
  both.setZero();
  for (int j = 0; j < 6; ++j) both.row(j) << j, j;
  CHECK_THROWS_AS(build_auxiliary(single, PartialFactor(both)), InvalidArgument);
}

TEST_CASE("auxiliary degree bound with greedy-built partial factors") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto g = random_knd1(6, 12, rng);
    const auto partial = greedy_hall_factor(induced_prefix(g, 4));
    REQUIRE(std::holds_alternative<PartialFactor>(partial));
    const auto& f = std::get<PartialFactor>(partial);
    REQUIRE(f.parts() == 4);
    check_min_degree(build_auxiliary(g, f), 8);
  }
}

TEST_CASE("auxiliary degree bound with arbitrary partial factors") {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 2 + static_cast<int>(uniform_below(rng, 8));
    const int n = 1 + static_cast<int>(uniform_below(rng, 20));
    const int t = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(k - 1)));
    const auto g = oracle::random_partial_knd1(k, n, 0.8, rng);
    const auto f = oracle::random_partial_factor(n, t, rng);
    check_min_degree(build_auxiliary(g, f), n - t);
  }
}

TEST_CASE("greedy on every perfect [3,4,1]-graph") {
  const auto& perms = permutations4();
  int successes = 0;
  for (const auto& p01 : perms)
    for (const auto& p02 : perms)
      for (const auto& p12 : perms) {
        SparsePartiteGraph g(3, 4);
        for (int a = 0; a < 4; ++a) {
          const auto i = static_cast<std::size_t>(a);
          g.add_edge(0, a, 1, p01[i]);
          g.add_edge(0, a, 2, p02[i]);
          g.add_edge(1, a, 2, p12[i]);
        }
        const auto result = greedy_hall_factor(g);
        if (const auto* f = std::get_if<PartialFactor>(&result)) successes += is_factor(g, *f) ? 1 : 0;
      }
  CHECK(successes == 24 * 24 * 24);
}

TEST_CASE("greedy succeeds when n >= 2k - 2") {
  for (int k = 3; k <= 8; ++k) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
      const auto g = random_knd1(k, 2 * k - 2, rng);
      const auto result = greedy_hall_factor(g);
      REQUIRE(std::holds_alternative<PartialFactor>(result));
      CHECK(is_factor(g, std::get<PartialFactor>(result)));
    }
  }
}

TEST_CASE("greedy fails on the clique") {
  const auto g = first_column_clique(4);
  const auto result = greedy_hall_factor(g);
  REQUIRE(std::holds_alternative<GreedyFailure>(result));
  const auto& failure = std::get<GreedyFailure>(result);
  CHECK(failure.partial.parts() == failure.t);
  const auto b = build_auxiliary(g, failure.partial);
  CHECK(neighborhood(b, failure.witness.right).size() < failure.witness.right.size());
  CHECK_FALSE(brute_force_factor(g).has_value());
}

TEST_CASE("stage on an edgeless graph") {
  SparsePartiteGraph g(6, 40);
  SolverParams p;
  Rng rng(3);
  PartialFactor f = PartialFactor::trivial(40);
  for (int t = 1; t < 6; ++t) {
    auto [next, report] = semirandom_stage(g, f, p, rng);
    CHECK(report.t == t);
    CHECK(report.s_t == static_cast<int>(std::floor(0.778 * t + 4.0)));
    CHECK(report.fallback_used == !(report.good && report.reshuffle_success));
    if (report.good) CHECK(report.reshuffle_success);
    CHECK(next.parts() == t + 1);
    f = std::move(next);
  }
  CHECK(is_factor(g, f));
}

TEST_CASE("good early stages always reshuffle") {
  // t <= eta n / 3 = 10: the stage throws if a good stage fails, so running is the check.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng gen(seed);
    const auto g = random_knd1(11, 300, gen);
    SolverParams p;
    Rng rng(derive_seed(seed, 99));
    PartialFactor f = PartialFactor::trivial(300);
    for (int t = 1; t < 11; ++t) {
      auto [next, report] = semirandom_stage(g, f, p, rng);
      if (report.good) CHECK(report.reshuffle_success);
      f = std::move(next);
    }
  }
}

TEST_CASE("stage success keeps rows independent") {
  Rng gen(12);
  const auto g = random_knd1(30, 100, gen);
  auto p = wide_params(0);
  Rng rng(4);
  PartialFactor f = PartialFactor::trivial(100);
  for (int t = 1; t < 30; ++t) {
    const bool before = independent_row_count(induced_prefix(g, t), f) == 100;
    auto [next, report] = semirandom_stage(g, f, p, rng, OnInsufficientMatching::Fallback);
    if (before && !report.fallback_used) {
      CHECK(independent_row_count(induced_prefix(g, t + 1), next) == 100);
    }
    f = std::move(next);
  }
}

TEST_CASE("insufficient matching") {
  // s_t = floor(0.778 * 8 + 0.6 * 10) = 12 > n, so any good stage lacks pairs.
  SparsePartiteGraph g(10, 10);
  SolverParams p;
  p.delta = 0.5;
  p.eta = 0.6;
  Rng rng(1);
  PartialFactor f = PartialFactor::trivial(10);
  for (int t = 1; t < 8; ++t) f = f.extended(Eigen::VectorXi::LinSpaced(10, 0, 9));
  bool thrown = false;
  for (std::uint64_t seed = 0; seed < 20 && !thrown; ++seed) {
    Rng r(seed);
    try {
      semirandom_stage(g, f, p, r, OnInsufficientMatching::Throw);
    } catch (const InsufficientMatching&) {
      thrown = true;
    }
  }
  CHECK(thrown);

  bool recorded = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng r(seed);
    const auto [next, report] = semirandom_stage(g, f, p, r, OnInsufficientMatching::Fallback);
    if (report.insufficient_matching) {
      recorded = true;
      CHECK(report.good);
      CHECK(report.fallback_used);
      CHECK_FALSE(report.reshuffle_success);
    }
  }
  CHECK(recorded);
}

TEST_CASE("semi-random solver") {
  Rng gen(9);
  const auto two = random_knd1(2, 50, gen);
  const auto result = semirandom_factor(two, SolverParams{});
  REQUIRE(std::holds_alternative<SemirandomSuccess>(result));
  const auto& ok = std::get<SemirandomSuccess>(result);
  CHECK(ok.reports.size() == 1);
  CHECK(is_factor(two, ok.factor));

  const auto clique = first_column_clique(5);
  const auto none = semirandom_factor(clique, SolverParams{});
  REQUIRE(std::holds_alternative<SolverFailure>(none));
  CHECK(std::get<SolverFailure>(none).attempts == 21);
  CHECK_FALSE(brute_force_factor(clique).has_value());

  auto bad = SolverParams{};
  bad.c = 0.5;
  CHECK_THROWS_AS(semirandom_factor(two, bad), InvalidArgument);
}

TEST_CASE("semi-random successes are factors") {
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng gen(seed);
    const auto g = random_knd1(40, 100, gen);
    const auto result = semirandom_factor(g, wide_params(seed));
    if (const auto* ok = std::get_if<SemirandomSuccess>(&result)) {
      ++successes;
      CHECK(is_factor(g, ok->factor));
      CHECK(ok->reports.size() == 39);
      check_report_consistency(ok->reports, 100);
      for (const auto& r : ok->reports) CHECK_FALSE(r.fallback_used);
    } else {
      check_report_consistency(std::get<SolverFailure>(result).reports, 100);
    }
  }
  CHECK(successes >= 8);
}

TEST_CASE("default parameters at n = 200") {
  // With delta = 0.02 the goodness window is +-4 while m_t spreads by about
  // sqrt(n); early stages are mostly good and the report invariant holds.
  Rng gen(7);
  const auto g = random_knd1(100, 200, gen);
  SolverParams p;
  p.seed = 7;
  p.restarts = 0;
  p.complete_failed_attempts = true;
  const auto result = semirandom_factor(g, p);
  const auto& reports = std::holds_alternative<SemirandomSuccess>(result)
                            ? std::get<SemirandomSuccess>(result).reports
                            : std::get<SolverFailure>(result).reports;
  REQUIRE(reports.size() == 99);
  check_report_consistency(reports, 200);
  CHECK(reports.front().good);
  for (const auto& r : reports) {
    if (r.t <= 200 * p.eta / 3.0 && r.good) CHECK(r.reshuffle_success);
  }
}

TEST_CASE("greedy shortcut") {
  Rng gen(2);
  const auto g = random_knd1(5, 10, gen);
  auto p = SolverParams{};
  p.greedy_shortcut = true;
  const auto result = semirandom_factor(g, p);
  REQUIRE(std::holds_alternative<SemirandomSuccess>(result));
  CHECK(std::get<SemirandomSuccess>(result).used_greedy);
  CHECK(is_factor(g, std::get<SemirandomSuccess>(result).factor));
}

TEST_CASE("solves are reproducible") {
  Rng gen(5);
  const auto g = random_knd1(30, 80, gen);
  auto p = wide_params(123);
  p.complete_failed_attempts = true;
  const auto a = semirandom_factor(g, p);
  const auto b = semirandom_factor(g, p);
  REQUIRE(a.index() == b.index());
  auto same_reports = [](const std::vector<StageReport>& x, const std::vector<StageReport>& y) {
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(x[i].m_t == y[i].m_t);
      CHECK(x[i].good == y[i].good);
      CHECK(x[i].s_t == y[i].s_t);
      CHECK(x[i].reshuffle_success == y[i].reshuffle_success);
      CHECK(x[i].leftover_size == y[i].leftover_size);
    }
  };
  if (const auto* ok = std::get_if<SemirandomSuccess>(&a)) {
    CHECK(ok->factor == std::get<SemirandomSuccess>(b).factor);
    same_reports(ok->reports, std::get<SemirandomSuccess>(b).reports);
  } else {
    same_reports(std::get<SolverFailure>(a).reports, std::get<SolverFailure>(b).reports);
  }
}

TEST_CASE("success condition sizes") {
  const auto s = success_condition_sizes(70, 10, 0.778, 0.1);
  CHECK(s.w_size == 7);
  CHECK(s.threshold == 69);
}

TEST_CASE("success condition, exact and sampled") {
  const BipartiteAdjacency complete = BipartiteAdjacency::Constant(8, 8, true);
  for (int thr = 0; thr <= 8; ++thr) CHECK(check_success_condition_exact(complete, 3, thr));
  CHECK_FALSE(check_success_condition_exact(complete, 3, 9));

  for (int k = 3; k <= 8; ++k) {
    const auto trap = latin_greedy_trap(k);
    CHECK_FALSE(check_success_condition_exact(trap.adjacency, k - 1, k - 1));
    CHECK(check_success_condition_exact(trap.adjacency, k - 1, k - 2));
  }

  CHECK_THROWS_AS(check_success_condition_exact(BipartiteAdjacency::Constant(21, 21, true), 2, 2),
                  ExactModeTooLarge);
  Rng rng(0);
  CHECK(check_success_condition_sampled(BipartiteAdjacency::Constant(21, 21, true), 2, 21, 10, rng));
  CHECK_THROWS_AS(check_success_condition_exact(complete, -1, 0), InvalidArgument);
}

TEST_CASE("exact and sampled checks agree on trimmed auxiliary graphs") {
  const int n = 16;
  const int t = 6;
  const auto sizes = success_condition_sizes(n, t, 0.778, 0.1);
  REQUIRE(sizes.w_size == 4);
  int held = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const auto g = random_knd1(t + 1, n, rng);
    const auto f = oracle::random_partial_factor(n, t, rng);
    const auto b = trim_to_exact_degree(build_auxiliary(g, f), n - t, rng);
    for (int threshold = sizes.threshold - 4; threshold <= sizes.threshold; ++threshold) {
      const bool exact = check_success_condition_exact(b, sizes.w_size, threshold);
      const bool sampled = check_success_condition_sampled(b, sizes.w_size, threshold, 20000, rng);
      CHECK(exact == sampled);
      held += exact ? 1 : 0;
    }
  }
  CHECK(held > 0);
  CHECK(held < 250);
}

}  // TEST_SUITE
