#include "itf/algorithms.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "itf/analysis.hpp"
#include "itf/errors.hpp"

namespace itf {

void SolverParams::validate() const {
  if (!(c > 0.0 && c <= 1.0) || !analysis::check_c_condition(c)) {
    throw InvalidArgument("c=" + std::to_string(c) + " must lie in (0, 1] and satisfy 2c^2 ln((1+c)/c) >= 1");
  }
  if (!(delta > 0.0 && delta < eta)) throw InvalidArgument("need 0 < delta < eta");
  if (!(eta < 1.0)) throw InvalidArgument("eta must be below 1");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (restarts < 0) throw InvalidArgument("restarts must be non-negative");
}

int SolverParams::intended_max_parts(int n) const {
  return static_cast<int>(std::floor(n * (1.0 - epsilon) / (c + 1.0)));
}

BipartiteAdjacency build_auxiliary(const SparsePartiteGraph& g, const PartialFactor& f) {
  const int n = g.part_size();
  const int t = f.parts();
  if (f.rows() != n) throw InvalidArgument("partial factor row count must equal part size");
  if (t >= g.parts()) throw InvalidArgument("partial factor already covers every part");
  BipartiteAdjacency b = BipartiteAdjacency::Constant(n, n, true);
  for (int j = 0; j < n; ++j) {
    for (int part = 0; part < t; ++part) {
      const int v = g.neighbor(part, f.at(j, part), t);
      if (v != SparsePartiteGraph::kNone) b(j, v) = false;
    }
  }
  const auto left_min = b.rowwise().count().minCoeff();
  const auto right_min = b.colwise().count().minCoeff();
  if (left_min < n - t || right_min < n - t) {
    throw InvariantViolation("auxiliary graph degree below n - t at t=" + std::to_string(t));
  }
  return b;
}

PartialFactor extend_with(const PartialFactor& f, const PairAssignment& pairing) {
  return f.extended(pairing.pairs);
}

GreedyResult greedy_hall_extend(const SparsePartiteGraph& g, PartialFactor start) {
  PartialFactor current = std::move(start);
  while (current.parts() < g.parts()) {
    auto step = perfect_matching_or_witness(build_auxiliary(g, current));
    if (auto* witness = std::get_if<HallWitness>(&step)) {
      return GreedyFailure{current.parts(), std::move(*witness), std::move(current)};
    }
    current = extend_with(current, std::get<PairAssignment>(step));
  }
  return current;
}

GreedyResult greedy_hall_factor(const SparsePartiteGraph& g) {
  auto result = greedy_hall_extend(g, PartialFactor::trivial(g.part_size()));
  if (const auto* factor = std::get_if<PartialFactor>(&result); factor && !is_factor(g, *factor)) {
    throw InvariantViolation("greedy produced an invalid factor");
  }
  return result;
}

StageOutcome semirandom_stage(const SparsePartiteGraph& g, const PartialFactor& f,
                              const SolverParams& params, Rng& rng, OnInsufficientMatching policy) {
  const int n = g.part_size();
  const int t = f.parts();
  const BipartiteAdjacency full = build_auxiliary(g, f);
  const BipartiteAdjacency trimmed = trim_to_exact_degree(full, n - t, rng);
  const PairAssignment pairing = random_pairing(trimmed, rng);

  StageReport report;
  report.t = t;
  report.m_t = pairing.flagged();
  report.good = std::abs(static_cast<double>(report.m_t - (n - t))) <= params.delta * n;
  report.s_t = static_cast<int>(std::floor(params.c * t + params.eta * n));

  if (report.good) {
    if (report.m_t < report.s_t) {
      if (policy == OnInsufficientMatching::Throw) {
        throw InsufficientMatching("stage " + std::to_string(t) + ": m_t=" + std::to_string(report.m_t) +
                                   " < s_t=" + std::to_string(report.s_t) +
                                   "; parameters are outside k(c+1) <= n(1-delta-eta)");
      }
      report.insufficient_matching = true;
    } else {
      const ReshuffleOutcome shuffled = reshuffle(full, pairing, report.s_t, rng);
      report.leftover_size = static_cast<int>(shuffled.leftover_left.size());
      report.reshuffle_success = shuffled.success;
      // Small stages always succeed: B* has minimum degree at least half its side.
      if (!shuffled.success && t <= params.eta * n / 3.0) {
        throw InvariantViolation("good stage " + std::to_string(t) + " <= eta n / 3 failed to reshuffle");
      }
      if (shuffled.success) {
        return {extend_with(f, shuffled.final_matching), report};
      }
    }
  }
  report.fallback_used = true;
  return {extend_with(f, pairing), report};
}

SemirandomResult semirandom_factor(const SparsePartiteGraph& g, const SolverParams& params) {
  params.validate();
  const int k = g.parts();
  const int n = g.part_size();
  if (params.greedy_shortcut && n >= 2 * k - 2) {
    auto greedy = greedy_hall_factor(g);
    if (auto* factor = std::get_if<PartialFactor>(&greedy)) {
      return SemirandomSuccess{std::move(*factor), {}, 0, true};
    }
  }

  SolverFailure failure;
  for (int attempt = 0; attempt <= params.restarts; ++attempt) {
    Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(attempt)));
    PartialFactor current = PartialFactor::trivial(n);
    std::vector<StageReport> reports;
    bool clean = true;
    for (int t = 1; t < k; ++t) {
      auto [next, report] = semirandom_stage(g, current, params, rng, OnInsufficientMatching::Fallback);
      current = std::move(next);
      clean = clean && !report.fallback_used;
      reports.push_back(report);
      if (!clean && !params.complete_failed_attempts) break;
    }
    if (clean) {
      if (!is_factor(g, current)) throw InvariantViolation("semi-random run produced an invalid factor");
      return SemirandomSuccess{std::move(current), std::move(reports), attempt + 1, false};
    }
    failure.reports = std::move(reports);
    failure.attempts = attempt + 1;
  }
  return failure;
}

SuccessConditionSizes success_condition_sizes(int n, int t, double c, double eta) {
  return {static_cast<int>(std::floor(c * t)), n - static_cast<int>(std::floor(eta * n / 7.0))};
}

bool check_success_condition_exact(const BipartiteAdjacency& b, int w_size, int threshold) {
  require_square(b);
  const auto n = static_cast<int>(b.rows());
  if (n > kExactConditionMaxSide) {
    throw ExactModeTooLarge("exact enumeration is limited to " + std::to_string(kExactConditionMaxSide) +
                            " vertices per side, got " + std::to_string(n));
  }
  if (w_size < 0) throw InvalidArgument("set size must be non-negative");
  if (w_size > n) return true;
  std::vector<std::uint32_t> column_mask(static_cast<std::size_t>(n), 0);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      if (b(r, c)) column_mask[static_cast<std::size_t>(c)] |= std::uint32_t{1} << r;

  if (w_size == 0) return threshold <= 0;
  const std::uint32_t limit = std::uint32_t{1} << n;
  // Gosper's hack over all n-bit words with w_size bits set.
  for (std::uint32_t set = (std::uint32_t{1} << w_size) - 1; set < limit;) {
    std::uint32_t covered = 0;
    for (std::uint32_t rest = set; rest != 0; rest &= rest - 1) {
      covered |= column_mask[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    if (std::popcount(covered) < threshold) return false;
    const std::uint32_t low = set & (~set + 1);
    const std::uint32_t ripple = set + low;
    set = (((ripple ^ set) >> 2) / low) | ripple;
  }
  return true;
}

bool check_success_condition_sampled(const BipartiteAdjacency& b, int w_size, int threshold,
                                     int samples, Rng& rng) {
  require_square(b);
  const auto n = static_cast<int>(b.rows());
  if (w_size < 0) throw InvalidArgument("set size must be non-negative");
  if (w_size > n) return true;
  std::vector<int> vertices(static_cast<std::size_t>(n));
  for (int s = 0; s < samples; ++s) {
    std::iota(vertices.begin(), vertices.end(), 0);
    partial_shuffle(std::span<int>(vertices), static_cast<std::size_t>(w_size), rng);
    const std::vector<int> chosen(vertices.begin(), vertices.begin() + w_size);
    const auto covered = static_cast<int>(neighborhood(b, chosen).size());
    if (covered < threshold) return false;
  }
  return true;
}

}  // namespace itf
