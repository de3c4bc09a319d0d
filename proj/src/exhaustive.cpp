#include "itf/exhaustive.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "itf/matching.hpp"
#include "itf/rng.hpp"

namespace itf {
namespace {

std::array<Permutation4, 24> make_permutations4() {
  std::array<Permutation4, 24> out{};
  Permutation4 p{0, 1, 2, 3};
  std::size_t i = 0;
  do {
    out[i++] = p;
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// conflict[x][y]: some row j puts adjacent vertices in parts a and b when
/// part a uses permutation x and part b permutation y.
using ConflictTable = std::array<std::array<bool, 24>, 24>;

ConflictTable conflicts(const SparsePartiteGraph& g, int a, int b) {
  const auto& perms = permutations4();
  ConflictTable table{};
  for (std::size_t x = 0; x < 24; ++x) {
    for (std::size_t y = 0; y < 24; ++y) {
      bool clash = false;
      for (std::size_t j = 0; j < 4 && !clash; ++j) {
        clash = g.neighbor(a, perms[x][j], b) == perms[y][j];
      }
      table[x][y] = clash;
    }
  }
  return table;
}

class Backtracker {
 public:
  Backtracker(const SparsePartiteGraph& g, const BruteForceOptions& options)
      : g_(g),
        options_(options),
        n_(g.part_size()),
        k_(g.parts()),
        start_(std::chrono::steady_clock::now()) {
    order_.resize(static_cast<std::size_t>(k_));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
      return g.incident_edges(x) > g.incident_edges(y);
    });
    rows_ = PartialFactor::Matrix::Constant(n_, k_, -1);
    for (int j = 0; j < n_; ++j) rows_(j, order_[0]) = j;
  }

  std::optional<PartialFactor> run() {
    if (k_ == 1 || place_part(1)) return PartialFactor(rows_);
    return std::nullopt;
  }

 private:
  bool compatible(int row, int level, int v) const {
    const int part = order_[static_cast<std::size_t>(level)];
    for (int prev = 0; prev < level; ++prev) {
      const int other = order_[static_cast<std::size_t>(prev)];
      if (g_.neighbor(other, rows_(row, other), part) == v) return false;
    }
    return true;
  }

  bool place_part(int level) {
    if (level == k_) return true;
    const int part = order_[static_cast<std::size_t>(level)];
    // Hall check on the rows-versus-part graph before enumerating.
    BipartiteAdjacency options(n_, n_);
    for (int row = 0; row < n_; ++row)
      for (int v = 0; v < n_; ++v) options(row, v) = compatible(row, level, v);
    if (max_matching(options).flagged() < n_) return false;
    std::vector<char> used(static_cast<std::size_t>(n_), 0);
    return place_row(level, part, 0, options, used);
  }

  bool place_row(int level, int part, int row, const BipartiteAdjacency& options, std::vector<char>& used) {
    if (row == n_) return place_part(level + 1);
    for (int v = 0; v < n_; ++v) {
      if (used[static_cast<std::size_t>(v)] || !options(row, v)) continue;
      tick(level);
      used[static_cast<std::size_t>(v)] = 1;
      rows_(row, part) = v;
      if (place_row(level, part, row + 1, options, used)) return true;
      used[static_cast<std::size_t>(v)] = 0;
    }
    rows_(row, part) = -1;
    return false;
  }

  void tick(int level) {
    ++nodes_;
    deepest_ = std::max(deepest_, static_cast<std::size_t>(level));
    if (options_.node_budget && nodes_ > *options_.node_budget) {
      throw BudgetExceeded("brute-force node budget exhausted", nodes_, deepest_);
    }
    if (options_.time_budget && (nodes_ & 0xfff) == 0 &&
        std::chrono::steady_clock::now() - start_ > *options_.time_budget) {
      throw BudgetExceeded("brute-force time budget exhausted", nodes_, deepest_);
    }
  }

  const SparsePartiteGraph& g_;
  const BruteForceOptions& options_;
  int n_;
  int k_;
  std::chrono::steady_clock::time_point start_;
  std::vector<int> order_;
  PartialFactor::Matrix rows_;
  std::uint64_t nodes_ = 0;
  std::size_t deepest_ = 0;
};

}  // namespace

const std::array<Permutation4, 24>& permutations4() {
  static const auto table = make_permutations4();
  return table;
}

SparsePartiteGraph f4_instance(std::size_t index) {
  if (index >= kF4InstanceCount) throw InvalidArgument("f4 instance index out of range");
  const auto& perms = permutations4();
  SparsePartiteGraph g(4, 4);
  for (int j = 1; j < 4; ++j)
    for (int a = 0; a < 4; ++a) g.add_edge(0, a, j, a);
  const Permutation4& p12 = perms[index / 576];
  const Permutation4& p13 = perms[(index / 24) % 24];
  const Permutation4& p23 = perms[index % 24];
  for (int a = 0; a < 4; ++a) {
    g.add_edge(1, a, 2, p12[static_cast<std::size_t>(a)]);
    g.add_edge(1, a, 3, p13[static_cast<std::size_t>(a)]);
    g.add_edge(2, a, 3, p23[static_cast<std::size_t>(a)]);
  }
  return g;
}

void for_each_f4_instance(const std::function<void(std::size_t, const SparsePartiteGraph&)>& visit) {
  for (std::size_t i = 0; i < kF4InstanceCount; ++i) visit(i, f4_instance(i));
}

std::optional<PartialFactor> find_factor_by_permutation_triples(const SparsePartiteGraph& g) {
  if (g.parts() != 4 || g.part_size() != 4) {
    throw InvalidArgument("permutation-triple search needs a [4,4,1]-graph");
  }
  const auto& perms = permutations4();
  const std::size_t identity = 0;
  const ConflictTable c01 = conflicts(g, 0, 1);
  const ConflictTable c02 = conflicts(g, 0, 2);
  const ConflictTable c03 = conflicts(g, 0, 3);
  const ConflictTable c12 = conflicts(g, 1, 2);
  const ConflictTable c13 = conflicts(g, 1, 3);
  const ConflictTable c23 = conflicts(g, 2, 3);
  for (std::size_t p1 = 0; p1 < 24; ++p1) {
    if (c01[identity][p1]) continue;
    for (std::size_t p2 = 0; p2 < 24; ++p2) {
      if (c02[identity][p2] || c12[p1][p2]) continue;
      for (std::size_t p3 = 0; p3 < 24; ++p3) {
        if (c03[identity][p3] || c13[p1][p3] || c23[p2][p3]) continue;
        PartialFactor::Matrix rows(4, 4);
        for (int j = 0; j < 4; ++j) {
          const auto r = static_cast<std::size_t>(j);
          rows.row(j) << j, perms[p1][r], perms[p2][r], perms[p3][r];
        }
        PartialFactor factor(std::move(rows));
        if (!is_factor(g, factor)) throw InvariantViolation("permutation-triple factor failed verification");
        return factor;
      }
    }
  }
  return std::nullopt;
}

bool has_factor_by_permutation_triples(const SparsePartiteGraph& g) {
  return find_factor_by_permutation_triples(g).has_value();
}

std::optional<PartialFactor> brute_force_factor(const SparsePartiteGraph& g, const BruteForceOptions& options) {
  if (g.part_size() > options.max_n || g.parts() > options.max_k) {
    throw InvalidArgument("brute force is capped at n <= " + std::to_string(options.max_n) +
                          " and k <= " + std::to_string(options.max_k));
  }
  auto factor = Backtracker(g, options).run();
  if (factor && !is_factor(g, *factor)) throw InvariantViolation("brute-force factor failed verification");
  return factor;
}

SparsePartiteGraph relabeled_f4_instance(std::size_t index, std::uint64_t relabel_seed) {
  Rng rng(derive_seed(relabel_seed, index));
  std::vector<std::vector<int>> labels;
  for (int part = 0; part < 4; ++part) labels.push_back(random_permutation(4, rng));
  return relabel(f4_instance(index), labels);
}

VerificationReport verify_f4(const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t total = std::min(options.limit, kF4InstanceCount);
  const unsigned workers = std::max(1u, options.threads);
  std::atomic<std::size_t> next{0};
  std::mutex guard;
  std::vector<std::size_t> failures;

  auto work = [&] {
    std::vector<std::size_t> local;
    for (std::size_t i = next++; i < total; i = next++) {
      const SparsePartiteGraph g =
          options.relabel_seed ? relabeled_f4_instance(i, *options.relabel_seed) : f4_instance(i);
      if (!has_factor_by_permutation_triples(g)) local.push_back(i);
    }
    const std::lock_guard lock(guard);
    failures.insert(failures.end(), local.begin(), local.end());
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  std::sort(failures.begin(), failures.end());

  VerificationReport report;
  report.checked = total;
  report.failures = std::move(failures);
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace itf
