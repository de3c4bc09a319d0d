#include "itf/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>

#include "itf/errors.hpp"

namespace itf {
namespace {

constexpr int kInfinity = std::numeric_limits<int>::max();

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteAdjacency& b)
      : m_(static_cast<int>(b.rows())),
        adj_(static_cast<std::size_t>(m_)),
        pair_left_(static_cast<std::size_t>(m_), PairAssignment::kUnpaired),
        pair_right_(static_cast<std::size_t>(m_), PairAssignment::kUnpaired),
        dist_(static_cast<std::size_t>(m_)),
        cursor_(static_cast<std::size_t>(m_)) {
    for (int r = 0; r < m_; ++r) {
      for (int c = 0; c < m_; ++c) {
        if (b(r, c)) adj_[static_cast<std::size_t>(r)].push_back(c);
      }
    }
  }

  void run() {
    while (layer()) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      for (int u = 0; u < m_; ++u) {
        if (pair_left_[static_cast<std::size_t>(u)] == PairAssignment::kUnpaired) augment(u);
      }
    }
  }

  const std::vector<int>& pair_left() const { return pair_left_; }
  const std::vector<int>& pair_right() const { return pair_right_; }

 private:
  bool layer() {
    std::queue<int> queue;
    for (int u = 0; u < m_; ++u) {
      if (pair_left_[static_cast<std::size_t>(u)] == PairAssignment::kUnpaired) {
        dist_[static_cast<std::size_t>(u)] = 0;
        queue.push(u);
      } else {
        dist_[static_cast<std::size_t>(u)] = kInfinity;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (const int v : adj_[static_cast<std::size_t>(u)]) {
        const int w = pair_right_[static_cast<std::size_t>(v)];
        if (w == PairAssignment::kUnpaired) {
          found = true;
        } else if (dist_[static_cast<std::size_t>(w)] == kInfinity) {
          dist_[static_cast<std::size_t>(w)] = dist_[static_cast<std::size_t>(u)] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  bool augment(int u) {
    auto& edges = adj_[static_cast<std::size_t>(u)];
    for (int& i = cursor_[static_cast<std::size_t>(u)]; i < static_cast<int>(edges.size()); ++i) {
      const int v = edges[static_cast<std::size_t>(i)];
      const int w = pair_right_[static_cast<std::size_t>(v)];
      if (w == PairAssignment::kUnpaired ||
          (dist_[static_cast<std::size_t>(w)] == dist_[static_cast<std::size_t>(u)] + 1 && augment(w))) {
        pair_left_[static_cast<std::size_t>(u)] = v;
        pair_right_[static_cast<std::size_t>(v)] = u;
        ++i;
        return true;
      }
    }
    dist_[static_cast<std::size_t>(u)] = kInfinity;
    return false;
  }

  int m_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> pair_left_;
  std::vector<int> pair_right_;
  std::vector<int> dist_;
  std::vector<int> cursor_;
};

PairAssignment assignment_from(const std::vector<int>& pair_left) {
  PairAssignment out;
  out.pairs = Eigen::Map<const Eigen::VectorXi>(pair_left.data(), static_cast<Eigen::Index>(pair_left.size()));
  out.edge_flags = (out.pairs.array() != PairAssignment::kUnpaired);
  return out;
}

}  // namespace

void require_square(const BipartiteAdjacency& b) {
  if (b.rows() != b.cols()) throw InvalidArgument("bipartite adjacency must be square");
}

std::vector<int> neighborhood(const BipartiteAdjacency& b, std::span<const int> right) {
  std::vector<int> out;
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    for (const int c : right) {
      if (c < 0 || c >= b.cols()) throw InvalidArgument("right vertex out of range");
      if (b(r, c)) {
        out.push_back(static_cast<int>(r));
        break;
      }
    }
  }
  return out;
}

bool is_consistent_assignment(const BipartiteAdjacency& b, const PairAssignment& m) {
  if (m.pairs.size() != b.rows() || m.edge_flags.size() != b.rows()) return false;
  std::vector<char> used(static_cast<std::size_t>(b.cols()), 0);
  for (Eigen::Index i = 0; i < m.pairs.size(); ++i) {
    const int c = m.pairs(i);
    if (c == PairAssignment::kUnpaired) {
      if (m.edge_flags(i)) return false;
      continue;
    }
    if (c < 0 || c >= b.cols() || used[static_cast<std::size_t>(c)]) return false;
    used[static_cast<std::size_t>(c)] = 1;
    if (m.edge_flags(i) != b(i, c)) return false;
  }
  return true;
}

bool is_perfect_matching(const BipartiteAdjacency& b, const PairAssignment& m) {
  return b.rows() == b.cols() && is_consistent_assignment(b, m) && m.flagged() == b.rows();
}

PairAssignment max_matching(const BipartiteAdjacency& b) {
  require_square(b);
  HopcroftKarp solver(b);
  solver.run();
  return assignment_from(solver.pair_left());
}

MatchingOrWitness perfect_matching_or_witness(const BipartiteAdjacency& b) {
  require_square(b);
  HopcroftKarp solver(b);
  solver.run();
  const auto& pair_left = solver.pair_left();
  const auto& pair_right = solver.pair_right();
  const auto root = std::find(pair_right.begin(), pair_right.end(), PairAssignment::kUnpaired);
  if (root == pair_right.end()) return assignment_from(pair_left);

  const auto m = static_cast<int>(b.rows());
  std::vector<char> seen_right(static_cast<std::size_t>(m), 0);
  std::vector<char> seen_left(static_cast<std::size_t>(m), 0);
  std::queue<int> queue;
  const int start = static_cast<int>(root - pair_right.begin());
  seen_right[static_cast<std::size_t>(start)] = 1;
  queue.push(start);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int u = 0; u < m; ++u) {
      if (!b(u, v) || seen_left[static_cast<std::size_t>(u)]) continue;
      seen_left[static_cast<std::size_t>(u)] = 1;
      const int mate = pair_left[static_cast<std::size_t>(u)];
      // An unmatched u would close an augmenting path.
      if (mate == PairAssignment::kUnpaired) throw InvariantViolation("matching was not maximum");
      if (!seen_right[static_cast<std::size_t>(mate)]) {
        seen_right[static_cast<std::size_t>(mate)] = 1;
        queue.push(mate);
      }
    }
  }
  HallWitness witness;
  for (int i = 0; i < m; ++i) {
    if (seen_right[static_cast<std::size_t>(i)]) witness.right.push_back(i);
    if (seen_left[static_cast<std::size_t>(i)]) witness.neighbors.push_back(i);
  }
  return witness;
}

PairAssignment pairing_from_permutation(const BipartiteAdjacency& b, const Eigen::VectorXi& perm) {
  require_square(b);
  if (perm.size() != b.rows()) throw InvalidArgument("permutation length must equal side size");
  std::vector<char> used(static_cast<std::size_t>(perm.size()), 0);
  for (Eigen::Index i = 0; i < perm.size(); ++i) {
    if (perm(i) < 0 || perm(i) >= perm.size() || used[static_cast<std::size_t>(perm(i))]) {
      throw InvalidArgument("pairing must be a permutation");
    }
    used[static_cast<std::size_t>(perm(i))] = 1;
  }
  PairAssignment out;
  out.pairs = perm;
  out.edge_flags.resize(perm.size());
  for (Eigen::Index i = 0; i < perm.size(); ++i) out.edge_flags(i) = b(i, perm(i));
  return out;
}

PairAssignment random_pairing(const BipartiteAdjacency& b, Rng& rng) {
  require_square(b);
  const auto perm = random_permutation(static_cast<int>(b.rows()), rng);
  return pairing_from_permutation(
      b, Eigen::Map<const Eigen::VectorXi>(perm.data(), static_cast<Eigen::Index>(perm.size())));
}

BipartiteAdjacency trim_to_exact_degree(const BipartiteAdjacency& b, int degree, Rng& rng) {
  require_square(b);
  BipartiteAdjacency out = b;
  std::vector<int> columns;
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    columns.clear();
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      if (b(r, c)) columns.push_back(static_cast<int>(c));
    }
    const auto have = static_cast<int>(columns.size());
    if (have < degree) {
      throw DegreeDeficit("left vertex " + std::to_string(r) + " has degree " + std::to_string(have) +
                          " < " + std::to_string(degree));
    }
    const auto surplus = static_cast<std::size_t>(have - degree);
    partial_shuffle(std::span<int>(columns), surplus, rng);
    for (std::size_t i = 0; i < surplus; ++i) out(r, columns[i]) = false;
  }
  return out;
}

ReshuffleOutcome reshuffle(const BipartiteAdjacency& b, const PairAssignment& m, int retained,
                           Rng& rng, PairSelection selection) {
  require_square(b);
  if (m.pairs.size() != b.rows() || m.edge_flags.size() != b.rows()) {
    throw InvalidArgument("assignment size must equal side size");
  }
  const auto side = static_cast<int>(b.rows());
  std::vector<int> flagged;
  std::vector<char> right_used(static_cast<std::size_t>(side), 0);
  for (int i = 0; i < side; ++i) {
    if (!m.edge_flags(i)) continue;
    const int c = m.pairs(i);
    if (c < 0 || c >= side || !b(i, c) || right_used[static_cast<std::size_t>(c)]) {
      throw InvalidArgument("flagged pairs must form a matching of the adjacency");
    }
    right_used[static_cast<std::size_t>(c)] = 1;
    flagged.push_back(i);
  }
  if (retained < 0) throw InvalidArgument("retained pair count must be non-negative");
  if (static_cast<int>(flagged.size()) < retained) {
    throw InsufficientMatching("matching has " + std::to_string(flagged.size()) +
                               " edges, fewer than the " + std::to_string(retained) +
                               " to be retained");
  }
  if (selection == PairSelection::Random) {
    partial_shuffle(std::span<int>(flagged), static_cast<std::size_t>(retained), rng);
  }

  ReshuffleOutcome outcome;
  std::vector<char> left_kept(static_cast<std::size_t>(side), 0);
  std::vector<char> right_kept(static_cast<std::size_t>(side), 0);
  for (std::size_t i = static_cast<std::size_t>(retained); i < flagged.size(); ++i) {
    const int u = flagged[i];
    left_kept[static_cast<std::size_t>(u)] = 1;
    right_kept[static_cast<std::size_t>(m.pairs(u))] = 1;
    outcome.kept_pairs.emplace_back(u, m.pairs(u));
  }
  std::sort(outcome.kept_pairs.begin(), outcome.kept_pairs.end());
  for (int i = 0; i < side; ++i) {
    if (!left_kept[static_cast<std::size_t>(i)]) outcome.leftover_left.push_back(i);
    if (!right_kept[static_cast<std::size_t>(i)]) outcome.leftover_right.push_back(i);
  }

  const BipartiteAdjacency leftover = b(outcome.leftover_left, outcome.leftover_right);
  const PairAssignment inner = max_matching(leftover);
  outcome.leftover_matching_size = inner.flagged();
  outcome.success = outcome.leftover_matching_size == static_cast<int>(outcome.leftover_left.size());
  if (outcome.success) {
    PairAssignment full;
    full.pairs = Eigen::VectorXi::Constant(side, PairAssignment::kUnpaired);
    for (const auto& [u, c] : outcome.kept_pairs) full.pairs(u) = c;
    for (Eigen::Index i = 0; i < inner.pairs.size(); ++i) {
      full.pairs(outcome.leftover_left[static_cast<std::size_t>(i)]) =
          outcome.leftover_right[static_cast<std::size_t>(inner.pairs(i))];
    }
    full.edge_flags = full.pairs.array() != PairAssignment::kUnpaired;
    if (!is_perfect_matching(b, full)) throw InvariantViolation("reshuffle produced a non-matching");
    outcome.final_matching = std::move(full);
  }
  return outcome;
}

std::string dump_adjacency(const BipartiteAdjacency& b) {
  std::ostringstream out;
  out << "pair 0 1:";
  for (Eigen::Index r = 0; r < b.rows(); ++r)
    for (Eigen::Index c = 0; c < b.cols(); ++c)
      if (b(r, c)) out << ' ' << r << "->" << c;
  out << '\n';
  return out.str();
}

}  // namespace itf
