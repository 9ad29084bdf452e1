// Reference implementations used only by tests. Each one takes the slow,
// obvious route so it can check the production code path independently.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

namespace oracle {

/// Best matching by exhaustive enumeration over admissible pairs:
/// maximum cardinality first, then minimum cost. Non-finite cost = forbidden.
struct BruteForceAssignment {
  std::size_t cardinality = 0;
  double total_cost = 0.0;
};

inline BruteForceAssignment brute_force_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t rows = cost.size();
  const std::size_t cols = rows == 0 ? 0 : cost[0].size();
  BruteForceAssignment best{0, 0.0};
  bool have = false;

  // Permute over the larger side, pairing index i of the smaller side with perm[i].
  const bool rows_small = rows <= cols;
  const std::size_t small = rows_small ? rows : cols;
  const std::size_t large = rows_small ? cols : rows;
  std::vector<std::size_t> perm(large);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    std::size_t card = 0;
    // Sum in ascending row order to match the production accumulation order.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < small; ++i) {
      const std::size_t r = rows_small ? i : perm[i];
      const std::size_t c = rows_small ? perm[i] : i;
      if (std::isfinite(cost[r][c])) pairs.emplace_back(r, c);
    }
    std::sort(pairs.begin(), pairs.end());
    double total = 0.0;
    for (auto [r, c] : pairs) {
      total += cost[r][c];
      ++card;
    }
    if (!have || card > best.cardinality || (card == best.cardinality && total < best.total_cost)) {
      best = {card, total};
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Plain double loop over (x, y, d) triples.
inline std::vector<std::vector<double>> scalar_l2(const std::vector<std::array<double, 3>>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double diff = pts[i][k] - pts[j][k];
        s += diff * diff;
      }
      out[i][j] = std::sqrt(s);
    }
  }
  return out;
}

/// Connected components (size >= 2) of an adjacency predicate, found by
/// breadth-first search. Each component is a sorted list of vertex indices.
template <typename Adjacent>
std::set<std::vector<std::size_t>> bfs_components(std::size_t n, Adjacent adjacent) {
  std::set<std::vector<std::size_t>> comps;
  std::vector<char> seen(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      comp.push_back(u);
      for (std::size_t v = 0; v < n; ++v) {
        if (!seen[v] && v != u && adjacent(u, v)) {
          seen[v] = 1;
          q.push(v);
        }
      }
    }
    if (comp.size() >= 2) {
      std::sort(comp.begin(), comp.end());
      comps.insert(comp);
    }
  }
  return comps;
}

/// Transitive closure by Floyd-Warshall over a boolean adjacency matrix.
inline std::vector<std::vector<char>> transitive_closure(std::vector<std::vector<char>> reach) {
  const std::size_t n = reach.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
  return reach;
}

}  // namespace oracle
