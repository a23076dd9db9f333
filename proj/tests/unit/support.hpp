#pragma once

// Oracles written independently of the library, plus small fixtures.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coverage/environment.hpp"
#include "coverage/grid.hpp"

namespace coverage::testing {

/// Geodesic distances by repeated relaxation to a fixpoint (no queue, no BFS).
/// Unreachable and blocked cells are absent.
inline std::map<GridPos, int> relaxed_distances(const Environment& env) {
  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  std::map<GridPos, int> d;
  for (int r = 0; r < env.height(); ++r)
    for (int c = 0; c < env.width(); ++c)
      if (env.is_free({c, r})) d[{c, r}] = kInf;
  d[env.station()] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& [p, dist] : d) {
      for (const GridPos q : {GridPos{p.col - 1, p.row}, GridPos{p.col + 1, p.row}, GridPos{p.col, p.row - 1},
                              GridPos{p.col, p.row + 1}}) {
        const auto it = d.find(q);
        if (it != d.end() && it->second + 1 < dist) {
          dist = it->second + 1;
          changed = true;
        }
      }
    }
  }
  std::erase_if(d, [](const auto& kv) { return kv.second >= kInf; });
  return d;
}

/// Cells within floor(B/2) moves (times the cell size) of the station.
inline std::set<GridPos> relaxed_reachable(const Environment& env, long long budget) {
  std::set<GridPos> out;
  for (const auto& [p, d] : relaxed_distances(env))
    if (static_cast<long long>(d) * env.cell_size() <= budget / 2) out.insert(p);
  return out;
}

struct BruteOptimum {
  long long k_opt = 0;
  long long len_opt = 0;
};

/// Optimum by enumerating every closed walk from the station of at most B
/// moves, keeping the shortest walk per covered set, then a set-cover DP.
/// Only for a handful of cells and small B.
inline BruteOptimum enumerate_optimum(const Environment& env, long long budget) {
  const auto targets = relaxed_reachable(env, budget);
  std::map<GridPos, int> bit;
  for (const GridPos p : targets) bit.emplace(p, static_cast<int>(bit.size()));
  const std::uint32_t full = (1u << bit.size()) - 1;
  const GridPos s = env.station();

  std::map<std::uint32_t, long long> best_walk;  // covered mask -> shortest closed walk
  std::vector<GridPos> path{s};
  const auto dfs = [&](auto&& self, GridPos at, std::uint32_t mask, long long used) -> void {
    if (at == s && used > 0) {
      auto [it, inserted] = best_walk.emplace(mask, used);
      if (!inserted) it->second = std::min(it->second, used);
    }
    if (used == budget) return;
    for (const Direction d : kScanOrder) {
      const GridPos q = step(at, d);
      if (!bit.contains(q)) continue;
      self(self, q, mask | (1u << bit.at(q)), used + 1);
    }
  };
  dfs(dfs, s, 1u << bit.at(s), 0);

  BruteOptimum out;
  if (full == (1u << bit.at(s))) return out;
  constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> fewest(full + 1, kInf), shortest(full + 1, kInf);
  fewest[1u << bit.at(s)] = 0;
  shortest[1u << bit.at(s)] = 0;
  for (std::uint32_t m = 0; m <= full; ++m) {
    if (fewest[m] < kInf)
      for (const auto& [w, len] : best_walk) fewest[m | w] = std::min(fewest[m | w], fewest[m] + 1);
    if (shortest[m] < kInf)
      for (const auto& [w, len] : best_walk) shortest[m | w] = std::min(shortest[m | w], shortest[m] + len);
  }
  out.k_opt = fewest[full];
  out.len_opt = shortest[full];
  return out;
}

/// Random map with the station at a random free cell; independent of generate_env.
inline Environment random_env(std::mt19937_64& rng, int width, int height, double density) {
  std::uniform_int_distribution<int> col(0, width - 1), row(0, height - 1);
  std::bernoulli_distribution blocked(density);
  const GridPos s{col(rng), row(rng)};
  std::vector<GridPos> cells;
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      if (GridPos{c, r} != s && blocked(rng)) cells.push_back({c, r});
  return Environment(width, height, s, cells);
}

}  // namespace coverage::testing
