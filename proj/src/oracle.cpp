#include "coverage/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace coverage {

namespace {

constexpr std::size_t kMaxOracleStates = std::size_t{1} << 24;

struct SearchSpace {
  std::vector<GridPos> cells;   // station first
  std::vector<int> dist;        // geodesic distance per cell index
  std::vector<std::vector<int>> neighbours;
  int moves = 0;                // usable moves per charge
  std::size_t masks = 0;

  std::size_t key(int pos, std::uint32_t mask, int rem) const {
    return ((static_cast<std::size_t>(rem) * cells.size() + static_cast<std::size_t>(pos)) * masks) + mask;
  }
  std::size_t size() const { return static_cast<std::size_t>(moves + 1) * cells.size() * masks; }
  int pos_of(std::size_t k) const { return static_cast<int>((k / masks) % cells.size()); }
  std::uint32_t mask_of(std::size_t k) const { return static_cast<std::uint32_t>(k % masks); }
  int rem_of(std::size_t k) const { return static_cast<int>(k / masks / cells.size()); }
};

SearchSpace build_space(const Environment& env, Energy budget) {
  SearchSpace s;
  const auto contours = geodesic_contours(env, effective_budget(budget, env.cell_size()));
  if (contours.size() > kOracleCellCap)
    throw InstanceTooLarge("oracle supports at most " + std::to_string(kOracleCellCap) + " reachable cells, got " +
                           std::to_string(contours.size()));
  s.cells.push_back(env.station());
  for (const auto& [cell, d] : contours)
    if (cell != env.station()) s.cells.push_back(cell);
  for (const GridPos c : s.cells) s.dist.push_back(contours.at(c));
  s.neighbours.resize(s.cells.size());
  for (std::size_t i = 0; i < s.cells.size(); ++i)
    for (std::size_t j = 0; j < s.cells.size(); ++j)
      if (adjacent(s.cells[i], s.cells[j])) s.neighbours[i].push_back(static_cast<int>(j));
  s.moves = static_cast<int>(effective_budget(budget, env.cell_size()) / env.cell_size());
  s.masks = std::size_t{1} << s.cells.size();
  if (s.size() > kMaxOracleStates) throw InstanceTooLarge("oracle state space too large for this budget");
  return s;
}

std::vector<Route> witness_routes(const SearchSpace& s, const std::vector<std::int32_t>& pred, std::size_t goal) {
  std::vector<std::size_t> chain{goal};
  while (pred[chain.back()] >= 0) chain.push_back(static_cast<std::size_t>(pred[chain.back()]));
  std::reverse(chain.begin(), chain.end());

  std::vector<Route> routes;
  std::vector<GridPos> current{s.cells[0]};
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const int pos = s.pos_of(chain[i]);
    if (pos == s.pos_of(chain[i - 1])) {  // recharge
      if (current.size() > 1) routes.push_back(Route{static_cast<int>(routes.size()) + 1, current});
      current = {s.cells[0]};
    } else {
      current.push_back(s.cells[static_cast<std::size_t>(pos)]);
    }
  }
  return routes;
}

}  // namespace

OptimalComponent brute_force_optimal(const Environment& env, Energy budget, Objective objective) {
  const SearchSpace s = build_space(env, budget);
  const auto full = static_cast<std::uint32_t>(s.masks - 1);
  const std::size_t start = s.key(0, 1u, s.moves);
  const std::size_t goal = s.key(0, full, s.moves);

  // Both objectives have 0/1 edge costs: moves cost 1 for length, recharges cost 1 for routes.
  const std::int32_t move_cost = objective == Objective::Length ? 1 : 0;
  const std::int32_t recharge_cost = objective == Objective::Routes ? 1 : 0;
  constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max();
  std::vector<std::int32_t> cost(s.size(), kInf);
  std::vector<std::int32_t> pred(s.size(), -1);
  std::deque<std::size_t> open{start};
  cost[start] = 0;

  const auto relax = [&](std::size_t from, std::size_t to, std::int32_t w) {
    if (cost[from] + w >= cost[to]) return;
    cost[to] = cost[from] + w;
    pred[to] = static_cast<std::int32_t>(from);
    if (w == 0)
      open.push_front(to);
    else
      open.push_back(to);
  };

  while (!open.empty()) {
    const std::size_t k = open.front();
    open.pop_front();
    if (k == goal) break;
    const int pos = s.pos_of(k);
    const std::uint32_t mask = s.mask_of(k);
    const int rem = s.rem_of(k);
    for (const int q : s.neighbours[static_cast<std::size_t>(pos)]) {
      if (rem - 1 < s.dist[static_cast<std::size_t>(q)]) continue;
      relax(k, s.key(q, mask | (1u << q), rem - 1), move_cost);
    }
    if (pos == 0 && rem < s.moves) relax(k, s.key(0, mask, s.moves), recharge_cost);
  }
  if (cost[goal] == kInf) throw std::logic_error("oracle found no covering route set");
  return OptimalComponent{cost[goal], witness_routes(s, pred, goal)};
}

OptimalSolution solve_optimal(const Environment& env, Energy budget) {
  auto routes = brute_force_optimal(env, budget, Objective::Routes);
  auto length = brute_force_optimal(env, budget, Objective::Length);
  return OptimalSolution{routes.value, length.value, std::move(routes.witness), std::move(length.witness)};
}

Rational min_lower_bound(std::size_t n, Energy budget) {
  if (n < 1 || budget < 2) throw std::invalid_argument("min_lower_bound needs n >= 1 and B >= 2");
  const auto num = 2 * static_cast<long long>(n);
  const long long g = std::gcd(num, budget);
  return Rational{num / g, budget / g};
}

long long closed_walk_route_bound(std::size_t n, Energy budget) {
  if (n <= 1) return 0;
  if (budget < 2) throw std::invalid_argument("budget must be at least 2");
  const auto others = static_cast<long long>(n) - 1;
  return (others + budget - 2) / (budget - 1);
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* ValidationReport::find(const std::string& name) const {
  const auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

namespace {

Check fail(std::string name, std::string detail) { return Check{std::move(name), false, std::move(detail)}; }

Check check_endpoints(const Environment& env, const CoverageResult& r) {
  for (const auto& route : r.routes) {
    if (route.cells.empty() || route.cells.front() != env.station() || route.cells.back() != env.station())
      return fail("endpoints", "route " + std::to_string(route.index) + " does not start and end at the station");
  }
  return {"endpoints", true, ""};
}

Check check_lengths(const Environment& env, Energy budget, const CoverageResult& r) {
  for (const auto& route : r.routes) {
    if (route.length() * env.cell_size() > budget)
      return fail("route_length", "route " + std::to_string(route.index) + " has length " +
                                      std::to_string(route.length()) + " > B = " + std::to_string(budget));
  }
  return {"route_length", true, ""};
}

Check check_coverage(const std::vector<GridPos>& reachable, const CoverageResult& r) {
  std::set<GridPos> on_routes;
  for (const auto& route : r.routes) on_routes.insert(route.cells.begin(), route.cells.end());
  on_routes.insert(r.station);  // the robot starts there
  const std::set<GridPos> covered(r.covered.begin(), r.covered.end());
  for (const GridPos c : reachable)
    if (!on_routes.contains(c)) return fail("coverage", "reachable cell " + to_string(c) + " is not on any route");
  for (const GridPos c : reachable)
    if (!covered.contains(c)) return fail("coverage", "reachable cell " + to_string(c) + " missing from covered set");
  const std::set<GridPos> target(reachable.begin(), reachable.end());
  for (const GridPos c : covered)
    if (!on_routes.contains(c)) return fail("coverage", "covered cell " + to_string(c) + " is not on any route");
  for (const GridPos c : on_routes)
    if (!target.contains(c)) return fail("coverage", "route visits non-reachable cell " + to_string(c));
  return {"coverage", true, ""};
}

Check check_steps(const Environment& env, const CoverageResult& r) {
  for (const auto& route : r.routes) {
    for (std::size_t i = 0; i < route.cells.size(); ++i) {
      const GridPos c = route.cells[i];
      if (!env.is_free(c))
        return fail("adjacency", "route " + std::to_string(route.index) + " enters non-free cell " + to_string(c));
      if (i > 0 && !adjacent(route.cells[i - 1], c))
        return fail("adjacency", "route " + std::to_string(route.index) + " jumps from " +
                                     to_string(route.cells[i - 1]) + " to " + to_string(c));
    }
  }
  return {"adjacency", true, ""};
}

Check check_ledger(const Environment& env, const CoverageResult& r) {
  long long moves = 0;
  for (const auto& route : r.routes) moves += route.length();
  if (moves * env.cell_size() != r.energy_spent)
    return fail("ledger", "routes account for " + std::to_string(moves * env.cell_size()) +
                              " energy units, ledger recorded " + std::to_string(r.energy_spent));
  if (r.metrics.num_routes != static_cast<int>(r.routes.size()) || r.metrics.total_length != moves)
    return fail("ledger", "metrics disagree with the route list");
  return {"ledger", true, ""};
}

Check check_tree(const CoverageResult& r) {
  const auto& nodes = r.tree.nodes();
  std::size_t edges = 0;
  for (const auto& n : nodes) {
    if (!n.parent) {
      if (n.cell != r.station || n.contour != 0) return fail("tree", "root must be the station at contour 0");
      continue;
    }
    ++edges;
    if (!r.tree.contains(*n.parent)) return fail("tree", to_string(n.cell) + " has an unknown parent");
    const auto& p = r.tree.node(*n.parent);
    if (!adjacent(p.cell, n.cell)) return fail("tree", to_string(n.cell) + " is not adjacent to its parent");
    if (n.contour != p.contour + 1)
      return fail("tree", to_string(n.cell) + " has contour " + std::to_string(n.contour) + " under a parent at " +
                              std::to_string(p.contour));
    if (std::find(p.children.begin(), p.children.end(), n.cell) == p.children.end())
      return fail("tree", to_string(n.cell) + " is missing from its parent's children");
  }
  if (nodes.size() != edges + 1) return fail("tree", "node count is not edge count + 1");
  return {"tree", true, ""};
}

Check check_contours(const Environment& env, const CoverageResult& r) {
  const auto dist = bfs_distances(env);
  for (const auto& n : r.tree.nodes()) {
    if (!n.visited) continue;
    if (!env.is_free(n.cell)) return fail("contours", "visited tree cell " + to_string(n.cell) + " is not free");
    const int d = dist[env.index(n.cell)];
    if (n.contour != d)
      return fail("contours", to_string(n.cell) + " has contour " + std::to_string(n.contour) +
                                  ", geodesic distance is " + std::to_string(d));
  }
  return {"contours", true, ""};
}

Check check_depth(const Environment& env, Energy b_eff, const CoverageResult& r) {
  const Energy limit = b_eff / (2 * env.cell_size());
  for (const auto& n : r.tree.nodes())
    if (n.visited && n.contour > limit)
      return fail("depth", to_string(n.cell) + " at contour " + std::to_string(n.contour) + " exceeds " +
                               std::to_string(limit));
  return {"depth", true, ""};
}

Check check_skipped(const std::vector<GridPos>& reachable, const CoverageResult& r) {
  const std::set<GridPos> target(reachable.begin(), reachable.end());
  for (const GridPos c : r.skipped_unreachable)
    if (target.contains(c)) return fail("skipped", "skipped cell " + to_string(c) + " is reachable");
  return {"skipped", true, ""};
}

}  // namespace

ValidationReport validate_result(const Environment& env, Energy budget, const CoverageResult& result) {
  const Energy b_eff = effective_budget(budget, env.cell_size());
  const auto reachable = reachable_set(env, b_eff);
  ValidationReport report;
  report.checks.push_back(check_endpoints(env, result));
  report.checks.push_back(check_lengths(env, budget, result));
  report.checks.push_back(check_coverage(reachable, result));
  report.checks.push_back(check_steps(env, result));
  report.checks.push_back(check_ledger(env, result));
  report.checks.push_back(check_tree(result));
  report.checks.push_back(check_contours(env, result));
  report.checks.push_back(check_depth(env, b_eff, result));
  report.checks.push_back(check_skipped(reachable, result));
  return report;
}

}  // namespace coverage
