#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "coverage/environment.hpp"
#include "coverage/harness.hpp"
#include "coverage/treemap.hpp"

namespace coverage {

/// One charge-to-charge path. Starts and ends at the station.
struct Route {
  int index = 0;  ///< 1-based
  std::vector<GridPos> cells;

  long long length() const { return cells.empty() ? 0 : static_cast<long long>(cells.size()) - 1; }
  friend bool operator==(const Route&, const Route&) = default;
};

/// Robot state after each executed move, kept for the energy invariants.
struct StepRecord {
  int route = 0;
  GridPos cell;
  long long remaining_moves = 0;
  int contour = 0;
};

struct PlanDiagnostics {
  std::size_t reparent_events = 0;          ///< tree re-parentings of any node
  std::size_t deferred_adoptions = 0;       ///< cells adopted from the deferred pool
  std::size_t frontier_renumberings = 0;    ///< renumberings that touched a cell on the frontier
  std::size_t skipped_events = 0;           ///< cells set aside as too deep for the budget
  std::size_t requeued_events = 0;          ///< set-aside cells put back after their contour dropped
  std::size_t peak_frontier = 0;
  std::size_t peak_deferred = 0;

  /// True when the frontier was disturbed in a way that can change the first-visit order.
  bool frontier_disturbed() const { return frontier_renumberings + skipped_events + requeued_events > 0; }
};

struct Metrics {
  int num_routes = 0;
  long long total_length = 0;  ///< moves over all routes
  std::size_t n = 0;           ///< covered cells, station included
  long long min_bound = 0;     ///< ceil(2n/B), 0 when only the station is covered
  double ratio_paths = 0.0;    ///< num_routes / min_bound
  double ratio_length = 0.0;   ///< total_length / n
  double wall_ms = 0.0;        ///< volatile
};

struct CoverageResult {
  Energy budget = 0;
  Energy effective_budget = 0;
  int cell_size = 1;
  GridPos station;
  std::vector<Route> routes;
  TreeMap tree{GridPos{}};
  std::vector<GridPos> covered;              ///< sorted
  std::vector<GridPos> skipped_unreachable;  ///< sorted
  std::vector<GridPos> first_visit_order;
  Energy energy_spent = 0;                   ///< harness ledger total
  Metrics metrics;
  std::vector<MoveEvent> events;
  std::vector<StepRecord> trace;
  PlanDiagnostics diagnostics;
};

/// Budgeted online DFS coverage. The robot starts at the station; each route
/// commutes along the tree to where the DFS left off, continues the DFS while
/// the remaining energy exceeds the depth of the current cell, then returns
/// along the tree and recharges.
///
/// A sensed cell joins the tree only once its geodesic distance is certain:
/// either it matches the distance on the map the robot has seen so far with
/// unseen cells taken as free, or it is the closest deferred cell at a moment
/// when the frontier is empty. Contours are therefore exact when assigned.
CoverageResult plan_coverage(Harness& world);
CoverageResult plan_coverage(const Environment& env, Energy budget);

/// First-visit order of the same DFS run without an energy constraint.
/// The harness must have been created with kUnlimitedBudget.
std::vector<GridPos> unbounded_dfs_order(Harness& world);

/// Adopts the best deferred candidate into the tree and onto the frontier
/// when the frontier holds no cell. A best candidate too deep for the budget
/// means every candidate is, so the whole pool moves into `skipped`.
/// Returns false when nothing was adopted.
bool adopt_deferred(TreeMap& tree, FrontierStack& frontier, DeferredPool& pool, Energy b_eff,
                    std::set<GridPos>& skipped, int cell_size = 1);

/// Finds where the next route starts. Frontier cells whose round trip along
/// the tree exceeds the effective budget (2 * contour * cell_size > b_eff) are
/// moved into `skipped`, and an empty frontier is refilled by adopt_deferred.
/// Returns the parent of the resulting top, or nothing once both are empty.
std::optional<GridPos> resume_target(TreeMap& tree, FrontierStack& frontier, DeferredPool& pool, Energy b_eff,
                                     std::set<GridPos>& skipped, int cell_size = 1);

/// ceil(2n/B), clamped to 0 when n <= 1.
long long min_paths_bound(std::size_t n, Energy budget);

Metrics compute_metrics(const std::vector<Route>& routes, std::size_t n, Energy budget);

}  // namespace coverage
