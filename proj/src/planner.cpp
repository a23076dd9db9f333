#include "coverage/planner.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_set>
#include <limits>
#include <stdexcept>

namespace coverage {

namespace {

bool too_deep(int contour, int cell_size, Energy b_eff) {
  return 2 * static_cast<Energy>(contour) * cell_size > b_eff;
}

}  // namespace

bool adopt_deferred(TreeMap& tree, FrontierStack& frontier, DeferredPool& pool, Energy b_eff,
                    std::set<GridPos>& skipped, int cell_size) {
  if (!frontier.empty()) return false;
  while (auto c = pool.take_best()) {
    if (tree.contains(c->cell)) continue;
    if (too_deep(c->contour, cell_size, b_eff)) {
      skipped.insert(c->cell);
      while (auto rest = pool.take_best())
        if (!tree.contains(rest->cell)) skipped.insert(rest->cell);
      return false;
    }
    tree.add_child(c->parent, c->cell);
    frontier.push(c->cell);
    return true;
  }
  return false;
}

std::optional<GridPos> resume_target(TreeMap& tree, FrontierStack& frontier, DeferredPool& pool, Energy b_eff,
                                     std::set<GridPos>& skipped, int cell_size) {
  for (;;) {
    if (frontier.empty() && !adopt_deferred(tree, frontier, pool, b_eff, skipped, cell_size)) return std::nullopt;
    const GridPos top = *frontier.top();
    if (!too_deep(tree.contour(top), cell_size, b_eff)) return tree.parent(top);
    frontier.pop();
    skipped.insert(top);
  }
}

long long min_paths_bound(std::size_t n, Energy budget) {
  if (n <= 1) return 0;
  if (budget >= kUnlimitedBudget) return 1;
  if (budget <= 0) throw std::invalid_argument("budget must be positive");
  const auto twice_n = 2 * static_cast<long long>(n);
  return (twice_n + budget - 1) / budget;
}

Metrics compute_metrics(const std::vector<Route>& routes, std::size_t n, Energy budget) {
  Metrics m;
  m.num_routes = static_cast<int>(routes.size());
  for (const auto& r : routes) m.total_length += r.length();
  m.n = n;
  m.min_bound = min_paths_bound(n, budget);
  if (m.min_bound > 0)
    m.ratio_paths = static_cast<double>(m.num_routes) / static_cast<double>(m.min_bound);
  else
    m.ratio_paths = m.num_routes == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  if (n >= 2)
    m.ratio_length = static_cast<double>(m.total_length) / static_cast<double>(n);
  else
    m.ratio_length = m.total_length == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  return m;
}

namespace {

/// What the robot has seen: blocked cells and the extent of sensed cells.
/// Distances are breadth-first on that map with every unseen cell taken as
/// free, which never exceeds the true geodesic distance.
class KnownMap {
 public:
  explicit KnownMap(GridPos station) : station_(station), lo_(station), hi_(station) {}

  void observe(GridPos at, const SensorReading& reading) {
    include(at);
    for (const Direction d : kScanOrder) {
      const GridPos q = step(at, d);
      include(q);
      if (reading.at(d) == CellState::Free || !blocked_.insert(q).second) continue;
      if (stale_ || !interior(q) || !absorb(q)) stale_ = true;
    }
  }

  int lower_bound(GridPos q) {
    if (stale_ || !inside(q)) recompute();
    return dist_[slot(q)];
  }

 private:
  void include(GridPos p) {
    lo_ = {std::min(lo_.col, p.col), std::min(lo_.row, p.row)};
    hi_ = {std::max(hi_.col, p.col), std::max(hi_.row, p.row)};
  }

  bool inside(GridPos p) const {
    return p.col >= area_lo_.col && p.col <= area_hi_.col && p.row >= area_lo_.row && p.row <= area_hi_.row;
  }

  bool interior(GridPos p) const {
    return p.col > area_lo_.col && p.col < area_hi_.col && p.row > area_lo_.row && p.row < area_hi_.row;
  }

  std::size_t slot(GridPos p) const {
    return static_cast<std::size_t>(p.row - area_lo_.row) * static_cast<std::size_t>(area_w_) +
           static_cast<std::size_t>(p.col - area_lo_.col);
  }

  // Blocks q in place when no distance changes: that holds unless some cell one
  // step farther out had q as its only neighbour on q's contour.
  bool absorb(GridPos q) {
    const int d = dist_[slot(q)];
    if (d >= 0) {
      for (const Direction dir : kScanOrder) {
        const GridPos r = step(q, dir);
        if (!inside(r) || dist_[slot(r)] != d + 1) continue;
        bool other = false;
        for (const Direction e : kScanOrder) {
          const GridPos t = step(r, e);
          other = other || (t != q && inside(t) && dist_[slot(t)] == d);
        }
        if (!other) return false;
      }
    }
    dist_[slot(q)] = -1;
    return true;
  }

  // Distances stay exact for the unbounded optimistic grid while every known
  // blocked cell is interior to the area; the wide margin limits regrowth.
  void recompute() {
    const int margin = 1 + std::max(hi_.col - lo_.col, hi_.row - lo_.row) / 2;
    area_lo_ = {lo_.col - margin, lo_.row - margin};
    area_hi_ = {hi_.col + margin, hi_.row + margin};
    area_w_ = area_hi_.col - area_lo_.col + 1;
    const int area_h = area_hi_.row - area_lo_.row + 1;
    dist_.assign(static_cast<std::size_t>(area_w_) * static_cast<std::size_t>(area_h), kUnseen);
    for (const GridPos b : blocked_) dist_[slot(b)] = -1;
    std::vector<GridPos> queue{station_};
    dist_[slot(station_)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const GridPos p = queue[head];
      for (const Direction d : kScanOrder) {
        const GridPos q = step(p, d);
        if (!inside(q) || dist_[slot(q)] != kUnseen) continue;
        dist_[slot(q)] = dist_[slot(p)] + 1;
        queue.push_back(q);
      }
    }
    stale_ = false;
  }

  static constexpr int kUnseen = std::numeric_limits<int>::max();

  GridPos station_;
  GridPos lo_;
  GridPos hi_;
  std::unordered_set<GridPos, GridPosHash> blocked_;
  GridPos area_lo_{1, 1};
  GridPos area_hi_{0, 0};
  int area_w_ = 0;
  std::vector<int> dist_;  ///< -1 on blocked cells
  bool stale_ = true;
};

class BudgetedDfs {
 public:
  explicit BudgetedDfs(Harness& world)
      : world_(world),
        cell_size_(world.cell_size()),
        b_eff_(world.ledger().budget),
        tree_(world.station()),
        known_(world.station()) {}

  CoverageResult run() {
    const auto started = std::chrono::steady_clock::now();
    if (world_.position() != world_.station()) throw ContractViolation("robot must start at the station");

    visit(world_.station());
    auto next = next_start();
    while (next) {
      run_route(*next);
      world_.recharge_at_station();
      next = next_start();
    }
    diagnostics_.skipped_events = skip_count_;
    diagnostics_.reparent_events = tree_.reparent_count();
    diagnostics_.deferred_adoptions = adoptions_;

    CoverageResult out;
    out.budget = world_.raw_budget();
    out.effective_budget = b_eff_;
    out.cell_size = cell_size_;
    out.station = world_.station();
    for (const auto& cells : world_.routes()) {
      if (cells.size() < 2) continue;
      out.routes.push_back(Route{static_cast<int>(out.routes.size()) + 1, cells});
    }
    out.covered = first_visits_;
    std::sort(out.covered.begin(), out.covered.end());
    out.skipped_unreachable.assign(skipped_.begin(), skipped_.end());
    out.first_visit_order = std::move(first_visits_);
    out.energy_spent = world_.total_spent();
    out.events = world_.events();
    out.trace = std::move(trace_);
    out.diagnostics = diagnostics_;
    out.metrics = compute_metrics(out.routes, out.covered.size(), out.budget);
    out.tree = std::move(tree_);
    out.metrics.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return out;
  }

 private:
  std::optional<GridPos> next_start() {
    const std::size_t before = skipped_.size();
    const std::size_t tree_before = tree_.size();
    auto next = resume_target(tree_, frontier_, pool_, b_eff_, skipped_, cell_size_);
    skip_count_ += skipped_.size() - before;
    adoptions_ += tree_.size() - tree_before;
    return next;
  }

  long long remaining_moves() const { return world_.ledger().remaining / cell_size_; }

  void visit(GridPos cell) {
    tree_.mark_visited(cell);
    first_visits_.push_back(cell);
    const SensorReading reading = world_.sense_neighbors(cell);
    known_.observe(cell, reading);
    const auto added =
        tree_.record_children(cell, reading, frontier_, [this](GridPos q) { return known_.lower_bound(q); });
    for (const GridPos q : added) pool_.erase(q);
    for (const GridPos q : tree_.node(cell).deferred) pool_.offer(q, cell, tree_.contour(cell) + 1);
    for (const GridPos r : tree_.settle_from(cell)) {
      if (frontier_.contains(r)) ++diagnostics_.frontier_renumberings;
      const auto it = skipped_.find(r);
      if (it != skipped_.end() && !too_deep(tree_.contour(r), cell_size_, b_eff_)) {
        skipped_.erase(it);
        frontier_.push(r);
        ++diagnostics_.requeued_events;
      }
    }
    diagnostics_.peak_frontier = std::max(diagnostics_.peak_frontier, frontier_.size());
    diagnostics_.peak_deferred = std::max(diagnostics_.peak_deferred, pool_.size());
  }

  void move_to(GridPos next) {
    world_.execute_move(direction_to(world_.position(), next));
    trace_.push_back({world_.ledger().route_index, next, remaining_moves(), tree_.contour(next)});
  }

  void run_route(GridPos start) {
    const auto commute = tree_.root_path(start);
    for (std::size_t i = 1; i < commute.size(); ++i) move_to(commute[i]);

    for (;;) {
      if (frontier_.empty()) {
        const std::size_t before = skipped_.size();
        if (adopt_deferred(tree_, frontier_, pool_, b_eff_, skipped_, cell_size_)) ++adoptions_;
        skip_count_ += skipped_.size() - before;
      }
      const GridPos here = world_.position();
      if (frontier_.empty() || remaining_moves() <= tree_.contour(here)) break;
      const GridPos target = *frontier_.top();
      const GridPos anchor = *tree_.parent(target);
      if (anchor == here) {
        frontier_.pop();
        move_to(target);
        visit(target);
      } else if (tree_.is_ancestor(here, anchor)) {
        // The anchor is below the robot after a deferred adoption or a renumbering.
        move_to(tree_.root_path(anchor)[static_cast<std::size_t>(tree_.contour(here)) + 1]);
      } else {
        move_to(*tree_.parent(here));
      }
    }

    auto home = tree_.root_path(world_.position());
    for (auto it = home.rbegin() + 1; it != home.rend(); ++it) move_to(*it);
  }

  Harness& world_;
  int cell_size_;
  Energy b_eff_;
  TreeMap tree_;
  FrontierStack frontier_;
  DeferredPool pool_;
  KnownMap known_;
  std::size_t adoptions_ = 0;
  std::set<GridPos> skipped_;
  std::size_t skip_count_ = 0;
  std::vector<GridPos> first_visits_;
  std::vector<StepRecord> trace_;
  PlanDiagnostics diagnostics_;
};

}  // namespace

CoverageResult plan_coverage(Harness& world) { return BudgetedDfs(world).run(); }

CoverageResult plan_coverage(const Environment& env, Energy budget) {
  Harness world(env, budget);
  return plan_coverage(world);
}

std::vector<GridPos> unbounded_dfs_order(Harness& world) {
  if (world.raw_budget() < kUnlimitedBudget)
    throw std::invalid_argument("unbounded DFS needs a harness with an unlimited budget");
  return plan_coverage(world).first_visit_order;
}

}  // namespace coverage
