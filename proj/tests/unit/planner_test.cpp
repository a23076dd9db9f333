#include <gtest/gtest.h>

#include <random>

#include "coverage/harness.hpp"
#include "coverage/planner.hpp"
#include "support.hpp"

namespace coverage {
namespace {

std::vector<std::vector<GridPos>> cells_of(const CoverageResult& r) {
  std::vector<std::vector<GridPos>> out;
  for (const auto& route : r.routes) out.push_back(route.cells);
  return out;
}

TEST(PlanCoverage, TwoByTwoWithBudgetEight) {
  const CoverageResult r = plan_coverage(parse_map("..\nS."), 8);
  EXPECT_EQ(cells_of(r), (std::vector<std::vector<GridPos>>{{{0, 0}, {0, 1}, {1, 1}, {0, 1}, {0, 0}, {1, 0}, {0, 0}}}));
  EXPECT_EQ(r.metrics.num_routes, 1);
  EXPECT_EQ(r.metrics.total_length, 6);
}

TEST(PlanCoverage, TwoByTwoWithBudgetFour) {
  const CoverageResult r = plan_coverage(parse_map("..\nS."), 4);
  EXPECT_EQ(cells_of(r), (std::vector<std::vector<GridPos>>{{{0, 0}, {0, 1}, {1, 1}, {0, 1}, {0, 0}},
                                                            {{0, 0}, {1, 0}, {0, 0}}}));
  EXPECT_EQ(r.routes[0].length(), 4);
  EXPECT_EQ(r.routes[1].length(), 2);
  EXPECT_EQ(r.routes[1].index, 2);
  EXPECT_EQ(r.metrics.total_length, 6);
}

TEST(PlanCoverage, OddBudgetBehavesLikeTheEvenOneBelow) {
  const Environment env = parse_map("...\n...\nS..");
  EXPECT_EQ(cells_of(plan_coverage(env, 7)), cells_of(plan_coverage(env, 6)));
  EXPECT_EQ(plan_coverage(env, 7).effective_budget, 6);
}

TEST(PlanCoverage, SingleCell) {
  const CoverageResult r = plan_coverage(parse_map("S"), 10);
  EXPECT_TRUE(r.routes.empty());
  EXPECT_EQ(r.covered, (std::vector<GridPos>{{0, 0}}));
  EXPECT_EQ(r.metrics.num_routes, 0);
}

TEST(PlanCoverage, BudgetTooSmallToLeave) {
  const CoverageResult r = plan_coverage(parse_map("S."), 1);
  EXPECT_TRUE(r.routes.empty());
  EXPECT_EQ(r.skipped_unreachable, (std::vector<GridPos>{{1, 0}}));
}

TEST(PlanCoverage, MustStartAtTheStation) {
  Harness h(parse_map("S."), 8);
  h.execute_move(Direction::East);
  EXPECT_THROW(plan_coverage(h), ContractViolation);
}

TEST(UnboundedDfsOrder, Examples) {
  Harness two(parse_map("..\nS."), kUnlimitedBudget);
  EXPECT_EQ(unbounded_dfs_order(two), (std::vector<GridPos>{{0, 0}, {0, 1}, {1, 1}, {1, 0}}));
  Harness one(parse_map("S"), kUnlimitedBudget);
  EXPECT_EQ(unbounded_dfs_order(one), (std::vector<GridPos>{{0, 0}}));
  Harness bounded(parse_map("S"), 8);
  EXPECT_THROW(unbounded_dfs_order(bounded), std::invalid_argument);
}

TEST(UnboundedDfsOrder, TreeWalkBoundOnOpenGrids) {
  for (int w = 1; w <= 9; ++w)
    for (int h = 1; h <= 9; ++h)
      for (const GridPos s : {GridPos{0, 0}, GridPos{w / 2, h / 2}, GridPos{w - 1, 0}}) {
        const CoverageResult r = plan_coverage(Environment(w, h, s), kUnlimitedBudget);
        const long long n = static_cast<long long>(r.covered.size());
        EXPECT_EQ(n, w * h);
        EXPECT_EQ(r.diagnostics.deferred_adoptions, 0u);
        EXPECT_LE(r.metrics.total_length, 2 * (n - 1)) << w << "x" << h << " from " << s;
      }
}

TEST(UnboundedDfsOrder, WalkBoundWithDeferredCells) {
  // Each adopted deferred cell may add one descent of at most the tree depth.
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const Environment env = testing::random_env(rng, 2 + static_cast<int>(rng() % 10), 2 + static_cast<int>(rng() % 10), 0.3);
    const CoverageResult r = plan_coverage(env, kUnlimitedBudget);
    const long long n = static_cast<long long>(r.covered.size());
    int depth = 0;
    for (const auto& node : r.tree.nodes()) depth = std::max(depth, node.contour);
    const long long extra = 2 * static_cast<long long>(r.diagnostics.deferred_adoptions) * depth;
    EXPECT_LE(r.metrics.total_length, 2 * (n - 1) + extra);
    if (r.diagnostics.deferred_adoptions == 0) {
      EXPECT_LE(r.metrics.total_length, 2 * (n - 1));
    }
  }
}

TEST(ResumeTarget, Examples) {
  std::set<GridPos> skipped;
  DeferredPool pool;

  TreeMap tree({0, 0});
  tree.add_child({0, 0}, {1, 0});
  FrontierStack f;
  f.push({1, 0});
  EXPECT_EQ(resume_target(tree, f, pool, 4, skipped), (GridPos{0, 0}));

  FrontierStack empty;
  EXPECT_FALSE(resume_target(tree, empty, pool, 4, skipped).has_value());

  TreeMap line({0, 0});
  for (int c = 1; c <= 5; ++c) line.add_child({c - 1, 0}, {c, 0});
  FrontierStack deep;
  deep.push({5, 0});
  EXPECT_FALSE(resume_target(line, deep, pool, 8, skipped).has_value());
  EXPECT_EQ(skipped, (std::set<GridPos>{{5, 0}}));
  EXPECT_TRUE(deep.empty());
}

TEST(ResumeTarget, RefillsFromTheDeferredPool) {
  TreeMap tree({0, 0});
  tree.add_child({0, 0}, {1, 0});
  tree.mark_visited({1, 0});
  FrontierStack f;
  DeferredPool pool;
  std::set<GridPos> skipped;
  pool.offer({1, 1}, {1, 0}, 2);
  EXPECT_EQ(resume_target(tree, f, pool, 4, skipped), (GridPos{1, 0}));
  EXPECT_EQ(f.top(), (GridPos{1, 1}));
  EXPECT_EQ(tree.contour({1, 1}), 2);

  FrontierStack g;
  DeferredPool far;
  far.offer({2, 1}, {1, 1}, 3);
  far.offer({2, 2}, {1, 1}, 4);
  EXPECT_FALSE(resume_target(tree, g, far, 4, skipped).has_value());
  EXPECT_TRUE(skipped.contains({2, 1}));
  EXPECT_TRUE(skipped.contains({2, 2}));
  EXPECT_FALSE(tree.contains({2, 1}));
}

TEST(Metrics, MinBoundAndRatios) {
  EXPECT_EQ(min_paths_bound(4, 8), 1);
  EXPECT_EQ(min_paths_bound(64, 32), 4);
  EXPECT_EQ(min_paths_bound(65, 32), 5);
  EXPECT_EQ(min_paths_bound(1, 100), 0);
  const Metrics m = compute_metrics({Route{1, {{0, 0}, {1, 0}, {0, 0}}}, Route{2, {{0, 0}, {0, 1}, {0, 0}}}}, 3, 4);
  EXPECT_EQ(m.num_routes, 2);
  EXPECT_EQ(m.total_length, 4);
  EXPECT_EQ(m.min_bound, 2);
  EXPECT_DOUBLE_EQ(m.ratio_paths, 1.0);
  EXPECT_DOUBLE_EQ(m.ratio_length, 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(compute_metrics({}, 1, 8).ratio_paths, 1.0);
}

struct Corpus {
  Environment env;
  Energy budget;
};

std::vector<Corpus> random_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Corpus> out;
  for (int i = 0; i < count; ++i) {
    const int w = 2 + static_cast<int>(rng() % 11), h = 2 + static_cast<int>(rng() % 11);
    const double density = 0.05 * static_cast<double>(rng() % 8);
    out.push_back({testing::random_env(rng, w, h, density), 2 + static_cast<Energy>(rng() % 40)});
  }
  return out;
}

TEST(PlannerProperties, SafetyAndParityAtEveryStep) {
  for (const auto& [env, b] : random_corpus(37, 300)) {
    const CoverageResult r = plan_coverage(env, b);
    for (const StepRecord& s : r.trace) {
      ASSERT_GE(s.remaining_moves, s.contour) << s.cell;
      ASSERT_EQ((s.remaining_moves - s.contour) % 2, 0) << s.cell;
    }
  }
}

TEST(PlannerProperties, ConditionsAndCompleteness) {
  for (const auto& [env, b] : random_corpus(41, 300)) {
    const CoverageResult r = plan_coverage(env, b);
    const auto reachable = testing::relaxed_reachable(env, r.effective_budget);
    std::set<GridPos> on_routes{env.station()};
    for (const auto& route : r.routes) {
      ASSERT_GE(route.cells.size(), 3u);
      EXPECT_EQ(route.cells.front(), env.station());
      EXPECT_EQ(route.cells.back(), env.station());
      EXPECT_LE(route.length() * env.cell_size(), b);
      for (std::size_t i = 1; i < route.cells.size(); ++i) {
        EXPECT_TRUE(adjacent(route.cells[i - 1], route.cells[i]));
        EXPECT_TRUE(env.is_free(route.cells[i]));
      }
      on_routes.insert(route.cells.begin(), route.cells.end());
    }
    EXPECT_EQ(on_routes, reachable);
    EXPECT_EQ(std::set<GridPos>(r.covered.begin(), r.covered.end()), reachable);
    for (const GridPos p : r.skipped_unreachable) EXPECT_FALSE(reachable.contains(p)) << p;
  }
}

TEST(PlannerProperties, Deterministic) {
  for (const auto& [env, b] : random_corpus(43, 60)) {
    const CoverageResult a = plan_coverage(env, b);
    const CoverageResult c = plan_coverage(env, b);
    EXPECT_EQ(a.routes, c.routes);
    EXPECT_EQ(a.first_visit_order, c.first_visit_order);
  }
}

TEST(PlannerProperties, SameOrderAsTheUnboundedRunOnReachableCells) {
  for (const auto& [env, b] : random_corpus(47, 300)) {
    const CoverageResult r = plan_coverage(env, b);
    Harness unlimited(env, kUnlimitedBudget);
    const auto full = unbounded_dfs_order(unlimited);
    const auto reachable = testing::relaxed_reachable(env, r.effective_budget);
    std::vector<GridPos> restricted;
    for (const GridPos p : full)
      if (reachable.contains(p)) restricted.push_back(p);
    EXPECT_EQ(r.diagnostics.reparent_events, 0u);
    EXPECT_EQ(r.first_visit_order, restricted);
  }
}

TEST(PlannerProperties, FewerRoutesWithMoreBudget) {
  for (const auto& [env, b] : random_corpus(53, 200)) {
    const Energy l = std::max(env.width(), env.height());
    const int k4 = plan_coverage(env, 4 * l).metrics.num_routes;
    const int k6 = plan_coverage(env, 6 * l).metrics.num_routes;
    const int k8 = plan_coverage(env, 8 * l).metrics.num_routes;
    EXPECT_LE(k8, k6) << render_map(env);
    EXPECT_LE(k6, k4) << render_map(env);
  }
}

TEST(PlannerProperties, CellSizeIsAScale) {
  for (const auto& [env, b] : random_corpus(59, 80)) {
    const Environment big(env.width(), env.height(), env.station(), env.blocked_cells(), 3);
    const CoverageResult unit = plan_coverage(env, b);
    const CoverageResult scaled = plan_coverage(big, 3 * b);
    EXPECT_EQ(unit.routes, scaled.routes);
    EXPECT_EQ(scaled.energy_spent, 3 * unit.energy_spent);
  }
}

}  // namespace
}  // namespace coverage
