#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <tuple>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coverage/grid.hpp"
#include "coverage/harness.hpp"

namespace coverage {

/// LIFO of discovered-but-unvisited cells. The top is the next DFS target.
class FrontierStack {
 public:
  void push(GridPos p);
  std::optional<GridPos> pop();
  std::optional<GridPos> top() const;

  bool empty() const { return stack_.empty(); }
  std::size_t size() const { return stack_.size(); }
  bool contains(GridPos p) const { return members_.contains(p); }
  /// Bottom to top.
  const std::vector<GridPos>& entries() const { return stack_; }

 private:
  std::vector<GridPos> stack_;
  std::unordered_set<GridPos, GridPosHash> members_;
};

std::optional<GridPos> pop_next(FrontierStack& frontier);

/// Sensed free cells kept out of the tree because their distance could not
/// be confirmed when they were seen. Each holds its best known parent.
class DeferredPool {
 public:
  struct Candidate {
    GridPos cell;
    GridPos parent;
    int contour = 0;  ///< contour(parent) + 1
  };

  /// Records `cell` under `parent`; keeps the lower contour if already present.
  void offer(GridPos cell, GridPos parent, int contour);
  void erase(GridPos cell);
  /// Removes and returns the candidate with the lowest contour (oldest first on ties).
  std::optional<Candidate> take_best();
  std::optional<Candidate> best() const;

  bool empty() const { return by_cell_.empty(); }
  std::size_t size() const { return by_cell_.size(); }
  bool contains(GridPos cell) const { return by_cell_.contains(cell); }

 private:
  struct Entry {
    GridPos parent;
    int contour;
    std::uint64_t seq;
  };
  using Key = std::tuple<int, std::uint64_t, GridPos>;

  std::unordered_map<GridPos, Entry, GridPosHash> by_cell_;
  std::set<Key> order_;
  std::uint64_t next_seq_ = 0;
};

struct TreeNode {
  GridPos cell;
  std::optional<GridPos> parent;  ///< empty only for the root
  std::vector<GridPos> children;  ///< kept in West, North, East, South order around the node
  std::vector<GridPos> deferred;  ///< free neighbours seen here but not adopted (see record_children)
  int contour = 0;                ///< depth in the tree
  bool visited = false;
};

/// Exploration tree built on the fly. Every edge joins a cell on contour d to
/// a 4-adjacent cell on contour d + 1, so a node's contour is its depth.
class TreeMap {
 public:
  explicit TreeMap(GridPos root);

  /// Rebuilds a tree from serialized nodes without re-deriving contours, so a
  /// tampered tree can still be inspected. The first node must be the root.
  /// Throws std::invalid_argument on duplicate cells or dangling links.
  static TreeMap restore(std::vector<TreeNode> nodes);

  GridPos root() const { return root_; }
  bool contains(GridPos p) const { return index_.contains(p); }
  const TreeNode& node(GridPos p) const;
  int contour(GridPos p) const { return node(p).contour; }
  std::optional<GridPos> parent(GridPos p) const { return node(p).parent; }
  bool visited(GridPos p) const { return node(p).visited; }
  void mark_visited(GridPos p);

  std::size_t size() const { return nodes_.size(); }
  /// Nodes in the order they entered the tree.
  const std::vector<TreeNode>& nodes() const { return nodes_; }

  /// Adds `cell` as a new leaf under `parent`. `cell` must be new and 4-adjacent to `parent`.
  void add_child(GridPos parent, GridPos cell);

  /// Scans the Free neighbours of `current` that are not yet in the tree,
  /// West, North, East, South. A neighbour whose distance lower bound equals
  /// contour(current) + 1 provably lies on the next contour and becomes a
  /// child; the new children are pushed so that the westmost ends up on top
  /// and are returned in scan order. Every other such neighbour is listed in
  /// node(current).deferred instead.
  ///
  /// Without a bound, the Manhattan distance to the root is used.
  std::vector<GridPos> record_children(GridPos current, const SensorReading& reading, FrontierStack& frontier,
                                       const std::function<int(GridPos)>& lower_bound = {});

  /// If contour(w) > contour(u) + 1, re-parents w under u and lowers the
  /// contour of w and of its whole subtree by the same amount. Returns the
  /// renumbered cells (w first, then its subtree in preorder), or nothing.
  std::vector<GridPos> relax_contours(GridPos u, GridPos w);

  /// Relaxes the tree neighbours of `u`, then keeps relaxing around every
  /// renumbered visited cell until no visited cell has a tree neighbour more
  /// than one contour deeper. Returns each renumbered cell once.
  std::vector<GridPos> settle_from(GridPos u);

  /// Tree path from the root to `p`; its length in moves equals contour(p).
  std::vector<GridPos> root_path(GridPos p) const;

  /// True if `ancestor` lies on the root path of `p` (a node is its own ancestor).
  bool is_ancestor(GridPos ancestor, GridPos p) const;

  /// Number of re-parenting operations performed so far.
  std::size_t reparent_count() const { return reparent_count_; }

 private:
  TreeNode& mutable_node(GridPos p);
  void attach(GridPos parent, GridPos child);

  GridPos root_;
  std::vector<TreeNode> nodes_;
  std::unordered_map<GridPos, std::size_t, GridPosHash> index_;
  std::size_t reparent_count_ = 0;
};

}  // namespace coverage
