#include "coverage/treemap.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <utility>

namespace coverage {

void FrontierStack::push(GridPos p) {
  if (!members_.insert(p).second) throw std::logic_error("cell " + to_string(p) + " already on the frontier");
  stack_.push_back(p);
}

std::optional<GridPos> FrontierStack::pop() {
  if (stack_.empty()) return std::nullopt;
  const GridPos p = stack_.back();
  stack_.pop_back();
  members_.erase(p);
  return p;
}

std::optional<GridPos> FrontierStack::top() const {
  if (stack_.empty()) return std::nullopt;
  return stack_.back();
}

std::optional<GridPos> pop_next(FrontierStack& frontier) { return frontier.pop(); }

void DeferredPool::offer(GridPos cell, GridPos parent, int contour) {
  const auto it = by_cell_.find(cell);
  if (it != by_cell_.end()) {
    if (it->second.contour <= contour) return;
    order_.erase({it->second.contour, it->second.seq, cell});
    by_cell_.erase(it);
  }
  const std::uint64_t seq = next_seq_++;
  by_cell_.emplace(cell, Entry{parent, contour, seq});
  order_.insert({contour, seq, cell});
}

void DeferredPool::erase(GridPos cell) {
  const auto it = by_cell_.find(cell);
  if (it == by_cell_.end()) return;
  order_.erase({it->second.contour, it->second.seq, cell});
  by_cell_.erase(it);
}

std::optional<DeferredPool::Candidate> DeferredPool::best() const {
  if (order_.empty()) return std::nullopt;
  const GridPos cell = std::get<2>(*order_.begin());
  const Entry& e = by_cell_.at(cell);
  return Candidate{cell, e.parent, e.contour};
}

std::optional<DeferredPool::Candidate> DeferredPool::take_best() {
  auto c = best();
  if (c) erase(c->cell);
  return c;
}

TreeMap::TreeMap(GridPos root) : root_(root) {
  TreeNode n;
  n.cell = root;
  n.visited = true;
  index_.emplace(root, 0);
  nodes_.push_back(std::move(n));
}

TreeMap TreeMap::restore(std::vector<TreeNode> nodes) {
  if (nodes.empty() || nodes.front().parent) throw std::invalid_argument("tree must start with its root");
  TreeMap tree(nodes.front().cell);
  tree.nodes_ = std::move(nodes);
  tree.index_.clear();
  for (std::size_t i = 0; i < tree.nodes_.size(); ++i)
    if (!tree.index_.emplace(tree.nodes_[i].cell, i).second)
      throw std::invalid_argument("duplicate tree cell " + to_string(tree.nodes_[i].cell));
  for (const auto& n : tree.nodes_) {
    if (n.parent && !tree.contains(*n.parent))
      throw std::invalid_argument("parent of " + to_string(n.cell) + " is not in the tree");
    if (!n.parent && n.cell != tree.root_) throw std::invalid_argument("second root " + to_string(n.cell));
    for (const GridPos c : n.children)
      if (!tree.contains(c)) throw std::invalid_argument("child of " + to_string(n.cell) + " is not in the tree");
  }
  return tree;
}

const TreeNode& TreeMap::node(GridPos p) const {
  const auto it = index_.find(p);
  if (it == index_.end()) throw std::out_of_range("cell " + to_string(p) + " is not in the tree");
  return nodes_[it->second];
}

TreeNode& TreeMap::mutable_node(GridPos p) { return const_cast<TreeNode&>(std::as_const(*this).node(p)); }

void TreeMap::mark_visited(GridPos p) { mutable_node(p).visited = true; }

void TreeMap::attach(GridPos parent, GridPos child) {
  auto& kids = mutable_node(parent).children;
  const auto rank = [parent](GridPos c) { return static_cast<int>(direction_to(parent, c)); };
  kids.insert(std::upper_bound(kids.begin(), kids.end(), child,
                               [&](GridPos a, GridPos b) { return rank(a) < rank(b); }),
              child);
  mutable_node(child).parent = parent;
}

void TreeMap::add_child(GridPos parent, GridPos cell) {
  if (contains(cell)) throw std::logic_error("cell " + to_string(cell) + " is already in the tree");
  if (!adjacent(parent, cell))
    throw std::invalid_argument(to_string(cell) + " is not adjacent to " + to_string(parent));
  const int depth = node(parent).contour + 1;
  index_.emplace(cell, nodes_.size());
  TreeNode n;
  n.cell = cell;
  n.contour = depth;
  nodes_.push_back(std::move(n));
  attach(parent, cell);
}

std::vector<GridPos> TreeMap::record_children(GridPos current, const SensorReading& reading,
                                              FrontierStack& frontier,
                                              const std::function<int(GridPos)>& lower_bound) {
  const int next_contour = contour(current) + 1;
  std::vector<GridPos> added;
  std::vector<GridPos> deferred;
  for (const Direction d : kScanOrder) {
    const GridPos q = step(current, d);
    if (reading.at(d) != CellState::Free || contains(q)) continue;
    const int bound = lower_bound ? lower_bound(q) : manhattan(q, root_);
    if (bound == next_contour) {
      add_child(current, q);
      added.push_back(q);
    } else {
      deferred.push_back(q);
    }
  }
  mutable_node(current).deferred = std::move(deferred);
  for (auto it = added.rbegin(); it != added.rend(); ++it) frontier.push(*it);
  return added;
}

std::vector<GridPos> TreeMap::relax_contours(GridPos u, GridPos w) {
  if (!adjacent(u, w)) throw std::invalid_argument(to_string(w) + " is not adjacent to " + to_string(u));
  const int target = contour(u) + 1;
  const int current = contour(w);
  if (current <= target) return {};

  // contour(u) < contour(w) - 1, so u cannot be inside w's subtree.
  const GridPos old_parent = *parent(w);
  auto& siblings = mutable_node(old_parent).children;
  siblings.erase(std::find(siblings.begin(), siblings.end(), w));
  attach(u, w);
  ++reparent_count_;

  const int delta = current - target;
  std::vector<GridPos> renumbered;
  std::vector<GridPos> pending{w};
  while (!pending.empty()) {
    const GridPos p = pending.back();
    pending.pop_back();
    auto& n = mutable_node(p);
    n.contour -= delta;
    renumbered.push_back(p);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) pending.push_back(*it);
  }
  return renumbered;
}

std::vector<GridPos> TreeMap::settle_from(GridPos u) {
  std::vector<GridPos> renumbered;
  std::unordered_set<GridPos, GridPosHash> seen;
  std::deque<GridPos> work{u};
  while (!work.empty()) {
    const GridPos c = work.front();
    work.pop_front();
    if (!visited(c)) continue;
    for (const Direction d : kScanOrder) {
      const GridPos m = step(c, d);
      if (!contains(m)) continue;
      for (const GridPos r : relax_contours(c, m)) {
        if (seen.insert(r).second) renumbered.push_back(r);
        work.push_back(r);
      }
    }
  }
  return renumbered;
}

std::vector<GridPos> TreeMap::root_path(GridPos p) const {
  std::vector<GridPos> path;
  path.reserve(static_cast<std::size_t>(contour(p)) + 1);
  std::optional<GridPos> at = p;
  while (at) {
    path.push_back(*at);
    at = node(*at).parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool TreeMap::is_ancestor(GridPos ancestor, GridPos p) const {
  const int depth = contour(ancestor);
  GridPos at = p;
  while (contour(at) > depth) at = *parent(at);
  return at == ancestor;
}

}  // namespace coverage
