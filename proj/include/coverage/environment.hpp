#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coverage/grid.hpp"

namespace coverage {

/// Ground-truth grid world. Immutable after construction; the online planner
/// never sees this type directly (see Harness).
class Environment {
 public:
  Environment(int width, int height, GridPos station, const std::vector<GridPos>& blocked = {},
              int cell_size = 1);

  int width() const { return width_; }
  int height() const { return height_; }
  int cell_size() const { return cell_size_; }
  GridPos station() const { return station_; }

  bool in_bounds(GridPos p) const {
    return p.col >= 0 && p.row >= 0 && p.col < width_ && p.row < height_;
  }
  bool is_blocked(GridPos p) const { return in_bounds(p) && blocked_[index(p)]; }
  bool is_free(GridPos p) const { return in_bounds(p) && !blocked_[index(p)]; }

  /// Obstacles in row-major order from the bottom row.
  std::vector<GridPos> blocked_cells() const;
  std::size_t free_count() const;

  std::size_t index(GridPos p) const {
    return static_cast<std::size_t>(p.row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(p.col);
  }

  friend bool operator==(const Environment&, const Environment&) = default;

 private:
  int width_;
  int height_;
  GridPos station_;
  int cell_size_;
  std::vector<bool> blocked_;
};

enum class ParseErrorKind { EmptyMap, MissingStation, MultipleStations, RaggedRows, IllegalCharacter };

class ParseError : public std::runtime_error {
 public:
  /// `line` and `column` are 1-based positions in the input text (0 when not applicable).
  ParseError(ParseErrorKind kind, int line, int column, const std::string& what);

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ParseErrorKind kind_;
  int line_;
  int column_;
};

/// Parses the ASCII map format: rows over {'.', '#', 'S'}, the last line is row 0.
/// A single trailing newline is accepted.
Environment parse_map(std::string_view text);

/// Inverse of parse_map for canonical maps (LF line endings, trailing newline).
std::string render_map(const Environment& env);

Environment load_map_file(const std::string& path);

/// Deterministic random map: station at (0,0), every other cell blocked
/// independently with probability `obstacle_density`.
Environment generate_env(int width, int height, double obstacle_density, std::uint64_t seed);

/// BFS distances (in moves) from the station over free cells; -1 marks
/// unreachable or blocked cells. Indexed by Environment::index.
std::vector<int> bfs_distances(const Environment& env);

/// Cells satisfying the reachability definition: free, connected to the
/// station, and with geodesic distance (times cell size) at most floor(B/2).
std::vector<GridPos> reachable_set(const Environment& env, long long budget);

/// Geodesic distance of every reachable cell.
std::map<GridPos, int> geodesic_contours(const Environment& env, long long budget);

}  // namespace coverage
