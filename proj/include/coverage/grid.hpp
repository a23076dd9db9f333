#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace coverage {

/// Integer cell coordinate on the 4-connected grid. Row 0 is the bottom row;
/// North increases the row.
struct GridPos {
  int col = 0;
  int row = 0;

  friend constexpr auto operator<=>(const GridPos&, const GridPos&) = default;
};

enum class Direction : std::uint8_t { West = 0, North = 1, East = 2, South = 3 };

/// Clockwise scan order starting from the west.
inline constexpr std::array<Direction, 4> kScanOrder{Direction::West, Direction::North, Direction::East,
                                                     Direction::South};

constexpr GridPos step(GridPos p, Direction d) {
  switch (d) {
    case Direction::West: return {p.col - 1, p.row};
    case Direction::North: return {p.col, p.row + 1};
    case Direction::East: return {p.col + 1, p.row};
    case Direction::South: return {p.col, p.row - 1};
  }
  return p;
}

constexpr int manhattan(GridPos a, GridPos b) {
  const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  return dc + dr;
}

constexpr bool adjacent(GridPos a, GridPos b) { return manhattan(a, b) == 1; }

/// Direction that takes `from` to the 4-adjacent cell `to`. Precondition: adjacent(from, to).
constexpr Direction direction_to(GridPos from, GridPos to) {
  if (to.col < from.col) return Direction::West;
  if (to.row > from.row) return Direction::North;
  if (to.col > from.col) return Direction::East;
  return Direction::South;
}

const char* to_string(Direction d);
std::string to_string(GridPos p);
std::ostream& operator<<(std::ostream& os, GridPos p);

struct GridPosHash {
  std::size_t operator()(GridPos p) const noexcept {
    const auto c = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.col));
    const auto r = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.row));
    return std::hash<std::uint64_t>{}((c << 32) | r);
  }
};

}  // namespace coverage
