#include "coverage/grid.hpp"

namespace coverage {

const char* to_string(Direction d) {
  switch (d) {
    case Direction::West: return "West";
    case Direction::North: return "North";
    case Direction::East: return "East";
    case Direction::South: return "South";
  }
  return "?";
}

std::string to_string(GridPos p) { return "(" + std::to_string(p.col) + "," + std::to_string(p.row) + ")"; }

std::ostream& operator<<(std::ostream& os, GridPos p) { return os << to_string(p); }

}  // namespace coverage
