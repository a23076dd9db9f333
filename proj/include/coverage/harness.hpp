#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "coverage/environment.hpp"
#include "coverage/grid.hpp"

namespace coverage {

/// Energy is measured in distance units; one move costs the cell size.
using Energy = long long;

inline constexpr Energy kUnlimitedBudget = std::numeric_limits<Energy>::max() / 4;

/// Largest usable budget not exceeding `budget` that is an even number of
/// moves. An odd move budget loses one move so that every route can end
/// exactly at the station.
constexpr Energy effective_budget(Energy budget, int cell_size = 1) {
  if (budget >= kUnlimitedBudget) return kUnlimitedBudget;
  if (budget <= 0) return 0;
  const Energy moves = budget / cell_size;
  return (moves - moves % 2) * cell_size;
}

enum class CellState : std::uint8_t { Free, Obstacle, Boundary };

const char* to_string(CellState s);

/// What the obstacle sensor reports, indexed in West, North, East, South order.
struct SensorReading {
  std::array<CellState, 4> cells{CellState::Boundary, CellState::Boundary, CellState::Boundary,
                                 CellState::Boundary};

  CellState at(Direction d) const { return cells[static_cast<std::size_t>(d)]; }
  friend bool operator==(const SensorReading&, const SensorReading&) = default;
};

struct EnergyLedger {
  Energy budget = 0;     ///< usable budget per charge (already parity-adjusted)
  Energy remaining = 0;  ///< 0 <= remaining <= budget
  int route_index = 1;   ///< 1-based
  long long steps_this_route = 0;
};

struct MoveEvent {
  int route = 0;
  long long step = 0;  ///< 1-based within the route
  GridPos from;
  GridPos to;
  Energy b_remain = 0;
};

struct SenseRecord {
  GridPos at;
  SensorReading reading;
};

/// Raised when the caller breaks the harness protocol, e.g. sensing a cell
/// other than the robot's own or recharging away from the station.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class MoveErrorKind { MoveIntoObstacle, MoveOffGrid, EnergyExhausted };

class MoveError : public std::runtime_error {
 public:
  MoveError(MoveErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  MoveErrorKind kind() const { return kind_; }

 private:
  MoveErrorKind kind_;
};

/// Mediates every interaction between a planner and the ground-truth world.
/// A planner only ever learns the robot's position and the state of the four
/// neighbours of the cell it currently occupies.
class Harness {
 public:
  /// `budget` is the raw per-charge energy budget; the ledger applies the
  /// even-move normalisation. Pass kUnlimitedBudget for an unconstrained robot.
  Harness(Environment env, Energy budget);

  GridPos position() const { return position_; }
  GridPos station() const { return env_.station(); }
  int cell_size() const { return env_.cell_size(); }
  Energy raw_budget() const { return raw_budget_; }

  SensorReading sense_neighbors(GridPos pos);
  GridPos execute_move(Direction dir);
  const EnergyLedger& recharge_at_station();

  const EnergyLedger& ledger() const { return ledger_; }
  Energy total_spent() const { return total_spent_; }

  /// Per-route cell sequences, including the (possibly empty) route in progress.
  const std::vector<std::vector<GridPos>>& routes() const { return routes_; }
  const std::vector<MoveEvent>& events() const { return events_; }
  const std::vector<SenseRecord>& transcript() const { return transcript_; }

 private:
  Environment env_;
  Energy raw_budget_;
  GridPos position_;
  EnergyLedger ledger_;
  Energy total_spent_ = 0;
  std::vector<std::vector<GridPos>> routes_;
  std::vector<MoveEvent> events_;
  std::vector<SenseRecord> transcript_;
};

/// One JSON object per line: {"route","step","from","to","b_remain"}.
std::string events_to_jsonl(const std::vector<MoveEvent>& events);

}  // namespace coverage
