#include "coverage/harness.hpp"

#include "json.hpp"

namespace coverage {

const char* to_string(CellState s) {
  switch (s) {
    case CellState::Free: return "Free";
    case CellState::Obstacle: return "Obstacle";
    case CellState::Boundary: return "Boundary";
  }
  return "?";
}

Harness::Harness(Environment env, Energy budget)
    : env_(std::move(env)), raw_budget_(budget), position_(env_.station()) {
  if (budget < 0) throw std::invalid_argument("budget must be non-negative");
  ledger_.budget = effective_budget(budget, env_.cell_size());
  ledger_.remaining = ledger_.budget;
  routes_.push_back({position_});
}

SensorReading Harness::sense_neighbors(GridPos pos) {
  if (pos != position_)
    throw ContractViolation("sense_neighbors(" + to_string(pos) + ") while robot is at " + to_string(position_));
  SensorReading reading;
  for (const Direction d : kScanOrder) {
    const GridPos q = step(pos, d);
    auto& slot = reading.cells[static_cast<std::size_t>(d)];
    slot = !env_.in_bounds(q) ? CellState::Boundary : env_.is_blocked(q) ? CellState::Obstacle : CellState::Free;
  }
  transcript_.push_back({pos, reading});
  return reading;
}

GridPos Harness::execute_move(Direction dir) {
  const GridPos target = step(position_, dir);
  if (!env_.in_bounds(target))
    throw MoveError(MoveErrorKind::MoveOffGrid,
                    std::string("move ") + to_string(dir) + " from " + to_string(position_) + " leaves the grid");
  if (env_.is_blocked(target))
    throw MoveError(MoveErrorKind::MoveIntoObstacle, std::string("move ") + to_string(dir) + " from " +
                                                         to_string(position_) + " hits an obstacle");
  const Energy cost = env_.cell_size();
  if (ledger_.remaining < cost)
    throw MoveError(MoveErrorKind::EnergyExhausted, "energy exhausted at " + to_string(position_) + " on route " +
                                                        std::to_string(ledger_.route_index));
  ledger_.remaining -= cost;
  ledger_.steps_this_route += 1;
  total_spent_ += cost;
  events_.push_back({ledger_.route_index, ledger_.steps_this_route, position_, target, ledger_.remaining});
  position_ = target;
  routes_.back().push_back(target);
  return position_;
}

const EnergyLedger& Harness::recharge_at_station() {
  if (position_ != env_.station())
    throw ContractViolation("recharge requested at " + to_string(position_) + ", station is " +
                            to_string(env_.station()));
  ledger_.remaining = ledger_.budget;
  ledger_.route_index += 1;
  ledger_.steps_this_route = 0;
  routes_.push_back({position_});
  return ledger_;
}

std::string events_to_jsonl(const std::vector<MoveEvent>& events) {
  std::string out;
  for (const auto& e : events) {
    nlohmann::ordered_json j;
    j["route"] = e.route;
    j["step"] = e.step;
    j["from"] = {e.from.col, e.from.row};
    j["to"] = {e.to.col, e.to.row};
    j["b_remain"] = e.b_remain;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace coverage
