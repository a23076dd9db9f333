#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "coverage/environment.hpp"
#include "coverage/oracle.hpp"
#include "coverage/planner.hpp"
#include "coverage/treemap.hpp"

namespace coverage {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// A document does not follow the result schema (wrong version, missing or
/// mistyped fields).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(GridPos p);
Json environment_to_json(const Environment& env);
Json tree_to_json(const TreeMap& tree);
Json metrics_to_json(const Metrics& m);

/// Result document. Everything except the "volatile" member is a pure
/// function of (map, budget).
Json result_to_json(const CoverageResult& result, const Environment& env);
CoverageResult result_from_json(const Json& doc);

Json report_to_json(const ValidationReport& report);
Json solution_to_json(const OptimalSolution& solution);

/// Copy of a result document without its volatile section.
Json stable_part(Json doc);

}  // namespace coverage
