#include "coverage/serialize.hpp"

#include <cmath>

namespace coverage {

namespace {

GridPos pos_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw SchemaError("cell must be a [col,row] pair");
  return GridPos{j.at(0).get<int>(), j.at(1).get<int>()};
}

Json cells_to_json(const std::vector<GridPos>& cells) {
  Json out = Json::array();
  for (const GridPos p : cells) out.push_back(to_json(p));
  return out;
}

std::vector<GridPos> cells_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("cell list must be an array");
  std::vector<GridPos> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(pos_from_json(e));
  return out;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(GridPos p) { return Json::array({p.col, p.row}); }

Json environment_to_json(const Environment& env) {
  Json j;
  j["width"] = env.width();
  j["height"] = env.height();
  j["cell_size"] = env.cell_size();
  j["station"] = to_json(env.station());
  Json rows = Json::array();
  const std::string text = render_map(env);
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    rows.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  j["rows"] = rows;
  return j;
}

Json tree_to_json(const TreeMap& tree) {
  Json nodes = Json::array();
  for (const auto& n : tree.nodes()) {
    Json node;
    node["cell"] = to_json(n.cell);
    node["parent"] = n.parent ? to_json(*n.parent) : Json(nullptr);
    node["contour"] = n.contour;
    node["visited"] = n.visited;
    node["children"] = cells_to_json(n.children);
    nodes.push_back(std::move(node));
  }
  Json j;
  j["root"] = to_json(tree.root());
  j["nodes"] = std::move(nodes);
  return j;
}

Json metrics_to_json(const Metrics& m) {
  Json j;
  j["num_routes"] = m.num_routes;
  j["total_length"] = m.total_length;
  j["n"] = m.n;
  j["min_bound"] = m.min_bound;
  j["ratio_paths"] = finite_or_null(m.ratio_paths);
  j["ratio_length"] = finite_or_null(m.ratio_length);
  return j;
}

Json result_to_json(const CoverageResult& result, const Environment& env) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["environment"] = environment_to_json(env);
  j["budget"] = result.budget;
  j["effective_budget"] = result.effective_budget;
  j["metrics"] = metrics_to_json(result.metrics);
  Json routes = Json::array();
  for (const auto& r : result.routes) {
    Json route;
    route["index"] = r.index;
    route["length"] = r.length();
    route["cells"] = cells_to_json(r.cells);
    routes.push_back(std::move(route));
  }
  j["routes"] = std::move(routes);
  j["covered"] = cells_to_json(result.covered);
  j["skipped_unreachable"] = cells_to_json(result.skipped_unreachable);
  j["first_visit_order"] = cells_to_json(result.first_visit_order);
  j["ledger"] = Json{{"energy_spent", result.energy_spent}};
  const auto& d = result.diagnostics;
  j["diagnostics"] = Json{{"reparent_events", d.reparent_events},
                          {"frontier_renumberings", d.frontier_renumberings},
                          {"skipped_events", d.skipped_events},
                          {"requeued_events", d.requeued_events},
                          {"deferred_adoptions", d.deferred_adoptions},
                          {"peak_frontier", d.peak_frontier},
                          {"peak_deferred", d.peak_deferred}};
  j["tree"] = tree_to_json(result.tree);
  j["volatile"] = Json{{"wall_ms", result.metrics.wall_ms}};
  return j;
}

CoverageResult result_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("schema")) throw SchemaError("document has no schema field");
  if (!doc["schema"].is_number_integer() || doc["schema"].get<int>() != kSchemaVersion)
    throw SchemaError("unsupported schema version " + doc["schema"].dump() + ", expected " +
                      std::to_string(kSchemaVersion));
  try {
    CoverageResult r;
    const auto& env = doc.at("environment");
    r.cell_size = env.at("cell_size").get<int>();
    r.station = pos_from_json(env.at("station"));
    r.budget = doc.at("budget").get<Energy>();
    r.effective_budget = doc.at("effective_budget").get<Energy>();
    for (const auto& route : doc.at("routes")) {
      Route parsed{route.at("index").get<int>(), cells_from_json(route.at("cells"))};
      if (route.at("length").get<long long>() != parsed.length())
        throw SchemaError("route " + std::to_string(parsed.index) + " length field disagrees with its cells");
      r.routes.push_back(std::move(parsed));
    }
    r.covered = cells_from_json(doc.at("covered"));
    r.skipped_unreachable = cells_from_json(doc.at("skipped_unreachable"));
    r.first_visit_order = cells_from_json(doc.at("first_visit_order"));
    r.energy_spent = doc.at("ledger").at("energy_spent").get<Energy>();

    const auto& m = doc.at("metrics");
    r.metrics.num_routes = m.at("num_routes").get<int>();
    r.metrics.total_length = m.at("total_length").get<long long>();
    r.metrics.n = m.at("n").get<std::size_t>();
    r.metrics.min_bound = m.at("min_bound").get<long long>();
    r.metrics.ratio_paths = m.at("ratio_paths").is_null() ? 0.0 : m.at("ratio_paths").get<double>();
    r.metrics.ratio_length = m.at("ratio_length").is_null() ? 0.0 : m.at("ratio_length").get<double>();

    std::vector<TreeNode> nodes;
    for (const auto& n : doc.at("tree").at("nodes")) {
      TreeNode node;
      node.cell = pos_from_json(n.at("cell"));
      if (!n.at("parent").is_null()) node.parent = pos_from_json(n.at("parent"));
      node.contour = n.at("contour").get<int>();
      node.visited = n.at("visited").get<bool>();
      node.children = cells_from_json(n.at("children"));
      nodes.push_back(std::move(node));
    }
    r.tree = TreeMap::restore(std::move(nodes));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed result document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("malformed tree: ") + e.what());
  }
}

Json report_to_json(const ValidationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    if (!c.passed) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  Json j;
  j["schema"] = kSchemaVersion;
  j["ok"] = report.ok();
  j["checks"] = std::move(checks);
  return j;
}

Json solution_to_json(const OptimalSolution& solution) {
  const auto routes = [](const std::vector<Route>& rs) {
    Json out = Json::array();
    for (const auto& r : rs) out.push_back(Json{{"index", r.index}, {"length", r.length()}, {"cells", cells_to_json(r.cells)}});
    return out;
  };
  Json j;
  j["schema"] = kSchemaVersion;
  j["k_opt"] = solution.k_opt;
  j["len_opt"] = solution.len_opt;
  j["routes_witness"] = routes(solution.routes_witness);
  j["length_witness"] = routes(solution.length_witness);
  return j;
}

Json stable_part(Json doc) {
  doc.erase("volatile");
  return doc;
}

}  // namespace coverage
