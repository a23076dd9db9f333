#pragma once

#include <string>

#include "coverage/environment.hpp"
#include "coverage/planner.hpp"

namespace coverage {

/// Map with each covered cell replaced by the symbol of the last route that
/// visited it ('1'..'9', then 'a'..'z'); later routes win. Top row first.
std::string render_ascii(const Environment& env, const CoverageResult& result);

/// Grid, filled obstacles, the station, and one labelled polyline per route,
/// later routes drawn on top.
std::string render_svg(const Environment& env, const CoverageResult& result);

char route_symbol(int route_index);

}  // namespace coverage
