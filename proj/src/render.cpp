#include "coverage/render.hpp"

#include <array>
#include <cstdio>
#include <sstream>
#include <vector>

namespace coverage {

char route_symbol(int route_index) {
  static constexpr std::string_view kSymbols = "123456789abcdefghijklmnopqrstuvwxyz";
  return kSymbols[static_cast<std::size_t>((route_index - 1) % static_cast<int>(kSymbols.size()))];
}

std::string render_ascii(const Environment& env, const CoverageResult& result) {
  std::vector<std::string> rows(static_cast<std::size_t>(env.height()));
  for (int r = 0; r < env.height(); ++r)
    for (int c = 0; c < env.width(); ++c) rows[static_cast<std::size_t>(r)] += env.is_blocked({c, r}) ? '#' : '.';
  for (const auto& route : result.routes)
    for (const GridPos p : route.cells)
      rows[static_cast<std::size_t>(p.row)][static_cast<std::size_t>(p.col)] = route_symbol(route.index);
  const GridPos s = env.station();
  rows[static_cast<std::size_t>(s.row)][static_cast<std::size_t>(s.col)] = 'S';

  std::string out;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    out += *it;
    out += '\n';
  }
  return out;
}

namespace {

constexpr int kCell = 32;
constexpr int kMargin = 8;

std::string colour(int route_index) {
  static constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return kPalette[static_cast<std::size_t>((route_index - 1) % static_cast<int>(kPalette.size()))];
}

struct Point {
  double x;
  double y;
};

Point centre(const Environment& env, GridPos p, double offset) {
  return {kMargin + p.col * kCell + kCell / 2.0 + offset, kMargin + (env.height() - 1 - p.row) * kCell + kCell / 2.0 + offset};
}

}  // namespace

std::string render_svg(const Environment& env, const CoverageResult& result) {
  const int w = env.width() * kCell + 2 * kMargin;
  const int h = env.height() * kCell + 2 * kMargin;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << ' ' << h << "\">\n";
  svg << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  for (int r = 0; r < env.height(); ++r) {
    for (int c = 0; c < env.width(); ++c) {
      const int x = kMargin + c * kCell;
      const int y = kMargin + (env.height() - 1 - r) * kCell;
      svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell << "\" height=\"" << kCell
          << "\" fill=\"" << (env.is_blocked({c, r}) ? "#444444" : "none") << "\" stroke=\"#cccccc\"/>\n";
    }
  }
  const Point s = centre(env, env.station(), 0.0);
  svg << "<rect x=\"" << s.x - kCell / 2.0 << "\" y=\"" << s.y - kCell / 2.0 << "\" width=\"" << kCell
      << "\" height=\"" << kCell << "\" fill=\"#b7e4b7\"/>\n";
  svg << "<text x=\"" << s.x << "\" y=\"" << s.y + 5 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"14\" font-weight=\"bold\">S</text>\n";

  char buf[64];
  for (const auto& route : result.routes) {
    const double offset = ((route.index - 1) % 5 - 2) * 2.0;
    svg << "<polyline fill=\"none\" stroke=\"" << colour(route.index)
        << "\" stroke-width=\"2.5\" stroke-linejoin=\"round\" points=\"";
    for (std::size_t i = 0; i < route.cells.size(); ++i) {
      const Point p = centre(env, route.cells[i], offset);
      std::snprintf(buf, sizeof buf, "%s%.1f,%.1f", i == 0 ? "" : " ", p.x, p.y);
      svg << buf;
    }
    svg << "\"/>\n";
    if (route.cells.size() > 1) {
      const Point p = centre(env, route.cells[1], offset);
      std::snprintf(buf, sizeof buf, "%.1f\" y=\"%.1f", p.x + 4, p.y - 4);
      svg << "<text x=\"" << buf << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"" << colour(route.index)
          << "\">" << route.index << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace coverage
