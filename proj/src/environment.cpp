#include "coverage/environment.hpp"

#include <deque>
#include <fstream>
#include <random>
#include <sstream>

namespace coverage {

Environment::Environment(int width, int height, GridPos station, const std::vector<GridPos>& blocked,
                         int cell_size)
    : width_(width), height_(height), station_(station), cell_size_(cell_size) {
  if (width < 1 || height < 1) throw std::invalid_argument("environment must be at least 1x1");
  if (cell_size < 1) throw std::invalid_argument("cell size must be positive");
  if (!in_bounds(station)) throw std::invalid_argument("station " + to_string(station) + " outside grid");
  blocked_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), false);
  for (const GridPos p : blocked) {
    if (!in_bounds(p)) throw std::invalid_argument("obstacle " + to_string(p) + " outside grid");
    if (p == station) throw std::invalid_argument("station cell cannot be blocked");
    blocked_[index(p)] = true;
  }
}

std::vector<GridPos> Environment::blocked_cells() const {
  std::vector<GridPos> out;
  for (int r = 0; r < height_; ++r)
    for (int c = 0; c < width_; ++c)
      if (blocked_[index({c, r})]) out.push_back({c, r});
  return out;
}

std::size_t Environment::free_count() const {
  std::size_t n = 0;
  for (const bool b : blocked_) n += b ? 0 : 1;
  return n;
}

ParseError::ParseError(ParseErrorKind kind, int line, int column, const std::string& what)
    : std::runtime_error(what), kind_(kind), line_(line), column_(column) {}

namespace {

std::string where(int line, int column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

Environment parse_map(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.empty() || lines.front().empty()) throw ParseError(ParseErrorKind::EmptyMap, 1, 0, "empty map");

  const int height = static_cast<int>(lines.size());
  const int width = static_cast<int>(lines.front().size());
  std::vector<GridPos> blocked;
  std::vector<GridPos> stations;
  int station_line = 0;
  int station_col = 0;
  for (int i = 0; i < height; ++i) {
    const auto& line = lines[static_cast<std::size_t>(i)];
    if (static_cast<int>(line.size()) != width)
      throw ParseError(ParseErrorKind::RaggedRows, i + 1, static_cast<int>(line.size()) + 1,
                       "ragged row at " + where(i + 1, static_cast<int>(line.size()) + 1) + ": expected " +
                           std::to_string(width) + " cells, found " + std::to_string(line.size()));
    const int row = height - 1 - i;
    for (int c = 0; c < width; ++c) {
      switch (line[static_cast<std::size_t>(c)]) {
        case '.': break;
        case '#': blocked.push_back({c, row}); break;
        case 'S':
          if (!stations.empty())
            throw ParseError(ParseErrorKind::MultipleStations, i + 1, c + 1,
                             "second station at " + where(i + 1, c + 1) + " (first at " +
                                 where(station_line, station_col) + ")");
          stations.push_back({c, row});
          station_line = i + 1;
          station_col = c + 1;
          break;
        default:
          throw ParseError(ParseErrorKind::IllegalCharacter, i + 1, c + 1,
                           "illegal character at " + where(i + 1, c + 1));
      }
    }
  }
  if (stations.empty()) throw ParseError(ParseErrorKind::MissingStation, 0, 0, "map has no station 'S'");
  return Environment(width, height, stations.front(), blocked);
}

std::string render_map(const Environment& env) {
  std::string out;
  out.reserve(static_cast<std::size_t>((env.width() + 1) * env.height()));
  for (int row = env.height() - 1; row >= 0; --row) {
    for (int col = 0; col < env.width(); ++col) {
      const GridPos p{col, row};
      out += p == env.station() ? 'S' : env.is_blocked(p) ? '#' : '.';
    }
    out += '\n';
  }
  return out;
}

Environment load_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open map file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_map(ss.str());
}

Environment generate_env(int width, int height, double obstacle_density, std::uint64_t seed) {
  if (width < 2 || height < 2) throw std::invalid_argument("generated maps must be at least 2x2");
  if (!(obstacle_density >= 0.0 && obstacle_density < 1.0))
    throw std::invalid_argument("obstacle density must lie in [0,1)");
  // Raw engine output is fully specified by the standard, unlike the distributions.
  std::mt19937_64 rng(seed);
  std::vector<GridPos> blocked;
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if ((col != 0 || row != 0) && u < obstacle_density) blocked.push_back({col, row});
    }
  }
  return Environment(width, height, {0, 0}, blocked);
}

std::vector<int> bfs_distances(const Environment& env) {
  std::vector<int> dist(static_cast<std::size_t>(env.width()) * static_cast<std::size_t>(env.height()), -1);
  std::deque<GridPos> queue{env.station()};
  dist[env.index(env.station())] = 0;
  while (!queue.empty()) {
    const GridPos p = queue.front();
    queue.pop_front();
    for (const Direction d : kScanOrder) {
      const GridPos q = step(p, d);
      if (!env.is_free(q) || dist[env.index(q)] >= 0) continue;
      dist[env.index(q)] = dist[env.index(p)] + 1;
      queue.push_back(q);
    }
  }
  return dist;
}

std::map<GridPos, int> geodesic_contours(const Environment& env, long long budget) {
  const long long radius = budget < 0 ? 0 : budget / 2;
  const auto dist = bfs_distances(env);
  std::map<GridPos, int> out;
  for (int row = 0; row < env.height(); ++row)
    for (int col = 0; col < env.width(); ++col) {
      const int d = dist[env.index({col, row})];
      if (d >= 0 && static_cast<long long>(d) * env.cell_size() <= radius) out.emplace(GridPos{col, row}, d);
    }
  return out;
}

std::vector<GridPos> reachable_set(const Environment& env, long long budget) {
  std::vector<GridPos> out;
  for (const auto& [cell, d] : geodesic_contours(env, budget)) out.push_back(cell);
  return out;
}

}  // namespace coverage
