#include "agriroute/mission.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "agriroute/local_nav.hpp"
#include "agriroute/map_io.hpp"

namespace agriroute
{

namespace
{
constexpr double kEps = 1e-9;

double along_length(const FieldSpec& f) { return f.row_axis == RowAxis::X ? f.width : f.height; }
double cross_length(const FieldSpec& f) { return f.row_axis == RowAxis::X ? f.height : f.width; }

// (along, cross) -> world
WorldPoint to_world(const FieldSpec& f, double along, double cross)
{
  return f.row_axis == RowAxis::X ? WorldPoint{along, cross} : WorldPoint{cross, along};
}
}  // namespace

void FieldSpec::validate() const
{
  if (!(width > 0.0) || !(height > 0.0)) {
    throw std::invalid_argument("field dimensions must be positive");
  }
  if (!(row_spacing > 0.0) || row_thickness < 0.0 || headland < 0.0 || block_length < 0.0) {
    throw std::invalid_argument("row layout parameters out of range");
  }
  if (row_thickness > 0.0 && row_spacing - row_thickness < kMinCorridorWidth) {
    throw std::invalid_argument("row spacing leaves no corridor for the drone and its safety area");
  }
}

std::vector<double> row_centers(const FieldSpec& field)
{
  std::vector<double> out;
  if (field.row_thickness <= 0.0) {
    return out;
  }
  const double L = cross_length(field);
  for (int k = 1; k * field.row_spacing < L - kEps; ++k) {
    out.push_back(k * field.row_spacing);
  }
  return out;
}

std::vector<Corridor> corridors(const FieldSpec& field)
{
  std::vector<Corridor> out;
  const double L = cross_length(field);
  const auto rows = row_centers(field);
  if (rows.empty()) {
    for (int k = 0; k * kDefaultPitch < L - kEps; ++k) {
      out.push_back({k * kDefaultPitch, std::min((k + 1) * kDefaultPitch, L)});
    }
    return out;
  }
  double prev = 0.0;
  const double half = field.row_thickness / 2.0;
  for (double c : rows) {
    out.push_back({prev, c - half});
    prev = c + half;
  }
  out.push_back({prev, L});
  return out;
}

std::vector<std::pair<double, double>> row_spans(const FieldSpec& field)
{
  std::vector<std::pair<double, double>> out;
  const double L = along_length(field);
  const double block = field.block_length > 0.0 ? field.block_length : L;
  for (double b = 0.0; b < L - kEps; b += block) {
    const double lo = b + field.headland;
    const double hi = std::min(b + block, L) - field.headland;
    if (hi > lo) {
      out.emplace_back(lo, hi);
    }
  }
  return out;
}

std::vector<Solid> row_solids(const FieldSpec& field)
{
  std::vector<Solid> out;
  const double half = field.row_thickness / 2.0;
  for (double c : row_centers(field)) {
    for (const auto& [lo, hi] : row_spans(field)) {
      const WorldPoint a = to_world(field, lo, c - half);
      const WorldPoint b = to_world(field, hi, c + half);
      out.push_back({make_rectangle({std::min(a.x, b.x), std::min(a.y, b.y)},
                                    {std::max(a.x, b.x), std::max(a.y, b.y)}),
                     field.row_height});
    }
  }
  return out;
}

GridMap build_static_map(const FieldSpec& field, double cell_side)
{
  return build_world(field, cell_side).static_map();
}

WorldModel build_world(const FieldSpec& field, double cell_side)
{
  field.validate();
  const int w = static_cast<int>(std::ceil(field.width / cell_side - 1e-6));
  const int h = static_cast<int>(std::ceil(field.height / cell_side - 1e-6));
  WorldModel world(GridMap(w, h, cell_side, {0.0, 0.0}, CellState::Free), {});
  for (const auto& s : row_solids(field)) {
    world.add_solid(s);
  }
  return world;
}

std::vector<Tile> partition(const FieldSpec& field, double tile_side)
{
  if (!(tile_side > 0.0)) {
    throw std::invalid_argument("tile side must be positive");
  }
  std::vector<Tile> tiles;
  int agent = 0;
  for (double y = 0.0; y < field.height - kEps; y += tile_side) {
    for (double x = 0.0; x < field.width - kEps; x += tile_side) {
      tiles.push_back({{x, y}, std::min(tile_side, field.width - x), std::min(tile_side, field.height - y),
                       agent++});
    }
  }
  return tiles;
}

std::vector<Pose4> sweep_path(const Tile& tile, const FieldSpec& field)
{
  field.validate();
  const bool along_x = field.row_axis == RowAxis::X;
  const double a0 = along_x ? tile.origin.x : tile.origin.y;
  const double a_len = along_x ? tile.side_x : tile.side_y;
  const double c0 = along_x ? tile.origin.y : tile.origin.x;
  const double c_len = along_x ? tile.side_y : tile.side_x;
  const double margin = std::min(field.headland / 2.0, a_len / 2.0);
  const double lo = a0 + margin;
  const double hi = a0 + a_len - margin;

  std::vector<double> stations;
  for (double s = lo; s < hi - kEps; s += 1.0) {
    stations.push_back(s);
  }
  stations.push_back(hi);

  const auto all = corridors(field);
  std::vector<WorldPoint> points;
  int lane = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Corridor& c = all[i];
    const double mid = c.midline();
    if (mid < c0 - kEps || mid >= c0 + c_len - kEps) {
      continue;
    }
    if (c.width() < kMinCorridorWidth) {
      throw CorridorError("corridor " + std::to_string(i) + " is " + format_double(c.width()) +
                              " m wide, narrower than the safety-inflated drone",
                          static_cast<int>(i));
    }
    const double entry = lane % 2 == 0 ? stations.front() : stations.back();
    if (!points.empty()) {
      // Cross-link stations every 1 m from the previous corridor end.
      const WorldPoint from = points.back();
      const WorldPoint to = to_world(field, entry, mid);
      const double len = distance(from, to);
      for (double d = 1.0; d < len - kEps; d += 1.0) {
        points.push_back(from + (d / len) * (to - from));
      }
    }
    if (lane % 2 == 0) {
      for (double s : stations) {
        points.push_back(to_world(field, s, mid));
      }
    } else {
      for (auto it = stations.rbegin(); it != stations.rend(); ++it) {
        points.push_back(to_world(field, *it, mid));
      }
    }
    ++lane;
  }
  if (points.empty()) {
    throw CorridorError("tile contains no corridor", -1);
  }
  return with_yaw(points, 0.0);
}

double polyline_length(const std::vector<Pose4>& path)
{
  double len = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    len += distance(path[i - 1].position(), path[i].position());
  }
  return len;
}

Feasibility feasibility(const std::vector<Pose4>& path, const BatteryModel& battery)
{
  const double t = polyline_length(path) / battery.cruise_speed;
  if (t <= battery.explore_budget + 1e-9) {
    return {true, 0.0};
  }
  return {false, t - battery.explore_budget};
}

FieldSpec environment(int index)
{
  FieldSpec f;
  f.row_spacing = 5.0;
  switch (index) {
  case 1:
    f.width = f.height = 10.0;
    break;
  case 2:
    f.width = f.height = 20.0;
    break;
  case 3:
    f.width = f.height = 40.0;
    f.row_spacing = 40.0 / 7.0;
    break;
  default:
    throw std::invalid_argument("unknown environment " + std::to_string(index));
  }
  return f;
}

FieldSpec default_vineyard()
{
  FieldSpec f;
  f.width = f.height = 200.0;
  return f;
}

Mission plan_mission(const FieldSpec& field, double tile_side)
{
  Mission m;
  m.field = field;
  m.tiles = partition(field, tile_side);
  for (const auto& t : m.tiles) {
    m.paths.push_back(sweep_path(t, field));
  }
  return m;
}

std::string format_mission(const Mission& mission)
{
  const auto& f = mission.field;
  std::ostringstream out;
  out << "field " << format_double(f.width) << ' ' << format_double(f.height) << ' '
      << (f.row_axis == RowAxis::X ? 'x' : 'y') << ' ' << format_double(f.row_spacing) << ' '
      << format_double(f.row_thickness) << ' ' << format_double(f.headland) << ' '
      << format_double(f.block_length) << '\n';
  out << "tiles " << mission.tiles.size() << '\n';
  for (std::size_t i = 0; i < mission.tiles.size(); ++i) {
    const auto& t = mission.tiles[i];
    const auto& path = i < mission.paths.size() ? mission.paths[i] : std::vector<Pose4>{};
    out << "tile " << i << ' ' << format_double(t.origin.x) << ' ' << format_double(t.origin.y) << ' '
        << format_double(t.side_x) << ' ' << format_double(t.side_y) << ' ' << t.agent << ' '
        << path.size() << '\n';
    for (const auto& p : path) {
      out << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.z) << ' '
          << format_double(p.phi) << '\n';
    }
  }
  return out.str();
}

Mission parse_mission(const std::string& text)
{
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  const auto next = [&](const char* what) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
        return std::istringstream(line);
      }
    }
    throw std::runtime_error(std::string("mission file ended early, expected ") + what);
  };
  const auto fail = [&](const char* what) {
    throw std::runtime_error("mission file line " + std::to_string(line_no) + ": " + what);
  };

  Mission m;
  std::string key;
  char axis = 'x';
  auto fs = next("field line");
  if (!(fs >> key >> m.field.width >> m.field.height >> axis >> m.field.row_spacing >>
        m.field.row_thickness >> m.field.headland >> m.field.block_length) ||
      key != "field" || (axis != 'x' && axis != 'y')) {
    fail("bad field line");
  }
  m.field.row_axis = axis == 'x' ? RowAxis::X : RowAxis::Y;
  std::size_t n_tiles = 0;
  auto ts = next("tiles line");
  if (!(ts >> key >> n_tiles) || key != "tiles") {
    fail("bad tiles line");
  }
  for (std::size_t i = 0; i < n_tiles; ++i) {
    auto tl = next("tile line");
    Tile t;
    std::size_t id = 0;
    std::size_t n = 0;
    if (!(tl >> key >> id >> t.origin.x >> t.origin.y >> t.side_x >> t.side_y >> t.agent >> n) ||
        key != "tile" || id != i) {
      fail("bad tile line");
    }
    std::vector<Pose4> path;
    path.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      auto pl = next("waypoint");
      Pose4 p;
      if (!(pl >> p.x >> p.y >> p.z >> p.phi)) {
        fail("bad waypoint, expected x y z phi");
      }
      path.push_back(p);
    }
    m.tiles.push_back(t);
    m.paths.push_back(std::move(path));
  }
  return m;
}

}  // namespace agriroute
