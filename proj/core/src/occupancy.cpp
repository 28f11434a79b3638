#include "agriroute/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agriroute
{

char to_char(CellState s)
{
  switch (s) {
    case CellState::GlobalPath: return 'P';
    case CellState::Free: return 'F';
    case CellState::Unknown: return 'U';
    case CellState::SafetyArea: return 'S';
    case CellState::Obstacle: return 'O';
  }
  return '?';
}

std::optional<CellState> cell_state_from_char(char c)
{
  switch (c) {
    case 'P': return CellState::GlobalPath;
    case 'F': return CellState::Free;
    case 'U': return CellState::Unknown;
    case 'S': return CellState::SafetyArea;
    case 'O': return CellState::Obstacle;
    default: return std::nullopt;
  }
}

namespace
{
int precedence(CellState s)
{
  switch (s) {
    case CellState::Unknown: return 0;
    case CellState::Free: return 1;
    case CellState::GlobalPath: return 2;
    case CellState::SafetyArea: return 3;
    case CellState::Obstacle: return 4;
  }
  return 0;
}
}  // namespace

CellState dominant(CellState a, CellState b)
{
  return precedence(a) >= precedence(b) ? a : b;
}

CostScheme::CostScheme(double global_path, double free, double unknown, double safety_area)
  : costs_{global_path, free, unknown, safety_area}
{
  if (!(global_path >= 0.0 && global_path < free && free < unknown && unknown < safety_area &&
        std::isfinite(safety_area))) {
    throw std::invalid_argument(
      "cost scheme must satisfy 0 <= global_path < free < unknown < safety_area < inf");
  }
}

std::optional<double> CostScheme::cost(CellState s) const
{
  if (s == CellState::Obstacle) {
    return std::nullopt;
  }
  return costs_[static_cast<int>(s)];
}

GridMap::GridMap(int width, int height, double cell_side, WorldPoint origin, CellState fill)
  : geometry_{origin, cell_side, width, height}
{
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  if (!(cell_side > 0.0)) {
    throw std::invalid_argument("cell_side must be positive");
  }
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GridMap GridMap::local(CellState fill)
{
  return GridMap(40, 40, 0.1, {-2.0, 0.0}, fill);
}

std::optional<GridIndex> GridMap::cell_of(WorldPoint p) const
{
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    return std::nullopt;
  }
  const GridIndex i = quantize(p, geometry_.origin, geometry_.cell_side);
  if (!in_bounds(i)) {
    return std::nullopt;
  }
  return i;
}

std::size_t GridMap::count(CellState s) const
{
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), s));
}

Polygon make_rectangle(WorldPoint min_corner, WorldPoint max_corner)
{
  return Polygon{{min_corner,
                  {max_corner.x, min_corner.y},
                  max_corner,
                  {min_corner.x, max_corner.y}}};
}

namespace
{
constexpr double kAreaEpsilon = 1e-12;

double signed_area(const std::vector<WorldPoint>& poly)
{
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const WorldPoint& p = poly[i];
    const WorldPoint& q = poly[(i + 1) % poly.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

// Sutherland-Hodgman against one axis-aligned half-plane.
// axis 0 -> x, 1 -> y; keep_greater selects the side kept.
std::vector<WorldPoint> clip(const std::vector<WorldPoint>& in, int axis, double bound,
                             bool keep_greater)
{
  std::vector<WorldPoint> out;
  if (in.empty()) {
    return out;
  }
  auto coord = [axis](const WorldPoint& p) { return axis == 0 ? p.x : p.y; };
  auto inside = [&](const WorldPoint& p) {
    return keep_greater ? coord(p) >= bound : coord(p) <= bound;
  };
  for (std::size_t i = 0; i < in.size(); ++i) {
    const WorldPoint& cur = in[i];
    const WorldPoint& prev = in[(i + in.size() - 1) % in.size()];
    const bool cur_in = inside(cur);
    const bool prev_in = inside(prev);
    if (cur_in != prev_in) {
      const double t = (bound - coord(prev)) / (coord(cur) - coord(prev));
      out.push_back({prev.x + t * (cur.x - prev.x), prev.y + t * (cur.y - prev.y)});
    }
    if (cur_in) {
      out.push_back(cur);
    }
  }
  return out;
}

struct Bounds
{
  WorldPoint lo;
  WorldPoint hi;
};

Bounds bounds_of(const Shape& shape)
{
  if (const auto* d = std::get_if<Disc>(&shape)) {
    return {{d->center.x - d->radius, d->center.y - d->radius},
            {d->center.x + d->radius, d->center.y + d->radius}};
  }
  const auto& poly = std::get<Polygon>(shape);
  Bounds b{{INFINITY, INFINITY}, {-INFINITY, -INFINITY}};
  for (const auto& p : poly.vertices) {
    b.lo.x = std::min(b.lo.x, p.x);
    b.lo.y = std::min(b.lo.y, p.y);
    b.hi.x = std::max(b.hi.x, p.x);
    b.hi.y = std::max(b.hi.y, p.y);
  }
  return b;
}
}  // namespace

bool shape_overlaps_cell(const Shape& shape, WorldPoint cell_min, double cell_side)
{
  const WorldPoint cell_max{cell_min.x + cell_side, cell_min.y + cell_side};
  if (const auto* d = std::get_if<Disc>(&shape)) {
    const double cx = std::clamp(d->center.x, cell_min.x, cell_max.x);
    const double cy = std::clamp(d->center.y, cell_min.y, cell_max.y);
    // Tangency (zero shared area) does not count.
    return std::hypot(d->center.x - cx, d->center.y - cy) < d->radius - 1e-9;
  }
  const auto& poly = std::get<Polygon>(shape);
  if (poly.vertices.size() < 3) {
    return false;
  }
  auto clipped = clip(poly.vertices, 0, cell_min.x, true);
  clipped = clip(clipped, 0, cell_max.x, false);
  clipped = clip(clipped, 1, cell_min.y, true);
  clipped = clip(clipped, 1, cell_max.y, false);
  return clipped.size() >= 3 && std::abs(signed_area(clipped)) > kAreaEpsilon;
}

bool shape_contains(const Shape& shape, WorldPoint p)
{
  if (const auto* d = std::get_if<Disc>(&shape)) {
    return distance(p, d->center) <= d->radius;
  }
  const auto& v = std::get<Polygon>(shape).vertices;
  bool in = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y) &&
        p.x < (v[j].x - v[i].x) * (p.y - v[i].y) / (v[j].y - v[i].y) + v[i].x) {
      in = !in;
    }
  }
  return in;
}

std::vector<GridIndex> footprint_cells(const GridMap& map, const Shape& shape)
{
  std::vector<GridIndex> cells;
  const Bounds b = bounds_of(shape);
  if (!std::isfinite(b.lo.x) || !std::isfinite(b.hi.x)) {
    return cells;
  }
  const GridIndex lo = quantize(b.lo, map.origin(), map.cell_side());
  const GridIndex hi = quantize(b.hi, map.origin(), map.cell_side());
  const int u0 = std::max(lo.u, 0);
  const int v0 = std::max(lo.v, 0);
  const int u1 = std::min(hi.u, map.width() - 1);
  const int v1 = std::min(hi.v, map.height() - 1);
  for (int v = v0; v <= v1; ++v) {
    for (int u = u0; u <= u1; ++u) {
      const WorldPoint cell_min{map.origin().x + u * map.cell_side(),
                                map.origin().y + v * map.cell_side()};
      if (shape_overlaps_cell(shape, cell_min, map.cell_side())) {
        cells.push_back({u, v});
      }
    }
  }
  return cells;
}

FootprintResult mark_obstacle_footprint(GridMap& map, const Shape& shape)
{
  const auto cells = footprint_cells(map, shape);
  for (const auto& c : cells) {
    map.set(c, CellState::Obstacle);
  }
  return {cells.size(), cells.empty()};
}

void inflate_safety(GridMap& map, int radius_cells)
{
  if (radius_cells <= 0) {
    return;
  }
  std::vector<GridIndex> obstacles;
  for (int v = 0; v < map.height(); ++v) {
    for (int u = 0; u < map.width(); ++u) {
      if (map.at({u, v}) == CellState::Obstacle) {
        obstacles.push_back({u, v});
      }
    }
  }
  for (const auto& o : obstacles) {
    const int v0 = std::max(o.v - radius_cells, 0);
    const int v1 = std::min(o.v + radius_cells, map.height() - 1);
    const int u0 = std::max(o.u - radius_cells, 0);
    const int u1 = std::min(o.u + radius_cells, map.width() - 1);
    for (int v = v0; v <= v1; ++v) {
      for (int u = u0; u <= u1; ++u) {
        if (map.at({u, v}) != CellState::Obstacle) {
          map.set({u, v}, CellState::SafetyArea);
        }
      }
    }
  }
}

void overlay_global_path(GridMap& map, std::span<const GridIndex> path)
{
  for (const auto& c : path) {
    if (!map.in_bounds(c)) {
      throw OutOfRangeError("global path cell outside map");
    }
    const CellState s = map.at(c);
    if (s == CellState::Free || s == CellState::Unknown) {
      map.set(c, CellState::GlobalPath);
    }
  }
}

std::optional<double> edge_cost(const CostScheme& scheme, GridIndex from, GridIndex to,
                                const GridMap& map, Metric metric)
{
  const int du = std::abs(to.u - from.u);
  const int dv = std::abs(to.v - from.v);
  if (du > 1 || dv > 1 || (du == 0 && dv == 0)) {
    throw std::invalid_argument("edge_cost requires 8-neighbour cells");
  }
  const CellState dest = map.at(to);
  if (dest == CellState::Obstacle) {
    return std::nullopt;
  }
  const double step = (du + dv == 2) ? std::numbers::sqrt2 : 1.0;
  if (metric == Metric::Shortest) {
    return step;
  }
  return step + *scheme.cost(dest);
}

}  // namespace agriroute
