#include "agriroute/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "agriroute/planner.hpp"
#include "agriroute/random.hpp"

namespace agriroute
{

WorldPoint Trajectory::at(double t) const
{
  if (points.empty()) {
    return {};
  }
  if (points.size() == 1 || speed <= 0.0) {
    return points.front();
  }
  double loop = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    loop += distance(points[i], points[(i + 1) % points.size()]);
  }
  if (loop <= 0.0) {
    return points.front();
  }
  double s = std::fmod(speed * t, loop);
  if (s < 0.0) {
    s += loop;
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const WorldPoint a = points[i];
    const WorldPoint b = points[(i + 1) % points.size()];
    const double seg = distance(a, b);
    if (s <= seg && seg > 0.0) {
      const double f = s / seg;
      return {a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
    }
    s -= seg;
  }
  return points.front();
}

WorldModel::WorldModel(GridMap static_map, std::vector<Solid> solids)
  : static_map_(std::move(static_map)), solids_(std::move(solids))
{
}

void WorldModel::add_solid(const Solid& solid)
{
  mark_obstacle_footprint(static_map_, solid.footprint);
  solids_.push_back(solid);
}

void WorldModel::add_barrel(WorldPoint center, double radius)
{
  const Disc d{center, radius};
  add_solid({d, kBarrelHeight});
  barrels_.push_back(d);
}

bool WorldModel::collides(WorldPoint p, double t) const
{
  const auto cell = static_map_.cell_of(p);
  if (!cell) {
    return false;
  }
  if (static_map_.at(*cell) == CellState::Obstacle) {
    return true;
  }
  const double side = static_map_.cell_side();
  const WorldPoint cell_min{static_map_.origin().x + cell->u * side,
                            static_map_.origin().y + cell->v * side};
  for (const auto& d : dynamic_) {
    if (shape_overlaps_cell(d.footprint_at(t), cell_min, side)) {
      return true;
    }
  }
  return false;
}

namespace
{
constexpr double kNoHit = std::numeric_limits<double>::infinity();

// Horizontal entry/exit intervals of a ray against a footprint, in horizontal meters.
std::vector<std::pair<double, double>> ray_intervals(const Shape& shape, WorldPoint o, WorldPoint d)
{
  std::vector<std::pair<double, double>> out;
  if (const auto* disc = std::get_if<Disc>(&shape)) {
    const WorldPoint f = o - disc->center;
    const double b = f.x * d.x + f.y * d.y;
    const double c = f.x * f.x + f.y * f.y - disc->radius * disc->radius;
    const double disc_b = b * b - c;
    if (disc_b < 0.0) {
      return out;
    }
    const double sq = std::sqrt(disc_b);
    const double s0 = -b - sq;
    const double s1 = -b + sq;
    if (s1 >= 0.0) {
      out.emplace_back(std::max(s0, 0.0), s1);
    }
    return out;
  }
  const auto& v = std::get<Polygon>(shape).vertices;
  std::vector<double> hits;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const WorldPoint p = v[i];
    const WorldPoint e = v[(i + 1) % v.size()] - p;
    const double denom = d.x * e.y - d.y * e.x;
    if (std::abs(denom) < 1e-15) {
      continue;
    }
    const WorldPoint w = p - o;
    const double s = (w.x * e.y - w.y * e.x) / denom;
    const double t = (w.x * d.y - w.y * d.x) / denom;
    if (s > 0.0 && t >= 0.0 && t < 1.0) {
      hits.push_back(s);
    }
  }
  std::sort(hits.begin(), hits.end());
  std::size_t i = 0;
  if (shape_contains(shape, o)) {
    out.emplace_back(0.0, hits.empty() ? kNoHit : hits[0]);
    i = 1;
  }
  for (; i + 1 < hits.size(); i += 2) {
    out.emplace_back(hits[i], hits[i + 1]);
  }
  if (i < hits.size()) {
    out.emplace_back(hits[i], kNoHit);
  }
  return out;
}

// First horizontal distance at which the ray meets the extruded solid.
double solid_hit(const Shape& footprint, double height, WorldPoint o, double z, WorldPoint d,
                 double slope)
{
  double best = kNoHit;
  for (const auto& [a, b] : ray_intervals(footprint, o, d)) {
    const double za = z + slope * a;
    if (za >= 0.0 && za <= height) {
      best = std::min(best, a);
    } else if (za > height && slope < 0.0) {
      const double s_top = (height - z) / slope;
      if (s_top >= a && s_top <= b) {
        best = std::min(best, s_top);
      }
    }
  }
  return best;
}
}  // namespace

std::optional<double> WorldModel::raycast(WorldPoint origin, double z, WorldPoint dir,
                                          double elevation, double max_range, double t) const
{
  const double slope = std::tan(elevation);
  const double cos_el = std::cos(elevation);
  const double max_horizontal = max_range * cos_el;
  double best = kNoHit;
  if (slope < 0.0) {
    best = -z / slope;
  }
  const auto consider = [&](const Shape& shape, double height) {
    if (const auto* disc = std::get_if<Disc>(&shape)) {
      if (distance(disc->center, origin) - disc->radius > std::min(best, max_horizontal)) {
        return;
      }
    }
    best = std::min(best, solid_hit(shape, height, origin, z, dir, slope));
  };
  for (const auto& s : solids_) {
    consider(s.footprint, s.height);
  }
  for (const auto& d : dynamic_) {
    consider(Shape{d.footprint_at(t)}, d.height);
  }
  if (best > max_horizontal) {
    return std::nullopt;
  }
  return best / cos_el;
}

int barrel_count(const GridMap& map, double density_percent)
{
  const double area = map.width() * map.cell_side() * map.height() * map.cell_side();
  // Round first so that 10% of 1600 m^2 is exactly 160, not ceil(160.00000000000003).
  const double raw = std::round(density_percent / 100.0 * area * 1e6) / 1e6;
  return static_cast<int>(std::ceil(raw));
}

void sample_obstacles(WorldModel& world, double density_percent,
                      std::span<const WorldPoint> waypoints, std::uint64_t seed,
                      const SamplingOptions& options)
{
  const GridMap& map = world.static_map();
  const int target = barrel_count(map, density_percent);
  if (target <= 0) {
    return;
  }
  std::set<std::size_t> waypoint_cells;
  std::vector<GridIndex> waypoint_index;
  for (const auto& w : waypoints) {
    if (const auto c = map.cell_of(w)) {
      waypoint_cells.insert(map.offset(*c));
      waypoint_index.push_back(*c);
    }
  }

  Rng rng(seed);
  const double r = options.barrel_radius;
  const double x0 = map.origin().x + r;
  const double y0 = map.origin().y + r;
  const double x1 = map.origin().x + map.width() * map.cell_side() - r;
  const double y1 = map.origin().y + map.height() * map.cell_side() - r;

  int placed = 0;
  int rejections = 0;
  while (placed < target) {
    if (rejections >= options.max_consecutive_rejections) {
      throw SamplingError("obstacle sampling failed: " + std::to_string(rejections) +
                          " consecutive rejections after placing " + std::to_string(placed) +
                          " of " + std::to_string(target) + " barrels");
    }
    const WorldPoint c{rng.uniform(x0, x1), rng.uniform(y0, y1)};
    const Disc disc{c, r};
    const auto cells = footprint_cells(map, disc);
    const auto ring = footprint_cells(map, Disc{c, r + options.waypoint_clearance});
    const bool overlaps =
      std::any_of(cells.begin(), cells.end(), [&](const GridIndex& g) { return map.at(g) == CellState::Obstacle; }) ||
      std::any_of(ring.begin(), ring.end(), [&](const GridIndex& g) { return waypoint_cells.count(map.offset(g)) > 0; });
    if (overlaps || cells.empty()) {
      ++rejections;
      continue;
    }
    GridMap trial = map;
    for (const auto& g : cells) {
      trial.set(g, CellState::Obstacle);
    }
    bool connected = true;
    if (waypoint_index.size() > 1) {
      const auto labels = label_components(trial);
      const auto first = labels[trial.offset(waypoint_index.front())];
      for (const auto& w : waypoint_index) {
        if (labels[trial.offset(w)] != first) {
          connected = false;
          break;
        }
      }
    }
    if (!connected) {
      ++rejections;
      continue;
    }
    world.add_barrel(c, r);
    ++placed;
    rejections = 0;
  }
}

}  // namespace agriroute
