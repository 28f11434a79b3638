#include "agriroute/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "agriroute/random.hpp"

namespace agriroute
{

double SensorSpec::horizontal_fov() const
{
  return 2.0 * std::atan(std::tan(diag_fov / 2.0) / std::numbers::sqrt2);
}

double apply_noise(double true_distance, const SensorSpec& spec, double unit_uniform)
{
  const double centered = 2.0 * unit_uniform - 1.0;  // [-1, 1)
  const double band = true_distance < spec.near_limit ? spec.near_accuracy
                                                      : spec.far_accuracy * true_distance;
  return std::clamp(true_distance + centered * band, spec.min_reading, spec.range_max);
}

DepthFrame capture(const WorldModel& world, const Pose4& pose, const SensorSpec& spec,
                   std::optional<std::uint64_t> noise_seed, double timestamp)
{
  DepthFrame frame;
  frame.timestamp = timestamp;
  frame.pose = pose;
  const BodyFrame body = body_frame_of(pose);
  std::optional<Rng> rng;
  if (noise_seed) {
    rng.emplace(*noise_seed);
  }
  for (int r = 0; r < 8; ++r) {
    const double el = spec.zone_elevation(r);
    for (int c = 0; c < 8; ++c) {
      const double az = spec.zone_azimuth(c);
      const WorldPoint dir = rotate({std::sin(az), std::cos(az)}, body.heading);
      const auto hit = world.raycast(pose.position(), pose.z, dir, el, spec.range_max, timestamp);
      double d = hit ? std::max(*hit, spec.min_reading) : spec.range_max;
      const double u = rng ? rng->uniform01() : 0.5;
      if (rng && d < spec.range_max) {
        d = apply_noise(d, spec, u);
      }
      frame.zones[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = d;
    }
  }
  return frame;
}

WorldPoint zone_hit_point(int column, double distance, const SensorSpec& spec)
{
  const double az = spec.zone_azimuth(column);
  return {distance * std::sin(az), distance * std::cos(az)};
}

bool fov_fully_occluded(const PlanningRow& row, double range)
{
  return std::all_of(row.begin(), row.end(), [range](double d) { return d < range; });
}

namespace
{

bool in_wedge(const GridMap& map, GridIndex g, const SensorSpec& spec)
{
  const WorldPoint c = map.center_of(g);
  return std::abs(std::atan2(c.x, c.y)) <= spec.horizontal_fov() / 2.0 && std::hypot(c.x, c.y) <= spec.range_max;
}

void mark_segment(GridMap& map, WorldPoint a, WorldPoint b, const SensorSpec& spec)
{
  // 4-connected walk between the cells of a and b.
  auto ca = map.cell_of(a);
  const auto cb = map.cell_of(b);
  if (!ca || !cb) {
    return;
  }
  const double side = map.cell_side();
  const int n = static_cast<int>(std::ceil(distance(a, b) / (side / 4.0))) + 1;
  GridIndex prev = *ca;
  for (int k = 1; k <= n; ++k) {
    const auto c = map.cell_of(a + (static_cast<double>(k) / n) * (b - a));
    if (!c || *c == prev) {
      continue;
    }
    if (c->u != prev.u && c->v != prev.v) {
      const GridIndex bridge{c->u, prev.v};
      if (in_wedge(map, bridge, spec)) {
        map.set(bridge, CellState::Obstacle);
      } else {
        map.set({prev.u, c->v}, CellState::Obstacle);
      }
    }
    map.set(*c, CellState::Obstacle);
    prev = *c;
  }
}

}  // namespace

void solidify_contour(GridMap& map, const PlanningRow& row, const SensorSpec& spec, double link_gap, double depth)
{
  const double half_fov = spec.horizontal_fov() / 2.0;
  const double zone = spec.zone_width();
  const double band = map.cell_side() / std::sqrt(2.0);
  for (int v = 0; v < map.height(); ++v) {
    for (int u = 0; u < map.width(); ++u) {
      const WorldPoint c = map.center_of({u, v});
      const double r = std::hypot(c.x, c.y);
      const double theta = std::atan2(c.x, c.y);
      if (std::abs(theta) > half_fov || r > spec.range_max) {
        continue;
      }
      const int z = std::clamp(static_cast<int>(std::floor((theta + half_fov) / zone)), 0, 7);
      const double d = row[static_cast<std::size_t>(z)];
      if (d < spec.range_max && r - d >= -band && r - d <= std::max(band, depth)) {
        map.set({u, v}, CellState::Obstacle);
      }
    }
  }
  for (int i = 0; i + 1 < 8; ++i) {
    const double a = row[static_cast<std::size_t>(i)];
    const double b = row[static_cast<std::size_t>(i + 1)];
    if (a < spec.range_max && b < spec.range_max && std::abs(a - b) <= link_gap) {
      mark_segment(map, zone_hit_point(i, a, spec), zone_hit_point(i + 1, b, spec), spec);
    }
  }
  // Close diagonal-only contacts between Obstacle cells.
  for (int v = 0; v + 1 < map.height(); ++v) {
    for (int u = 0; u + 1 < map.width(); ++u) {
      const bool a = map.at({u, v}) == CellState::Obstacle;
      const bool b = map.at({u + 1, v}) == CellState::Obstacle;
      const bool c = map.at({u, v + 1}) == CellState::Obstacle;
      const bool d = map.at({u + 1, v + 1}) == CellState::Obstacle;
      if ((a && d && !b && !c) || (b && c && !a && !d)) {
        const GridIndex first = a ? GridIndex{u + 1, v} : GridIndex{u, v};
        const GridIndex second = a ? GridIndex{u, v + 1} : GridIndex{u + 1, v + 1};
        map.set(in_wedge(map, first, spec) ? first : second, CellState::Obstacle);
      }
    }
  }
}

GridMap backproject(const PlanningRow& row, const SensorSpec& spec, const BackprojectOptions& options)
{
  GridMap map = GridMap::local(CellState::Unknown);
  const double half_fov = spec.horizontal_fov() / 2.0;
  const double zone = spec.zone_width();
  for (int v = 0; v < map.height(); ++v) {
    for (int u = 0; u < map.width(); ++u) {
      const WorldPoint c = map.center_of({u, v});
      const double r = std::hypot(c.x, c.y);
      const double theta = std::atan2(c.x, c.y);
      if (std::abs(theta) > half_fov || r > spec.range_max) {
        continue;
      }
      const int z = std::clamp(static_cast<int>(std::floor((theta + half_fov) / zone)), 0, 7);
      if (r < row[static_cast<std::size_t>(z)]) {
        map.set({u, v}, CellState::Free);
      }
    }
  }
  for (int i = 0; i < 8; ++i) {
    const double d = row[static_cast<std::size_t>(i)];
    if (d >= spec.range_max) {
      continue;
    }
    if (const auto cell = map.cell_of(zone_hit_point(i, d, spec))) {
      map.set(*cell, CellState::Obstacle);
    }
  }
  if (options.solid_contour) {
    solidify_contour(map, row, spec, options.contour_link_gap, options.contour_depth);
  }
  if (options.inflate) {
    inflate_safety(map, options.safety_radius_cells);
  }
  return map;
}

SpeedEstimate max_detectable_speed(double distance, double o_side, const SensorSpec& spec)
{
  SpeedEstimate est;
  est.out_of_range = !(distance > 0.0 && distance <= kWorkingRange);
  const double fov_width = 2.0 * std::max(distance, 0.0) * std::tan(spec.horizontal_fov() / 2.0);
  est.speed = (fov_width + std::max(o_side, 0.0)) * spec.rate_hz;
  return est;
}

std::string format_frame(const DepthFrame& frame)
{
  std::string out;
  char buf[32];
  for (const auto& row : frame.zones) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.3f", row[c]);
      out += buf;
      out.push_back(c + 1 == row.size() ? '\n' : ' ');
    }
  }
  return out;
}

DepthFrame parse_frame(const std::string& text)
{
  DepthFrame frame;
  std::istringstream in(text);
  for (auto& row : frame.zones) {
    for (auto& z : row) {
      if (!(in >> z)) {
        throw std::runtime_error("depth frame needs 64 distances");
      }
    }
  }
  std::string extra;
  if (in >> extra) {
    throw std::runtime_error("depth frame has more than 64 values");
  }
  return frame;
}

}  // namespace agriroute
