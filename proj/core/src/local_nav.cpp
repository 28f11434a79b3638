#include "agriroute/local_nav.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace agriroute
{

bool needs_replan(const GridMap& local_map, std::span<const GridIndex> remaining_path)
{
  return std::any_of(remaining_path.begin(), remaining_path.end(), [&](const GridIndex& c) {
    if (!local_map.in_bounds(c)) {
      return false;
    }
    const CellState s = local_map.at(c);
    return s == CellState::Obstacle || s == CellState::SafetyArea;
  });
}

std::vector<GridIndex> line_cells(GridIndex a, GridIndex b)
{
  std::vector<GridIndex> out;
  int du = std::abs(b.u - a.u);
  int dv = -std::abs(b.v - a.v);
  const int su = a.u < b.u ? 1 : -1;
  const int sv = a.v < b.v ? 1 : -1;
  int err = du + dv;
  GridIndex c = a;
  out.reserve(static_cast<std::size_t>(std::max(du, -dv)) + 1);
  while (true) {
    out.push_back(c);
    if (c == b) {
      break;
    }
    const int e2 = 2 * err;
    if (e2 >= dv) {
      err += dv;
      c.u += su;
    }
    if (e2 <= du) {
      err += du;
      c.v += sv;
    }
  }
  return out;
}

std::vector<GridIndex> rasterize_polyline(std::span<const WorldPoint> world_points,
                                          const BodyFrame& body, const GridMap& local_map)
{
  std::vector<GridIndex> out;
  if (world_points.empty()) {
    return out;
  }
  const auto to_cell = [&](WorldPoint w) {
    return quantize(world_to_body(w, body), local_map.origin(), local_map.cell_side());
  };
  const auto push = [&](GridIndex c) {
    if (local_map.in_bounds(c) && (out.empty() || !(out.back() == c))) {
      out.push_back(c);
    }
  };
  // Segments entirely far from the window are skipped without rasterizing.
  const double reach = 2.0 * (local_map.width() + local_map.height()) * local_map.cell_side();
  GridIndex prev = to_cell(world_points[0]);
  if (world_points.size() == 1) {
    push(prev);
    return out;
  }
  for (std::size_t i = 1; i < world_points.size(); ++i) {
    const GridIndex cur = to_cell(world_points[i]);
    const bool far = distance(world_points[i - 1], body.origin) > reach &&
                     distance(world_points[i], body.origin) > reach;
    if (!far) {
      for (const auto& c : line_cells(prev, cur)) {
        push(c);
      }
    }
    prev = cur;
  }
  return out;
}

namespace
{
int chebyshev(GridIndex a, GridIndex b)
{
  return std::max(std::abs(a.u - b.u), std::abs(a.v - b.v));
}

bool on_border(const GridMap& m, GridIndex c)
{
  return c.u == 0 || c.v == 0 || c.u == m.width() - 1 || c.v == m.height() - 1;
}
}  // namespace

std::optional<Endpoints> project_endpoints(const NavState& state, const GridMap& local_map)
{
  Endpoints ep;
  if (state.finished()) {
    return std::nullopt;
  }
  const Pose4& wp = state.global_path[state.next_waypoint_index];
  const BodyFrame body = body_frame_of(state.pose);
  const WorldPoint p = world_to_body(wp.position(), body);
  const double x_min = local_map.origin().x;
  const double x_max = x_min + local_map.width() * local_map.cell_side();
  const double y_min = local_map.origin().y;
  const double y_max = y_min + local_map.height() * local_map.cell_side();

  WorldPoint target = p;
  if (p.y < y_min) {
    ep.rear_projection = true;
    target = {std::clamp(p.x, x_min, x_max), y_min};
  } else if (p.x < x_min || p.x >= x_max || p.y >= y_max) {
    ep.border_projection = true;
    double t = 1.0;
    if (p.x > x_max) {
      t = std::min(t, x_max / p.x);
    }
    if (p.x < x_min) {
      t = std::min(t, x_min / p.x);
    }
    if (p.y > y_max) {
      t = std::min(t, y_max / p.y);
    }
    target = {t * p.x, t * p.y};
  }
  GridIndex dest = quantize(target, local_map.origin(), local_map.cell_side());
  dest.u = std::clamp(dest.u, 0, local_map.width() - 1);
  dest.v = std::clamp(dest.v, 0, local_map.height() - 1);

  if (local_map.at(dest) == CellState::Obstacle) {
    // Nearest non-Obstacle cell by Chebyshev distance, then lexicographic (u, v);
    // restricted to the border when the waypoint itself was projected onto it.
    const bool border_only = ep.rear_projection || ep.border_projection;
    std::optional<GridIndex> best;
    int best_d = std::numeric_limits<int>::max();
    for (int u = 0; u < local_map.width(); ++u) {
      for (int v = 0; v < local_map.height(); ++v) {
        const GridIndex c{u, v};
        if (border_only && !on_border(local_map, c)) {
          continue;
        }
        if (local_map.at(c) == CellState::Obstacle) {
          continue;
        }
        const int d = chebyshev(c, dest);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
    }
    if (!best) {
      return std::nullopt;
    }
    dest = *best;
    ep.relocated = true;
  }
  ep.destination = dest;
  return ep;
}

double yaw_for_step(std::span<const WorldPoint> path, std::size_t step_index, double fallback)
{
  if (path.empty()) {
    return fallback;
  }
  std::size_t i = std::min(step_index, path.size() - 1);
  while (true) {
    const WorldPoint s = path[i];
    const WorldPoint d = path[std::min(i + kYawLookaheadSteps, path.size() - 1)];
    if (!(s == d)) {
      return std::atan2(d.y - s.y, d.x - s.x);
    }
    if (i == 0) {
      return fallback;
    }
    --i;
  }
}

std::vector<Pose4> with_yaw(std::span<const WorldPoint> path, double fallback)
{
  std::vector<Pose4> out;
  out.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    out.push_back({path[i].x, path[i].y, kFlightAltitude, yaw_for_step(path, i, fallback)});
  }
  return out;
}

namespace
{
// Remaining global path as a world polyline starting from the previous waypoint.
std::vector<WorldPoint> remaining_global_polyline(const NavState& state, double max_length)
{
  std::vector<WorldPoint> pts;
  const std::size_t start = state.next_waypoint_index > 0 ? state.next_waypoint_index - 1 : 0;
  if (state.next_waypoint_index == 0) {
    pts.push_back(state.pose.position());
  }
  double length = 0.0;
  for (std::size_t i = start; i < state.global_path.size(); ++i) {
    const WorldPoint w = state.global_path[i].position();
    if (!pts.empty()) {
      length += distance(pts.back(), w);
    }
    pts.push_back(w);
    if (length > max_length) {
      break;
    }
  }
  return pts;
}
}  // namespace

bool occluded_towards_waypoint(const NavState& state, const PlanningRow& row, const SensorSpec& spec, double range)
{
  if (state.finished() || !fov_fully_occluded(row, range)) {
    return false;
  }
  const WorldPoint p = world_to_body(state.global_path[state.next_waypoint_index].position(), body_frame_of(state.pose));
  const double az = std::atan2(p.x, p.y);
  const double half = spec.horizontal_fov() / 2.0;
  if (std::abs(az) > half) {
    return false;
  }
  const int z = std::clamp(static_cast<int>(std::floor((az + half) / spec.zone_width())), 0, 7);
  return std::hypot(p.x, p.y) > row[static_cast<std::size_t>(z)];
}

ReplanOutcome replan_local(const NavState& state, const GridMap& local_map, const ReplanOptions& options)
{
  if (options.row && !options.memory &&
      occluded_towards_waypoint(state, *options.row, options.sensor, options.blockage_range)) {
    return Blockage{"obstacle fills the field of view", local_map};
  }
  GridMap composed = local_map;
  const BodyFrame body = body_frame_of(state.pose);
  const auto polyline = remaining_global_polyline(state, 12.0);
  const auto path_cells = rasterize_polyline(polyline, body, composed);
  overlay_global_path(composed, path_cells);

  const auto ep = project_endpoints(state, composed);
  if (!ep) {
    return Blockage{"no reachable destination cell", composed};
  }
  if (composed.at(ep->source) == CellState::Obstacle) {
    return Blockage{"source cell blocked", composed};
  }
  auto outcome = astar({composed, ep->source, ep->destination, options.metric, options.scheme});
  if (const auto* np = std::get_if<NoPath>(&outcome)) {
    return Blockage{"no path: " + np->reason, composed};
  }
  LocalPlan lp;
  lp.plan = std::move(std::get<PlanResult>(outcome));
  lp.endpoints = *ep;
  std::vector<WorldPoint> world;
  world.reserve(lp.plan.path.size());
  for (const auto& c : lp.plan.path) {
    world.push_back(body_to_world(composed.center_of(c), body));
  }
  lp.waypoints = with_yaw(world, state.pose.phi);
  return lp;
}

GridMap merge_memory(const GridMap& memory, const GridMap& new_local_map, const Rigid2& old_to_new)
{
  GridMap merged = new_local_map;
  const Rigid2 new_to_old = old_to_new.inverse();
  for (int v = 0; v < merged.height(); ++v) {
    for (int u = 0; u < merged.width(); ++u) {
      const GridIndex c{u, v};
      const auto old_cell = memory.cell_of(new_to_old.apply(merged.center_of(c)));
      if (!old_cell) {
        continue;
      }
      const CellState fresh = merged.at(c);
      const CellState old = memory.at(*old_cell);
      const auto is_free = [](CellState s) { return s == CellState::Free || s == CellState::GlobalPath; };
      if (fresh == CellState::Obstacle || old == CellState::Obstacle) {
        merged.set(c, CellState::Obstacle);
      } else if (is_free(fresh) || is_free(old)) {
        merged.set(c, CellState::Free);
      }
    }
  }
  return merged;
}

}  // namespace agriroute
