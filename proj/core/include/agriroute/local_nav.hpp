#pragma once
/**
 * @file local_nav.hpp
 * @brief Onboard local routing: replan trigger, endpoint projection, local A*,
 *        world back-projection with yaw lookahead, and optional map memory.
 *
 * Local maps are 40x40 cells of 0.1 m in the UAV body frame (+y forward,
 * +x right) with the UAV at the bottom-center; the source cell is (20, 0).
 */

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "agriroute/occupancy.hpp"
#include "agriroute/planner.hpp"
#include "agriroute/sensor.hpp"

namespace agriroute
{

inline constexpr GridIndex kLocalSource{20, 0};
inline constexpr int kYawLookaheadSteps = 5;

/// Raw (uninflated) local map together with the body frame it is expressed in.
struct LocalMemory
{
  GridMap map;
  BodyFrame frame;
};

struct NavState
{
  Pose4 pose;
  std::vector<Pose4> global_path;
  std::size_t next_waypoint_index = 0;
  std::optional<std::vector<Pose4>> active_local_path;
  std::optional<LocalMemory> memory;

  bool finished() const { return next_waypoint_index >= global_path.size(); }
};

/// True when any in-window path cell is Obstacle or SafetyArea.
bool needs_replan(const GridMap& local_map, std::span<const GridIndex> remaining_path);

/// 8-connected rasterization of a world polyline into local-map cells
/// (body frame `body`), keeping only in-window cells, without duplicates in sequence.
std::vector<GridIndex> rasterize_polyline(std::span<const WorldPoint> world_points,
                                          const BodyFrame& body, const GridMap& local_map);

/// Cells of the 8-connected line between two cells (inclusive).
std::vector<GridIndex> line_cells(GridIndex a, GridIndex b);

struct Endpoints
{
  GridIndex source = kLocalSource;
  GridIndex destination;
  bool rear_projection = false;   ///< waypoint lies behind the UAV
  bool border_projection = false; ///< waypoint lies outside the window
  bool relocated = false;         ///< destination moved off an Obstacle cell
};

/// nullopt when no non-Obstacle destination cell exists (blockage).
std::optional<Endpoints> project_endpoints(const NavState& state, const GridMap& local_map);

struct Blockage
{
  std::string reason;
  GridMap local_map;
};

struct ReplanOptions
{
  Metric metric = Metric::Weighted;
  CostScheme scheme{};
  /// Planning row behind `local_map`; enables the full-FoV occlusion check:
  /// every zone closer than `blockage_range` with the next waypoint inside the
  /// FoV and beyond the return of its zone.
  std::optional<PlanningRow> row;
  SensorSpec sensor{};
  /// Map includes remembered measurements; the occlusion check is skipped.
  bool memory = false;
  double blockage_range = kWorkingRange;
};

struct LocalPlan
{
  std::vector<Pose4> waypoints;  ///< world frame, z = 1 m, source cell first
  PlanResult plan;
  Endpoints endpoints;
};

using ReplanOutcome = std::variant<LocalPlan, Blockage>;

/// True when the row is fully occluded within `range` and the next waypoint
/// lies behind the occluding surface.
bool occluded_towards_waypoint(const NavState& state, const PlanningRow& row, const SensorSpec& spec, double range);

/// Overlays the remaining global path on `local_map`, runs A* between the
/// projected endpoints and back-projects the result to world waypoints.
ReplanOutcome replan_local(const NavState& state, const GridMap& local_map,
                           const ReplanOptions& options = {});

/// atan2 from path[i] to path[min(i + 5, last)]; at the path end (same point)
/// falls back to the previous step's yaw, or `fallback` for single-point paths.
double yaw_for_step(std::span<const WorldPoint> path, std::size_t step_index, double fallback = 0.0);

/// Attaches yaw_for_step to every point at the fixed flight altitude.
std::vector<Pose4> with_yaw(std::span<const WorldPoint> path, double fallback = 0.0);

/// Combines remembered and fresh raw local maps. `old_to_new` maps points of
/// the memory's body frame into the current one. Obstacle beats Free from any
/// measurement; Unknown never overwrites; cells leaving the window are dropped.
GridMap merge_memory(const GridMap& memory, const GridMap& new_local_map, const Rigid2& old_to_new);

}  // namespace agriroute
