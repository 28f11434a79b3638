#pragma once
/**
 * @file world.hpp
 * @brief Ground-truth world for simulation: static map, extruded obstacles for
 *        ray casting, moving obstacles, pest hotspots, and barrel sampling.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "agriroute/occupancy.hpp"

namespace agriroute
{

/// Vertical extrusion of a footprint from the ground to `height`.
struct Solid
{
  Shape footprint;
  double height = 2.0;
};

/// Piecewise-linear path traversed at constant speed, looping back to the start.
struct Trajectory
{
  std::vector<WorldPoint> points;
  double speed = 0.0;  ///< m/s

  WorldPoint at(double t) const;
  double max_speed() const { return speed; }
};

struct DynamicObstacle
{
  double radius = 0.3;
  double height = 1.5;
  Trajectory trajectory;

  Disc footprint_at(double t) const { return {trajectory.at(t), radius}; }
};

struct Hotspot
{
  WorldPoint position;
  int specimens = 1;
};

/// Radius of a 1 m^2 barrel.
inline constexpr double kBarrelRadius = 0.5641895835477563;
inline constexpr double kBarrelHeight = 1.2;

class WorldModel
{
public:
  WorldModel() = default;
  /// `static_map` is the ground-truth occupancy; `solids` are the same obstacles as geometry.
  WorldModel(GridMap static_map, std::vector<Solid> solids);

  const GridMap& static_map() const { return static_map_; }
  std::span<const Solid> solids() const { return solids_; }
  std::span<const DynamicObstacle> dynamic_obstacles() const { return dynamic_; }
  std::span<const Hotspot> hotspots() const { return hotspots_; }
  std::span<const Disc> barrels() const { return barrels_; }

  /// Adds a solid and marks its conservative footprint on the static map.
  void add_solid(const Solid& solid);
  void add_barrel(WorldPoint center, double radius = kBarrelRadius);
  void add_dynamic(DynamicObstacle obstacle) { dynamic_.push_back(std::move(obstacle)); }
  void add_hotspot(Hotspot h) { hotspots_.push_back(h); }

  /// True when `p` lies in an Obstacle cell of the static map, or in a cell
  /// overlapped by a moving obstacle at time `t`. Points off the map never collide.
  bool collides(WorldPoint p, double t = 0.0) const;

  /// Distance along the 3D ray from `origin` (at altitude `z`) with horizontal
  /// unit direction `dir` and elevation `elevation` to the first surface hit,
  /// ground plane included; nullopt when nothing is hit within `max_range`.
  std::optional<double> raycast(WorldPoint origin, double z, WorldPoint dir, double elevation,
                                double max_range, double t = 0.0) const;

private:
  GridMap static_map_;
  std::vector<Solid> solids_;
  std::vector<Disc> barrels_;
  std::vector<DynamicObstacle> dynamic_;
  std::vector<Hotspot> hotspots_;
};

class SamplingError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct SamplingOptions
{
  double barrel_radius = kBarrelRadius;
  /// Free margin kept between a barrel and every waypoint cell [m].
  double waypoint_clearance = 0.1;
  int max_consecutive_rejections = 10000;
};

/// Number of 1 m^2 barrels for `density_percent` of the map area (ceil).
int barrel_count(const GridMap& map, double density_percent);

/// Places barrels by rejection sampling until the requested density is met.
/// A candidate is rejected when its footprint grown by the waypoint clearance
/// covers a waypoint cell, when it covers an existing obstacle cell, or when it disconnects consecutive waypoints.
/// Throws SamplingError after too many consecutive rejections.
void sample_obstacles(WorldModel& world, double density_percent,
                      std::span<const WorldPoint> waypoints, std::uint64_t seed,
                      const SamplingOptions& options = {});

}  // namespace agriroute
