#pragma once
/**
 * @file sensor.hpp
 * @brief Simulated 8x8 time-of-flight depth sensor.
 *
 * Zones use an equal-angle pinhole model: a square field of view whose
 * diagonal is 63 deg, split into 8x8 non-overlapping zones. Zone column i has
 * azimuth (i - 3.5) * fov/8 measured from the boresight (+y body) towards +x;
 * zone row r (0 = top) has elevation (3.5 - r) * fov/8.
 *
 * Navigation only uses row 3 (fourth from the top), which is back-projected
 * into a 40x40-cell body-frame local map.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "agriroute/occupancy.hpp"
#include "agriroute/world.hpp"

namespace agriroute
{

struct SensorSpec
{
  int zones = 8;
  double rate_hz = 15.0;
  double diag_fov = deg_to_rad(63.0);
  double range_max = 4.0;
  double near_limit = 0.2;        ///< below this the absolute accuracy band applies
  double near_accuracy = 0.015;   ///< +/- meters
  double far_accuracy = 0.11;     ///< +/- fraction of distance
  double min_reading = 0.001;

  /// Horizontal (= vertical) FoV of the square field: 2 atan(tan(diag/2) / sqrt 2).
  double horizontal_fov() const;
  double zone_width() const { return horizontal_fov() / zones; }
  double zone_azimuth(int column) const { return (column - 3.5) * zone_width(); }
  double zone_elevation(int row) const { return (3.5 - row) * zone_width(); }
  double frame_period() const { return 1.0 / rate_hz; }
};

inline constexpr int kPlanningRowIndex = 3;

using PlanningRow = std::array<double, 8>;

struct DepthFrame
{
  std::array<std::array<double, 8>, 8> zones{};  ///< [row][column], row 0 = top
  double timestamp = 0.0;
  Pose4 pose;

  PlanningRow planning_row() const { return zones[kPlanningRowIndex]; }
};

/// Ray-casts one frame. With `noise_seed` set, each return < range_max gets
/// uniform noise of +/-15 mm below 0.2 m and +/-11% above; values stay in (0, range_max].
DepthFrame capture(const WorldModel& world, const Pose4& pose, const SensorSpec& spec,
                   std::optional<std::uint64_t> noise_seed = std::nullopt, double timestamp = 0.0);

/// Applies the datasheet noise band to a single true distance.
double apply_noise(double true_distance, const SensorSpec& spec, double unit_uniform);

struct BackprojectOptions
{
  bool inflate = true;
  int safety_radius_cells = 2;
  /// Marks the whole return arc of each zone, links neighbouring returns
  /// closer than `contour_link_gap` and closes diagonal-only gaps, so an
  /// 8-connected path cannot slip through the sensed surface.
  bool solid_contour = false;
  double contour_link_gap = 0.3;
  /// Occluded depth behind each return also marked Obstacle (solid_contour only).
  double contour_depth = 0.0;
};

/// Thickens the returns of `row` already marked on `map` into a contour
/// without diagonal-only gaps, `depth` meters thick behind each return.
/// Used by backproject when solid_contour is set.
void solidify_contour(GridMap& map, const PlanningRow& row, const SensorSpec& spec, double link_gap,
                      double depth = 0.0);

/// Builds the local map for one planning row. Cells whose centers fall in a
/// zone wedge closer than that zone's return are Free; the cell holding each
/// return is Obstacle; everything else is Unknown. Inflation follows when enabled.
GridMap backproject(const PlanningRow& row, const SensorSpec& spec,
                    const BackprojectOptions& options = {});

/// Body-frame point of zone `column` returning `distance`.
WorldPoint zone_hit_point(int column, double distance, const SensorSpec& spec);

/// True when every zone of the row returns closer than `range` (obstacle fills the FoV).
bool fov_fully_occluded(const PlanningRow& row, double range);

struct SpeedEstimate
{
  double speed = 0.0;          ///< m/s
  bool out_of_range = false;   ///< distance outside (0, working_range]
};

inline constexpr double kWorkingRange = 0.65;

/// One-frame-overlap model: an object of projected side `o_side` at distance
/// `distance` is seen in at least one frame when it moves no faster than
/// (2 d tan(fov/2) + o_side) * rate.
SpeedEstimate max_detectable_speed(double distance, double o_side, const SensorSpec& spec = {});

/// Text dump: 8 rows of 8 space-separated distances with 3 decimals.
std::string format_frame(const DepthFrame& frame);
DepthFrame parse_frame(const std::string& text);

}  // namespace agriroute
