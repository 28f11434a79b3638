#pragma once
/**
 * @file mission.hpp
 * @brief Global mission planning over a vineyard: field layout, per-UAV
 *        tiles, serpentine sweep waypoints and battery feasibility.
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "agriroute/occupancy.hpp"
#include "agriroute/world.hpp"

namespace agriroute
{

enum class RowAxis
{
  X,  ///< rows run parallel to x
  Y,
};

/// Rows are Obstacle bands centred every `row_spacing` across the field,
/// leaving a headland of `headland` at both ends. With `block_length` > 0 rows
/// are cut into blocks of that length, each with its own headlands (alleys).
struct FieldSpec
{
  double width = 40.0;
  double height = 40.0;
  RowAxis row_axis = RowAxis::X;
  double row_spacing = 2.75;
  double row_thickness = 0.4;
  double headland = 3.0;
  double block_length = 0.0;
  double row_height = 2.0;

  void validate() const;
};

/// Narrowest corridor the UAV fits in: drone side plus the safety ring on both sides.
inline constexpr double kMinCorridorWidth = 0.1 + 2 * 0.2;
inline constexpr double kDefaultPitch = 2.5;

class CorridorError : public std::runtime_error
{
public:
  CorridorError(const std::string& what, int corridor) : std::runtime_error(what), corridor_(corridor) {}
  int corridor() const { return corridor_; }

private:
  int corridor_;
};

struct Tile
{
  WorldPoint origin;
  double side_x = 40.0;
  double side_y = 40.0;
  int agent = 0;

  double area() const { return side_x * side_y; }
};

struct Corridor
{
  double low = 0.0;   ///< free band along the cross axis
  double high = 0.0;
  double midline() const { return 0.5 * (low + high); }
  double width() const { return high - low; }
};

/// Row centre lines along the cross axis (y for RowAxis::X).
std::vector<double> row_centers(const FieldSpec& field);

/// Free bands between rows, field edges included. Zero rows gives pitch-wide lanes.
std::vector<Corridor> corridors(const FieldSpec& field);

/// Row spans along the row axis, one per block.
std::vector<std::pair<double, double>> row_spans(const FieldSpec& field);

std::vector<Solid> row_solids(const FieldSpec& field);

/// Static global map with rows marked Obstacle.
GridMap build_static_map(const FieldSpec& field, double cell_side = 0.1);

/// Ground truth world with row solids and the matching static map.
WorldModel build_world(const FieldSpec& field, double cell_side = 0.1);

std::vector<Tile> partition(const FieldSpec& field, double tile_side = 40.0);

/// Serpentine over the corridor midlines whose midline lies in the tile:
/// waypoints every 1 m (plus both ends) at z = 1 m, yaw from the path lookahead.
/// Throws CorridorError when a corridor is narrower than kMinCorridorWidth.
std::vector<Pose4> sweep_path(const Tile& tile, const FieldSpec& field);

double polyline_length(const std::vector<Pose4>& path);

struct BatteryModel
{
  double endurance = 360.0;
  double explore_budget = 300.0;
  double return_budget = 60.0;
  double cruise_speed = 1.0;
};

struct Feasibility
{
  bool ok = true;
  double excess_seconds = 0.0;
};

Feasibility feasibility(const std::vector<Pose4>& path, const BatteryModel& battery = {});

/// Shipped evaluation environments 1, 2, 3 (10, 20 and 40 m squares).
FieldSpec environment(int index);

/// Full-field layout used for the ground-vehicle comparison.
FieldSpec default_vineyard();

struct Mission
{
  FieldSpec field;
  std::vector<Tile> tiles;
  std::vector<std::vector<Pose4>> paths;  ///< one per tile
};

Mission plan_mission(const FieldSpec& field, double tile_side = 40.0);

std::string format_mission(const Mission& mission);
Mission parse_mission(const std::string& text);

}  // namespace agriroute
