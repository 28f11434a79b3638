#pragma once
/**
 * @file occupancy.hpp
 * @brief Five-state occupancy grids, obstacle footprints, safety inflation
 *        and the destination-state cost scheme used by the planner.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "agriroute/geometry.hpp"

namespace agriroute
{

/// Declared in traversal-preference order; Obstacle is never traversable.
enum class CellState : std::uint8_t
{
  GlobalPath,
  Free,
  Unknown,
  SafetyArea,
  Obstacle,
};

/// Map-file alphabet: P, F, U, S, O.
char to_char(CellState s);
std::optional<CellState> cell_state_from_char(char c);

/// Layer-composition precedence: Obstacle > SafetyArea > GlobalPath > Free > Unknown.
CellState dominant(CellState a, CellState b);

enum class Metric
{
  Weighted,
  Shortest,
};

/// Extra cost charged when an edge enters a cell of the given state.
class CostScheme
{
public:
  /// Throws std::invalid_argument unless 0 <= global_path < free < unknown < safety_area.
  CostScheme(double global_path = 0.0, double free = 25.0, double unknown = 50.0,
             double safety_area = 75.0);

  /// nullopt for Obstacle.
  std::optional<double> cost(CellState s) const;

  double global_path() const { return costs_[0]; }
  double free() const { return costs_[1]; }
  double unknown() const { return costs_[2]; }
  double safety_area() const { return costs_[3]; }

private:
  double costs_[4];
};

class GridMap
{
public:
  GridMap() = default;
  GridMap(int width, int height, double cell_side = 0.1, WorldPoint origin = {},
          CellState fill = CellState::Free);

  /// 40x40 body-frame map of 0.1 m cells with the UAV at bottom-center (origin (-2, 0)).
  static GridMap local(CellState fill = CellState::Unknown);

  int width() const { return geometry_.width; }
  int height() const { return geometry_.height; }
  double cell_side() const { return geometry_.cell_side; }
  WorldPoint origin() const { return geometry_.origin; }
  const GridGeometry& geometry() const { return geometry_; }

  bool in_bounds(GridIndex i) const { return geometry_.contains(i); }
  CellState at(GridIndex i) const { return cells_[offset(i)]; }
  void set(GridIndex i, CellState s) { cells_[offset(i)] = s; }

  /// Cell containing `p`, or nullopt when `p` is outside the map.
  std::optional<GridIndex> cell_of(WorldPoint p) const;
  WorldPoint center_of(GridIndex i) const { return grid_to_world_center(i, geometry_); }

  std::span<const CellState> cells() const { return cells_; }
  std::size_t count(CellState s) const;
  std::size_t offset(GridIndex i) const
  {
    return static_cast<std::size_t>(i.v) * static_cast<std::size_t>(geometry_.width) +
           static_cast<std::size_t>(i.u);
  }

  friend bool operator==(const GridMap& a, const GridMap& b)
  {
    return a.geometry_.width == b.geometry_.width && a.geometry_.height == b.geometry_.height &&
           a.geometry_.cell_side == b.geometry_.cell_side && a.geometry_.origin == b.geometry_.origin &&
           a.cells_ == b.cells_;
  }

private:
  GridGeometry geometry_;
  std::vector<CellState> cells_;
};

struct Disc
{
  WorldPoint center;
  double radius = 0.0;
};

/// Simple polygon, vertices in order (either winding).
struct Polygon
{
  std::vector<WorldPoint> vertices;
};

using Shape = std::variant<Disc, Polygon>;

/// Axis-aligned rectangle helper.
Polygon make_rectangle(WorldPoint min_corner, WorldPoint max_corner);

/// True when `shape` and the closed cell square share positive area.
bool shape_overlaps_cell(const Shape& shape, WorldPoint cell_min, double cell_side);
bool shape_contains(const Shape& shape, WorldPoint p);

struct FootprintResult
{
  std::size_t cells_marked = 0;
  bool outside_map = false;  ///< shape does not touch the map at all; map untouched
};

/// Marks every cell sharing area with `shape` as Obstacle (conservative).
FootprintResult mark_obstacle_footprint(GridMap& map, const Shape& shape);

/// Cells of `map` sharing area with `shape` (no marking).
std::vector<GridIndex> footprint_cells(const GridMap& map, const Shape& shape);

/// Demotes every non-Obstacle cell within Chebyshev distance `radius_cells`
/// of an Obstacle to SafetyArea.
void inflate_safety(GridMap& map, int radius_cells = 2);

/// Path cells that are Free or Unknown become GlobalPath; others are left alone.
/// Throws OutOfRangeError for cells outside the map.
void overlay_global_path(GridMap& map, std::span<const GridIndex> path);

/// Step length in cell units (1 or sqrt 2), plus the destination-state cost
/// under the Weighted metric. nullopt when `to` is an Obstacle.
/// Throws std::invalid_argument when the cells are not 8-neighbours.
std::optional<double> edge_cost(const CostScheme& scheme, GridIndex from, GridIndex to,
                                const GridMap& map, Metric metric);

}  // namespace agriroute
