#pragma once
/**
 * @file planner.hpp
 * @brief A* over 8-connected occupancy grids.
 *
 * Edge costs come from edge_cost(): the Euclidean step (1 or sqrt 2) plus,
 * under Metric::Weighted, the cost of the destination cell's state. Every
 * edge is at least as long as its Euclidean step, so the Euclidean
 * heuristic is consistent for both metrics and each node is expanded once.
 *
 * Ties on f are broken towards the larger g (deeper node), then towards the
 * lexicographically smaller (u, v), which makes results reproducible.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "agriroute/occupancy.hpp"

namespace agriroute
{

struct PlanQuery
{
  const GridMap& map;
  GridIndex source;
  GridIndex destination;
  Metric metric = Metric::Weighted;
  CostScheme scheme{};
};

struct PlanResult
{
  std::vector<GridIndex> path;  ///< source first, destination last
  double total_cost = 0.0;
  std::size_t expanded_nodes = 0;
  std::size_t generated_nodes = 0;
  double wall_time = 0.0;  ///< seconds

  /// Solution depth in edges.
  std::size_t depth() const { return path.empty() ? 0 : path.size() - 1; }
};

struct NoPath
{
  std::string reason;
};

using PlanOutcome = std::variant<PlanResult, NoPath>;

/// Euclidean distance in cell units.
double heuristic(GridIndex cell, GridIndex destination);

/// Throws std::invalid_argument when source/destination are out of bounds or
/// the source is an Obstacle. A blocked destination yields NoPath.
PlanOutcome astar(const PlanQuery& query);

/// Path length in meters (sum of Euclidean steps times cell side).
double path_length_m(std::span<const GridIndex> path, double cell_side);

/// Uniform-cost search from `source`, stopping once every target is settled.
/// Result i is the optimal cost to targets[i], or nullopt when unreachable.
std::vector<std::optional<double>> costs_from(const GridMap& map, GridIndex source,
                                              std::span<const GridIndex> targets, Metric metric,
                                              const CostScheme& scheme = {});

/// 8-connected component label per cell (row-major); -1 for Obstacle cells.
std::vector<std::int32_t> label_components(const GridMap& map);

/// Solves N = b + b^2 + ... + b^d for b > 0 by bisection on [1e-6, N].
/// Throws std::invalid_argument unless N >= 1 and d >= 1.
double effective_branching_factor(double expanded_nodes, int depth);

}  // namespace agriroute
