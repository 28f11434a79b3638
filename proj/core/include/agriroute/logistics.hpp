#pragma once
/**
 * @file logistics.hpp
 * @brief Ground-vehicle tour over detected hotspots and the comparison with
 *        a full-field sweep.
 */

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "agriroute/mission.hpp"
#include "agriroute/occupancy.hpp"

namespace agriroute
{

struct TractorSpec
{
  double speed = 0.2;  ///< m/s
  WorldPoint depot{0.0, 0.0};
  double dwell = 0.0;  ///< seconds spent at each hotspot
};

class UnreachableHotspot : public std::runtime_error
{
public:
  UnreachableHotspot(const std::string& what, std::size_t index) : std::runtime_error(what), index_(index) {}
  std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

/// Row 0 / column 0 is the depot, i + 1 is hotspot i. Shortest-metric A*
/// path lengths in meters (one Dijkstra sweep per source).
using DistanceMatrix = std::vector<std::vector<double>>;

DistanceMatrix pairwise_distances(const std::vector<WorldPoint>& hotspots, const GridMap& map, WorldPoint depot,
                                  unsigned threads = 1);

/// Length of the closed tour depot -> order... -> depot; `order` holds hotspot indices.
double tour_length(const std::vector<std::size_t>& order, const DistanceMatrix& d);

/// Row-structured start: by corridor, serpentine corridor order, position within the corridor.
std::vector<std::size_t> row_order(const std::vector<WorldPoint>& hotspots, const FieldSpec& field);

/// 2-opt on the closed tour until no improving reversal remains.
void two_opt(std::vector<std::size_t>& order, const DistanceMatrix& d);

struct HotspotTour
{
  std::vector<std::size_t> order;
  std::vector<std::vector<GridIndex>> legs;  ///< filled when requested
  double total_length = 0.0;                 ///< meters
  double total_time = 0.0;                   ///< hours
};

HotspotTour plan_tour(const std::vector<WorldPoint>& hotspots, const GridMap& map, const FieldSpec& field,
                      const TractorSpec& tractor = {}, bool with_legs = false);

/// Hours to drive the full serpentine sweep of the field.
double baseline_hours(const FieldSpec& field, const TractorSpec& tractor = {});

/// N hotspots uniformly on non-Obstacle cells.
std::vector<WorldPoint> random_hotspots(const GridMap& map, int n, std::uint64_t seed);

struct LogisticsRow
{
  int n_hotspots = 0;
  std::uint64_t seed = 0;
  double tour_m = 0.0;
  double tour_h = 0.0;
  double baseline_h = 0.0;
  double saving_h = 0.0;
};

std::vector<LogisticsRow> compare_baseline(const std::vector<int>& hotspot_counts, const FieldSpec& field,
                                           const TractorSpec& tractor, int seeds, std::uint64_t base_seed = 1,
                                           double cell_side = 0.5, unsigned threads = 0);

inline constexpr const char* kLogisticsHeader = "n_hotspots,seed,tour_m,tour_h,baseline_h,saving_h";

void write_logistics_csv(std::ostream& out, const std::vector<LogisticsRow>& rows);

}  // namespace agriroute
