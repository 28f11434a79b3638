#include "agriroute/logistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <tuple>

#include "agriroute/experiment.hpp"
#include "agriroute/planner.hpp"
#include "agriroute/random.hpp"

namespace agriroute
{

DistanceMatrix pairwise_distances(const std::vector<WorldPoint>& hotspots, const GridMap& map, WorldPoint depot,
                                  unsigned threads)
{
  std::vector<GridIndex> cells;
  cells.reserve(hotspots.size() + 1);
  const auto name = [](std::size_t i) { return i == 0 ? std::string("depot") : "hotspot " + std::to_string(i - 1); };
  for (std::size_t i = 0; i <= hotspots.size(); ++i) {
    const WorldPoint p = i == 0 ? depot : hotspots[i - 1];
    const auto c = map.cell_of(p);
    if (!c || map.at(*c) == CellState::Obstacle) {
      throw UnreachableHotspot(name(i) + " lies outside the map or on an obstacle", i);
    }
    cells.push_back(*c);
  }
  const std::size_t n = cells.size();
  DistanceMatrix d(n, std::vector<double>(n, 0.0));
  parallel_for(n > 0 ? n - 1 : 0, worker_count(threads), [&](std::size_t i) {
    const std::span<const GridIndex> targets(cells.data() + i + 1, n - i - 1);
    const auto costs = costs_from(map, cells[i], targets, Metric::Shortest);
    for (std::size_t k = 0; k < costs.size(); ++k) {
      if (!costs[k]) {
        throw UnreachableHotspot(name(i + 1 + k) + " is unreachable from " + name(i), i + 1 + k);
      }
      d[i][i + 1 + k] = d[i + 1 + k][i] = *costs[k] * map.cell_side();
    }
  });
  return d;
}

double tour_length(const std::vector<std::size_t>& order, const DistanceMatrix& d)
{
  if (order.empty()) {
    return 0.0;
  }
  double len = d[0][order.front() + 1] + d[order.back() + 1][0];
  for (std::size_t i = 1; i < order.size(); ++i) {
    len += d[order[i - 1] + 1][order[i] + 1];
  }
  return len;
}

std::vector<std::size_t> row_order(const std::vector<WorldPoint>& hotspots, const FieldSpec& field)
{
  const auto lanes = corridors(field);
  const bool along_x = field.row_axis == RowAxis::X;
  struct Key
  {
    std::size_t corridor;
    double along;
    std::size_t index;
  };
  std::vector<Key> keys;
  for (std::size_t i = 0; i < hotspots.size(); ++i) {
    const double cross = along_x ? hotspots[i].y : hotspots[i].x;
    std::size_t best = 0;
    double best_gap = INFINITY;
    for (std::size_t c = 0; c < lanes.size(); ++c) {
      const double gap = std::max({0.0, lanes[c].low - cross, cross - lanes[c].high});
      if (gap < best_gap) {
        best_gap = gap;
        best = c;
      }
    }
    keys.push_back({best, along_x ? hotspots[i].x : hotspots[i].y, i});
  }
  std::sort(keys.begin(), keys.end(),
            [](const Key& a, const Key& b) { return std::tie(a.corridor, a.along, a.index) < std::tie(b.corridor, b.along, b.index); });
  std::vector<std::size_t> order;
  std::size_t rank = 0;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j].corridor == keys[i].corridor) {
      ++j;
    }
    if (rank % 2 == 0) {
      for (std::size_t k = i; k < j; ++k) {
        order.push_back(keys[k].index);
      }
    } else {
      for (std::size_t k = j; k > i; --k) {
        order.push_back(keys[k - 1].index);
      }
    }
    ++rank;
    i = j;
  }
  return order;
}

void two_opt(std::vector<std::size_t>& order, const DistanceMatrix& d)
{
  const std::size_t n = order.size();
  if (n < 2) {
    return;
  }
  // Node ids with the depot (0) at both ends.
  std::vector<std::size_t> s(n + 2, 0);
  for (std::size_t i = 0; i < n; ++i) {
    s[i + 1] = order[i] + 1;
  }
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t k = i + 1; k <= n; ++k) {
        const double delta = d[s[i - 1]][s[k]] + d[s[i]][s[k + 1]] - d[s[i - 1]][s[i]] - d[s[k]][s[k + 1]];
        if (delta < -1e-9) {
          std::reverse(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(k) + 1);
          improved = true;
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = s[i + 1] - 1;
  }
}

HotspotTour plan_tour(const std::vector<WorldPoint>& hotspots, const GridMap& map, const FieldSpec& field,
                      const TractorSpec& tractor, bool with_legs)
{
  HotspotTour tour;
  if (hotspots.empty()) {
    return tour;
  }
  const DistanceMatrix d = pairwise_distances(hotspots, map, tractor.depot);
  tour.order = row_order(hotspots, field);
  two_opt(tour.order, d);
  tour.total_length = tour_length(tour.order, d);
  tour.total_time = (tour.total_length / tractor.speed + tractor.dwell * static_cast<double>(hotspots.size())) / 3600.0;
  if (with_legs) {
    std::vector<GridIndex> stops{*map.cell_of(tractor.depot)};
    for (std::size_t i : tour.order) {
      stops.push_back(*map.cell_of(hotspots[i]));
    }
    stops.push_back(stops.front());
    for (std::size_t i = 1; i < stops.size(); ++i) {
      auto out = astar({map, stops[i - 1], stops[i], Metric::Shortest});
      tour.legs.push_back(std::move(std::get<PlanResult>(out).path));
    }
  }
  return tour;
}

double baseline_hours(const FieldSpec& field, const TractorSpec& tractor)
{
  const auto path = sweep_path({{0.0, 0.0}, field.width, field.height, 0}, field);
  return polyline_length(path) / tractor.speed / 3600.0;
}

std::vector<WorldPoint> random_hotspots(const GridMap& map, int n, std::uint64_t seed)
{
  Rng rng(seed);
  const double w = map.width() * map.cell_side();
  const double h = map.height() * map.cell_side();
  std::vector<WorldPoint> out;
  while (static_cast<int>(out.size()) < n) {
    const WorldPoint p{map.origin().x + rng.uniform(0.0, w), map.origin().y + rng.uniform(0.0, h)};
    const auto c = map.cell_of(p);
    if (c && map.at(*c) != CellState::Obstacle) {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<LogisticsRow> compare_baseline(const std::vector<int>& hotspot_counts, const FieldSpec& field,
                                           const TractorSpec& tractor, int seeds, std::uint64_t base_seed,
                                           double cell_side, unsigned threads)
{
  const GridMap map = build_static_map(field, cell_side);
  const double baseline = baseline_hours(field, tractor);
  std::vector<LogisticsRow> rows;
  for (int n : hotspot_counts) {
    for (int s = 0; s < seeds; ++s) {
      rows.push_back({n, static_cast<std::uint64_t>(s), 0.0, 0.0, baseline, 0.0});
    }
  }
  parallel_for(rows.size(), worker_count(threads), [&](std::size_t i) {
    auto& r = rows[i];
    const auto hotspots = random_hotspots(
      map, r.n_hotspots, derive_seed({base_seed, static_cast<std::uint64_t>(r.n_hotspots), r.seed}));
    const auto tour = plan_tour(hotspots, map, field, tractor);
    r.tour_m = tour.total_length;
    r.tour_h = tour.total_time;
    r.saving_h = r.baseline_h - r.tour_h;
  });
  return rows;
}

void write_logistics_csv(std::ostream& out, const std::vector<LogisticsRow>& rows)
{
  out << kLogisticsHeader << '\n';
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%llu,%.3f,%.6f,%.6f,%.6f\n", r.n_hotspots,
                  static_cast<unsigned long long>(r.seed), r.tour_m, r.tour_h, r.baseline_h, r.saving_h);
    out << buf;
  }
}

}  // namespace agriroute
