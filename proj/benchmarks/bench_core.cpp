#include <benchmark/benchmark.h>

#include "agriroute/local_nav.hpp"
#include "agriroute/planner.hpp"
#include "agriroute/random.hpp"
#include "agriroute/sensor.hpp"
#include "agriroute/sim.hpp"

using namespace agriroute;

namespace
{

GridMap random_local_map(std::uint64_t seed, double p_obstacle)
{
  Rng rng(seed);
  GridMap m = GridMap::local(CellState::Free);
  for (int v = 0; v < m.height(); ++v) {
    for (int u = 0; u < m.width(); ++u) {
      if (rng.bernoulli(p_obstacle)) {
        m.set({u, v}, CellState::Obstacle);
      }
    }
  }
  inflate_safety(m, 1);
  m.set(kLocalSource, CellState::Free);
  return m;
}

Pose4 facing_y(double x, double y)
{
  return {x, y, kFlightAltitude, kPi / 2};
}

void BM_Astar(benchmark::State& state)
{
  const auto metric = state.range(0) ? Metric::Weighted : Metric::Shortest;
  const GridMap m = random_local_map(7, 0.15);
  GridIndex goal{20, 39};
  while (m.at(goal) == CellState::Obstacle) {
    ++goal.u;
  }
  std::size_t expanded = 0;
  for (auto _ : state) {
    auto out = astar({m, kLocalSource, goal, metric});
    if (const auto* r = std::get_if<PlanResult>(&out)) {
      expanded = r->expanded_nodes;
    }
    benchmark::DoNotOptimize(out);
  }
  state.counters["expanded"] = static_cast<double>(expanded);
}
BENCHMARK(BM_Astar)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_ReplanLocal(benchmark::State& state)
{
  const auto metric = state.range(0) ? Metric::Weighted : Metric::Shortest;
  const GridMap m = random_local_map(11, 0.2);
  NavState s;
  s.pose = facing_y(0.0, 0.0);
  s.global_path = {facing_y(0.0, 0.0), facing_y(0.5, 3.9)};
  s.next_waypoint_index = 1;
  for (auto _ : state) {
    auto out = replan_local(s, m, {.metric = metric});
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_ReplanLocal)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

WorldModel barrel_world()
{
  WorldModel w(GridMap(100, 100, 0.1, {-5.0, -5.0}), {});
  w.add_barrel({0.3, 1.5});
  w.add_barrel({-0.8, 2.5});
  w.add_solid({make_rectangle({-3.0, 3.2}, {3.0, 3.5}), 2.0});
  return w;
}

void BM_Capture(benchmark::State& state)
{
  const WorldModel w = barrel_world();
  const Pose4 p = facing_y(0.0, 0.0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto f = capture(w, p, SensorSpec{}, ++seed);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_Capture)->Unit(benchmark::kMicrosecond);

void BM_Backproject(benchmark::State& state)
{
  const PlanningRow row = capture(barrel_world(), facing_y(0.0, 0.0), SensorSpec{}).planning_row();
  BackprojectOptions opt;
  opt.solid_contour = state.range(0) != 0;
  opt.contour_depth = opt.solid_contour ? 0.6 : 0.0;
  for (auto _ : state) {
    auto m = backproject(row, SensorSpec{}, opt);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_Backproject)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
