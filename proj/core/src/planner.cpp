#include "agriroute/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace agriroute
{

namespace
{
constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr int kDu[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDv[8] = {0, 0, 1, -1, 1, -1, 1, -1};

struct OpenEntry
{
  double f;
  double g;
  int u;
  int v;
};

// std::priority_queue pops the "largest" element, so "less" means "worse".
struct WorseEntry
{
  bool operator()(const OpenEntry& a, const OpenEntry& b) const
  {
    if (a.f != b.f) {
      return a.f > b.f;
    }
    if (a.g != b.g) {
      return a.g < b.g;
    }
    if (a.u != b.u) {
      return a.u > b.u;
    }
    return a.v > b.v;
  }
};

void require_in_bounds(const GridMap& map, GridIndex i, const char* what)
{
  if (!map.in_bounds(i)) {
    throw std::invalid_argument(std::string(what) + " outside map");
  }
}
}  // namespace

double heuristic(GridIndex cell, GridIndex destination)
{
  return std::hypot(static_cast<double>(cell.u - destination.u),
                    static_cast<double>(cell.v - destination.v));
}

PlanOutcome astar(const PlanQuery& q)
{
  const auto t0 = std::chrono::steady_clock::now();
  const GridMap& map = q.map;
  require_in_bounds(map, q.source, "source");
  require_in_bounds(map, q.destination, "destination");
  if (map.at(q.source) == CellState::Obstacle) {
    throw std::invalid_argument("source cell is an obstacle");
  }
  if (map.at(q.destination) == CellState::Obstacle) {
    return NoPath{"destination blocked"};
  }

  const std::size_t n = static_cast<std::size_t>(map.width()) * map.height();
  std::vector<double> g(n, kInf);
  std::vector<std::int32_t> parent(n, -1);
  std::vector<std::uint8_t> closed(n, 0);
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, WorseEntry> open;

  PlanResult result;
  const std::size_t src = map.offset(q.source);
  g[src] = 0.0;
  open.push({heuristic(q.source, q.destination), 0.0, q.source.u, q.source.v});
  result.generated_nodes = 1;

  bool found = false;
  while (!open.empty()) {
    const OpenEntry cur = open.top();
    open.pop();
    const GridIndex ci{cur.u, cur.v};
    const std::size_t co = map.offset(ci);
    if (closed[co] || cur.g > g[co]) {
      continue;
    }
    closed[co] = 1;
    ++result.expanded_nodes;
    if (ci == q.destination) {
      found = true;
      break;
    }
    for (int k = 0; k < 8; ++k) {
      const GridIndex ni{cur.u + kDu[k], cur.v + kDv[k]};
      if (!map.in_bounds(ni)) {
        continue;
      }
      const std::size_t no = map.offset(ni);
      if (closed[no]) {
        continue;
      }
      const auto step = edge_cost(q.scheme, ci, ni, map, q.metric);
      if (!step) {
        continue;
      }
      const double ng = cur.g + *step;
      if (ng < g[no]) {
        g[no] = ng;
        parent[no] = static_cast<std::int32_t>(co);
        open.push({ng + heuristic(ni, q.destination), ng, ni.u, ni.v});
        ++result.generated_nodes;
      }
    }
  }

  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!found) {
    return NoPath{"destination unreachable"};
  }
  const std::size_t dst = map.offset(q.destination);
  result.total_cost = g[dst];
  for (std::int32_t at = static_cast<std::int32_t>(dst); at != -1; at = parent[static_cast<std::size_t>(at)]) {
    result.path.push_back({at % map.width(), at / map.width()});
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

double path_length_m(std::span<const GridIndex> path, double cell_side)
{
  double len = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    len += heuristic(path[i - 1], path[i]);
  }
  return len * cell_side;
}

std::vector<std::optional<double>> costs_from(const GridMap& map, GridIndex source,
                                              std::span<const GridIndex> targets, Metric metric,
                                              const CostScheme& scheme)
{
  require_in_bounds(map, source, "source");
  std::vector<std::optional<double>> out(targets.size());
  if (map.at(source) == CellState::Obstacle) {
    return out;
  }
  const std::size_t n = static_cast<std::size_t>(map.width()) * map.height();
  std::vector<double> g(n, kInf);
  std::vector<std::uint8_t> closed(n, 0);
  std::vector<std::uint8_t> is_target(n, 0);
  std::size_t pending = 0;
  for (const auto& t : targets) {
    require_in_bounds(map, t, "target");
    auto& flag = is_target[map.offset(t)];
    if (!flag && map.at(t) != CellState::Obstacle) {
      flag = 1;
      ++pending;
    }
  }

  using Entry = std::pair<double, std::int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  g[map.offset(source)] = 0.0;
  open.push({0.0, static_cast<std::int32_t>(map.offset(source))});
  while (!open.empty() && pending > 0) {
    const auto [d, at] = open.top();
    open.pop();
    const auto co = static_cast<std::size_t>(at);
    if (closed[co] || d > g[co]) {
      continue;
    }
    closed[co] = 1;
    if (is_target[co]) {
      --pending;
    }
    const GridIndex ci{at % map.width(), at / map.width()};
    for (int k = 0; k < 8; ++k) {
      const GridIndex ni{ci.u + kDu[k], ci.v + kDv[k]};
      if (!map.in_bounds(ni)) {
        continue;
      }
      const std::size_t no = map.offset(ni);
      if (closed[no]) {
        continue;
      }
      const auto step = edge_cost(scheme, ci, ni, map, metric);
      if (step && d + *step < g[no]) {
        g[no] = d + *step;
        open.push({g[no], static_cast<std::int32_t>(no)});
      }
    }
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::size_t o = map.offset(targets[i]);
    if (closed[o]) {
      out[i] = g[o];
    }
  }
  return out;
}

std::vector<std::int32_t> label_components(const GridMap& map)
{
  const std::size_t n = static_cast<std::size_t>(map.width()) * map.height();
  std::vector<std::int32_t> label(n, -2);
  std::vector<std::int32_t> stack;
  std::int32_t next = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (label[start] != -2) {
      continue;
    }
    const GridIndex s{static_cast<int>(start % map.width()), static_cast<int>(start / map.width())};
    if (map.at(s) == CellState::Obstacle) {
      label[start] = -1;
      continue;
    }
    label[start] = next;
    stack.push_back(static_cast<std::int32_t>(start));
    while (!stack.empty()) {
      const std::int32_t at = stack.back();
      stack.pop_back();
      const GridIndex ci{at % map.width(), at / map.width()};
      for (int k = 0; k < 8; ++k) {
        const GridIndex ni{ci.u + kDu[k], ci.v + kDv[k]};
        if (!map.in_bounds(ni)) {
          continue;
        }
        const std::size_t no = map.offset(ni);
        if (label[no] != -2) {
          continue;
        }
        if (map.at(ni) == CellState::Obstacle) {
          label[no] = -1;
          continue;
        }
        label[no] = next;
        stack.push_back(static_cast<std::int32_t>(no));
      }
    }
    ++next;
  }
  return label;
}

double effective_branching_factor(double expanded_nodes, int depth)
{
  if (!(expanded_nodes >= 1.0) || depth < 1) {
    throw std::invalid_argument("effective_branching_factor needs N >= 1 and d >= 1");
  }
  const auto f = [&](double b) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k <= depth; ++k) {
      term *= b;
      sum += term;
      if (!std::isfinite(sum)) {
        break;
      }
    }
    return sum - expanded_nodes;
  };
  double lo = 1e-6;
  double hi = expanded_nodes;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= 1e-9 || hi - lo <= 1e-15 * std::max(1.0, hi)) {
      break;
    }
    if (fm > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // The bracket endpoint itself can be the exact root (N = d = 1 gives b = N).
  if (std::abs(f(hi)) < std::abs(f(mid))) {
    return hi;
  }
  return mid;
}

}  // namespace agriroute
