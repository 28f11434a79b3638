#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <queue>
#include <random>

#include "agriroute/planner.hpp"

using namespace agriroute;

namespace
{

double state_cost(CellState s)
{
  switch (s) {
  case CellState::GlobalPath:
    return 0.0;
  case CellState::Free:
    return 25.0;
  case CellState::Unknown:
    return 50.0;
  case CellState::SafetyArea:
    return 75.0;
  default:
    return std::numeric_limits<double>::infinity();
  }
}

// Plain Dijkstra with its own edge model.
double dijkstra(const GridMap& m, GridIndex s, GridIndex t, Metric metric)
{
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(m.width() * m.height()), inf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  const auto id = [&](GridIndex g) { return g.v * m.width() + g.u; };
  dist[static_cast<std::size_t>(id(s))] = 0.0;
  open.push({0.0, id(s)});
  while (!open.empty()) {
    const auto [d, k] = open.top();
    open.pop();
    if (d > dist[static_cast<std::size_t>(k)]) {
      continue;
    }
    const GridIndex g{k % m.width(), k / m.width()};
    for (int dv = -1; dv <= 1; ++dv) {
      for (int du = -1; du <= 1; ++du) {
        const GridIndex n{g.u + du, g.v + dv};
        if ((du == 0 && dv == 0) || !m.in_bounds(n) || m.at(n) == CellState::Obstacle) {
          continue;
        }
        const double step = (du != 0 && dv != 0) ? std::sqrt(2.0) : 1.0;
        const double nd = d + step + (metric == Metric::Weighted ? state_cost(m.at(n)) : 0.0);
        if (nd < dist[static_cast<std::size_t>(id(n))]) {
          dist[static_cast<std::size_t>(id(n))] = nd;
          open.push({nd, id(n)});
        }
      }
    }
  }
  return dist[static_cast<std::size_t>(id(t))];
}

GridMap random_map(std::mt19937_64& gen, int n, double p_obstacle)
{
  GridMap m(n, n);
  std::uniform_int_distribution<int> st(0, 3);
  std::bernoulli_distribution obstacle(p_obstacle);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) {
      m.set({u, v}, obstacle(gen) ? CellState::Obstacle : static_cast<CellState>(st(gen)));
    }
  }
  return m;
}

void expect_valid_path(const GridMap& m, const PlanResult& r, GridIndex s, GridIndex t)
{
  ASSERT_FALSE(r.path.empty());
  EXPECT_EQ(r.path.front(), s);
  EXPECT_EQ(r.path.back(), t);
  for (std::size_t i = 0; i < r.path.size(); ++i) {
    ASSERT_NE(m.at(r.path[i]), CellState::Obstacle);
    if (i > 0) {
      const int du = std::abs(r.path[i].u - r.path[i - 1].u);
      const int dv = std::abs(r.path[i].v - r.path[i - 1].v);
      ASSERT_LE(std::max(du, dv), 1);
      ASSERT_GT(du + dv, 0);
    }
  }
}

}  // namespace

TEST(Heuristic, Examples)
{
  EXPECT_DOUBLE_EQ(heuristic({0, 0}, {3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(heuristic({7, 7}, {7, 7}), 0.0);
  EXPECT_DOUBLE_EQ(heuristic({0, 0}, {1, 1}), std::sqrt(2.0));
}

TEST(Astar, EmptyDiagonal)
{
  const GridMap m(10, 10);
  const auto out = astar({m, {0, 0}, {9, 9}, Metric::Shortest});
  const auto& r = std::get<PlanResult>(out);
  EXPECT_NEAR(r.total_cost, 9 * std::sqrt(2.0), 1e-9);
  EXPECT_EQ(r.path.size(), 10u);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(r.path[static_cast<std::size_t>(i)], (GridIndex{i, i}));
  }
}

TEST(Astar, SourceEqualsDestination)
{
  const GridMap m(10, 10);
  const auto& r = std::get<PlanResult>(astar({m, {4, 4}, {4, 4}, Metric::Weighted}));
  EXPECT_EQ(r.path, (std::vector<GridIndex>{{4, 4}}));
  EXPECT_EQ(r.total_cost, 0.0);
}

TEST(Astar, WallGivesNoPath)
{
  GridMap m(5, 5);
  for (int v = 0; v < 5; ++v) {
    m.set({2, v}, CellState::Obstacle);
  }
  EXPECT_TRUE(std::holds_alternative<NoPath>(astar({m, {0, 0}, {4, 4}, Metric::Shortest})));
}

TEST(Astar, BlockedDestinationAndContractErrors)
{
  GridMap m(5, 5);
  m.set({4, 4}, CellState::Obstacle);
  const auto out = astar({m, {0, 0}, {4, 4}, Metric::Weighted});
  ASSERT_TRUE(std::holds_alternative<NoPath>(out));
  EXPECT_EQ(std::get<NoPath>(out).reason, "destination blocked");
  EXPECT_THROW(astar({m, {4, 4}, {0, 0}, Metric::Weighted}), std::invalid_argument);
  EXPECT_THROW(astar({m, {0, 0}, {5, 0}, Metric::Weighted}), std::invalid_argument);
}

TEST(Astar, MatchesDijkstraOnRandomMaps)
{
  std::mt19937_64 gen(1234);
  std::uniform_int_distribution<int> cell(0, 19);
  for (Metric metric : {Metric::Weighted, Metric::Shortest}) {
    int solved = 0;
    for (int i = 0; i < 1000; ++i) {
      const GridMap m = random_map(gen, 20, 0.25);
      const GridIndex s{cell(gen), cell(gen)};
      const GridIndex t{cell(gen), cell(gen)};
      if (m.at(s) == CellState::Obstacle) {
        continue;
      }
      const double oracle = dijkstra(m, s, t, metric);
      const auto out = astar({m, s, t, metric});
      if (std::isinf(oracle)) {
        ASSERT_TRUE(std::holds_alternative<NoPath>(out));
        continue;
      }
      const auto& r = std::get<PlanResult>(out);
      ASSERT_NEAR(r.total_cost, oracle, 1e-9);
      expect_valid_path(m, r, s, t);
      ++solved;
      // Heuristic admissibility on this solvable instance.
      ASSERT_LE(heuristic(s, t), oracle + 1e-12);
    }
    EXPECT_GT(solved, 300);
  }
}

TEST(Astar, Deterministic)
{
  std::mt19937_64 gen(5);
  const GridMap m = random_map(gen, 30, 0.2);
  GridIndex s{0, 0}, t{29, 29};
  GridMap open = m;
  open.set(s, CellState::Free);
  open.set(t, CellState::Free);
  const auto a = astar({open, s, t, Metric::Weighted});
  const auto b = astar({open, s, t, Metric::Weighted});
  ASSERT_EQ(a.index(), b.index());
  if (const auto* ra = std::get_if<PlanResult>(&a)) {
    const auto& rb = std::get<PlanResult>(b);
    EXPECT_EQ(ra->path, rb.path);
    EXPECT_EQ(ra->expanded_nodes, rb.expanded_nodes);
    EXPECT_EQ(ra->total_cost, rb.total_cost);
  }
}

TEST(CostsFrom, AgreesWithAstar)
{
  std::mt19937_64 gen(77);
  std::uniform_int_distribution<int> cell(0, 14);
  for (int i = 0; i < 40; ++i) {
    GridMap m = random_map(gen, 15, 0.2);
    const GridIndex s{cell(gen), cell(gen)};
    m.set(s, CellState::Free);
    std::vector<GridIndex> targets;
    for (int k = 0; k < 5; ++k) {
      targets.push_back({cell(gen), cell(gen)});
    }
    const auto costs = costs_from(m, s, targets, Metric::Shortest);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const double oracle = dijkstra(m, s, targets[k], Metric::Shortest);
      if (std::isinf(oracle)) {
        ASSERT_FALSE(costs[k].has_value());
      } else {
        ASSERT_NEAR(*costs[k], oracle, 1e-9);
      }
    }
  }
}

TEST(Components, LabelsSplitByWall)
{
  GridMap m(5, 3);
  for (int v = 0; v < 3; ++v) {
    m.set({2, v}, CellState::Obstacle);
  }
  const auto labels = label_components(m);
  EXPECT_EQ(labels[m.offset({2, 1})], -1);
  EXPECT_NE(labels[m.offset({0, 0})], labels[m.offset({4, 0})]);
  EXPECT_EQ(labels[m.offset({0, 0})], labels[m.offset({1, 2})]);
}

TEST(PathLength, Meters)
{
  const std::vector<GridIndex> p{{0, 0}, {1, 1}, {2, 1}};
  EXPECT_NEAR(path_length_m(p, 0.1), 0.1 * (1 + std::sqrt(2.0)), 1e-12);
}

TEST(BranchingFactor, Examples)
{
  EXPECT_NEAR(effective_branching_factor(1, 1), 1.0, 1e-9);
  EXPECT_NEAR(effective_branching_factor(3, 2), (-1 + std::sqrt(13.0)) / 2, 1e-9);
  EXPECT_NEAR(effective_branching_factor(14, 3), 2.0, 1e-6);
  EXPECT_THROW(effective_branching_factor(0.5, 2), std::invalid_argument);
  EXPECT_THROW(effective_branching_factor(10, 0), std::invalid_argument);
}

TEST(BranchingFactor, SolvesPolynomialAndIsMonotone)
{
  for (int d = 1; d <= 12; ++d) {
    double prev = 0.0;
    for (double n = 1; n < 5000; n *= 1.7) {
      const double b = effective_branching_factor(n, d);
      double sum = 0.0, pw = 1.0;
      for (int k = 1; k <= d; ++k) {
        pw *= b;
        sum += pw;
      }
      ASSERT_NEAR(sum, n, 1e-6 * n);
      ASSERT_GT(b, prev);
      prev = b;
    }
  }
}
