#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "agriroute/geometry.hpp"

using namespace agriroute;

namespace
{
const GridGeometry kFourMeter{{0.0, 0.0}, 0.1, 40, 40};
}

TEST(Quantize, OriginCell)
{
  EXPECT_EQ(world_to_grid({0.0, 0.0}, kFourMeter), (GridIndex{0, 0}));
}

TEST(Quantize, FloorsInteriorPoint)
{
  EXPECT_EQ(world_to_grid({0.25, 0.31}, kFourMeter), (GridIndex{2, 3}));
}

TEST(Quantize, LastCellOfFortyCellMap)
{
  EXPECT_EQ(world_to_grid({3.95, 3.95}, kFourMeter), (GridIndex{39, 39}));
}

TEST(Quantize, BoundaryGoesToHigherCell)
{
  EXPECT_EQ(quantize({0.5, 1.0}, {0.0, 0.0}, 0.25), (GridIndex{2, 4}));
}

TEST(Quantize, OutsideThrowsInsteadOfClamping)
{
  EXPECT_THROW(world_to_grid({4.0, 1.0}, kFourMeter), OutOfRangeError);
  EXPECT_THROW(world_to_grid({-0.01, 1.0}, kFourMeter), OutOfRangeError);
  EXPECT_THROW(world_to_grid({NAN, 1.0}, kFourMeter), OutOfRangeError);
}

TEST(Quantize, RejectsNonPositiveCell)
{
  EXPECT_THROW(quantize({0, 0}, {0, 0}, 0.0), std::invalid_argument);
}

TEST(CellCenter, Examples)
{
  const auto a = grid_to_world_center({0, 0}, kFourMeter);
  EXPECT_NEAR(a.x, 0.05, 1e-12);
  EXPECT_NEAR(a.y, 0.05, 1e-12);
  const auto b = grid_to_world_center({20, 0}, kFourMeter);
  EXPECT_NEAR(b.x, 2.05, 1e-12);
  EXPECT_NEAR(b.y, 0.05, 1e-12);
  const auto c = grid_to_world_center({39, 39}, kFourMeter);
  EXPECT_NEAR(c.x, 3.95, 1e-12);
  EXPECT_NEAR(c.y, 3.95, 1e-12);
  EXPECT_THROW(grid_to_world_center({40, 0}, kFourMeter), OutOfRangeError);
}

TEST(CellCenter, RoundTripEveryCell)
{
  const GridGeometry g{{-2.0, 0.0}, 0.1, 40, 40};
  for (int v = 0; v < g.height; ++v) {
    for (int u = 0; u < g.width; ++u) {
      ASSERT_EQ(world_to_grid(grid_to_world_center({u, v}, g), g), (GridIndex{u, v}));
    }
  }
}

TEST(BodyToWorld, IdentityHeading)
{
  const auto p = body_to_world({0, 1}, {{0, 0}, 0.0});
  EXPECT_NEAR(p.x, 0.0, 1e-12);
  EXPECT_NEAR(p.y, 1.0, 1e-12);
}

TEST(BodyToWorld, QuarterTurn)
{
  const auto p = body_to_world({0, 1}, {{0, 0}, kPi / 2});
  EXPECT_NEAR(p.x, -1.0, 1e-12);
  EXPECT_NEAR(p.y, 0.0, 1e-12);
}

TEST(BodyToWorld, HalfTurnWithTranslation)
{
  const auto p = body_to_world({1, 1}, {{2, 3}, kPi});
  EXPECT_NEAR(p.x, 1.0, 1e-12);
  EXPECT_NEAR(p.y, 2.0, 1e-12);
}

TEST(BodyToWorld, InverseAndIsometry)
{
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 1000; ++i) {
    const BodyFrame f{{u(gen), u(gen)}, u(gen)};
    const WorldPoint a{u(gen), u(gen)};
    const WorldPoint b{u(gen), u(gen)};
    const auto wa = body_to_world(a, f);
    const auto wb = body_to_world(b, f);
    ASSERT_NEAR(distance(wa, wb), distance(a, b), 1e-9);
    const auto back = world_to_body(wa, f);
    ASSERT_NEAR(back.x, a.x, 1e-9);
    ASSERT_NEAR(back.y, a.y, 1e-9);
  }
}

TEST(BodyFrameOf, BoresightAlongYaw)
{
  const Pose4 pose{1.0, 2.0, 1.0, 0.3};
  const auto ahead = body_to_world({0.0, 1.0}, body_frame_of(pose));
  EXPECT_NEAR(ahead.x, 1.0 + std::cos(0.3), 1e-12);
  EXPECT_NEAR(ahead.y, 2.0 + std::sin(0.3), 1e-12);
}

TEST(RelativeTransform, ComposesFrames)
{
  const BodyFrame a{{1.0, 2.0}, 0.4};
  const BodyFrame b{{-3.0, 0.5}, -1.1};
  const Rigid2 t = relative_transform(a, b);
  const WorldPoint p{0.7, -0.2};
  const auto expect = world_to_body(body_to_world(p, a), b);
  const auto got = t.apply(p);
  EXPECT_NEAR(got.x, expect.x, 1e-12);
  EXPECT_NEAR(got.y, expect.y, 1e-12);
  const auto back = t.inverse().apply(got);
  EXPECT_NEAR(back.x, p.x, 1e-12);
  EXPECT_NEAR(back.y, p.y, 1e-12);
}

TEST(NormalizeAngle, RangeAndIdempotence)
{
  EXPECT_DOUBLE_EQ(normalize_angle(kPi), kPi);
  EXPECT_NEAR(normalize_angle(-kPi), kPi, 1e-12);
  EXPECT_NEAR(normalize_angle(3 * kPi / 2), -kPi / 2, 1e-12);
  for (double x = -20.0; x < 20.0; x += 0.137) {
    const double n = normalize_angle(x);
    ASSERT_GT(n, -kPi);
    ASSERT_LE(n, kPi);
    ASSERT_EQ(normalize_angle(n), n);
    ASSERT_NEAR(std::cos(n), std::cos(x), 1e-9);
    ASSERT_NEAR(std::sin(n), std::sin(x), 1e-9);
  }
}
