#include "agriroute/geometry.hpp"

#include <string>

namespace agriroute
{

namespace
{
// Absorbs representation error so that 0.3 / 0.1 lands in cell 3, not 2.
constexpr double kQuantizationSlack = 1e-9;

std::string describe(GridIndex i, const GridGeometry& g)
{
  return "cell (" + std::to_string(i.u) + ", " + std::to_string(i.v) + ") outside " +
         std::to_string(g.width) + "x" + std::to_string(g.height) + " grid";
}
}  // namespace

double normalize_angle(double radians)
{
  double a = std::fmod(radians, 2.0 * kPi);
  if (a <= -kPi) {
    a += 2.0 * kPi;
  } else if (a > kPi) {
    a -= 2.0 * kPi;
  }
  return a;
}

GridIndex quantize(WorldPoint p, WorldPoint map_origin, double cell_side)
{
  if (!(cell_side > 0.0)) {
    throw std::invalid_argument("cell_side must be positive");
  }
  const double fu = (p.x - map_origin.x) / cell_side;
  const double fv = (p.y - map_origin.y) / cell_side;
  return {static_cast<int>(std::floor(fu + kQuantizationSlack)),
          static_cast<int>(std::floor(fv + kQuantizationSlack))};
}

GridIndex world_to_grid(WorldPoint p, const GridGeometry& geometry)
{
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw OutOfRangeError("non-finite world point");
  }
  const GridIndex i = quantize(p, geometry.origin, geometry.cell_side);
  if (!geometry.contains(i)) {
    throw OutOfRangeError(describe(i, geometry));
  }
  return i;
}

WorldPoint grid_to_world_center(GridIndex i, const GridGeometry& geometry)
{
  if (!geometry.contains(i)) {
    throw OutOfRangeError(describe(i, geometry));
  }
  return {geometry.origin.x + (i.u + 0.5) * geometry.cell_side,
          geometry.origin.y + (i.v + 0.5) * geometry.cell_side};
}

WorldPoint rotate(WorldPoint p, double angle)
{
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

WorldPoint body_to_world(WorldPoint p_body, const BodyFrame& frame)
{
  return rotate(p_body, frame.heading) + frame.origin;
}

WorldPoint world_to_body(WorldPoint p_world, const BodyFrame& frame)
{
  return rotate(p_world - frame.origin, -frame.heading);
}

BodyFrame body_frame_of(const Pose4& pose)
{
  return {{pose.x, pose.y}, normalize_angle(pose.phi - kPi / 2.0)};
}

Rigid2 Rigid2::inverse() const
{
  return {-angle, rotate(WorldPoint{-translation.x, -translation.y}, -angle)};
}

Rigid2 relative_transform(const BodyFrame& from, const BodyFrame& to)
{
  // p_to = R(-h_to) (R(h_from) p + o_from - o_to)
  const double angle = from.heading - to.heading;
  return {angle, rotate(from.origin - to.origin, -to.heading)};
}

}  // namespace agriroute
