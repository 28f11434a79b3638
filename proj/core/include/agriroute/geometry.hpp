#pragma once
/**
 * @file geometry.hpp
 * @brief Frames, grid quantization and rigid transforms shared by every module.
 *
 * Conventions:
 * - World frame is a right-handed x/y plane; yaw `phi` follows atan2 (0 = +x).
 * - Body frame: +y is forward (sensor boresight), +x is right. A BodyFrame
 *   heading rotates body coordinates into world coordinates, so a UAV with
 *   yaw phi has heading phi - pi/2.
 * - Grids quantize with half-open cells [k*cell, (k+1)*cell); points on a
 *   boundary belong to the higher-index cell.
 */

#include <cmath>
#include <compare>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace agriroute
{

inline constexpr double kPi = std::numbers::pi;

struct WorldPoint
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const WorldPoint&, const WorldPoint&) = default;
};

inline WorldPoint operator+(WorldPoint a, WorldPoint b) { return {a.x + b.x, a.y + b.y}; }
inline WorldPoint operator-(WorldPoint a, WorldPoint b) { return {a.x - b.x, a.y - b.y}; }
inline WorldPoint operator*(double s, WorldPoint a) { return {s * a.x, s * a.y}; }

inline double distance(WorldPoint a, WorldPoint b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct GridIndex
{
  int u = 0;  ///< column
  int v = 0;  ///< row

  friend auto operator<=>(const GridIndex&, const GridIndex&) = default;
};

/// UAV pose: world position plus yaw. Flight waypoints sit at the fixed 1 m altitude.
struct Pose4
{
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double phi = 0.0;

  WorldPoint position() const { return {x, y}; }
};

inline constexpr double kFlightAltitude = 1.0;

struct BodyFrame
{
  WorldPoint origin;
  double heading = 0.0;
};

/// Thrown when a quantized point falls outside the owning map.
class OutOfRangeError : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

/// Wraps an angle into (-pi, pi].
double normalize_angle(double radians);

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Grid placement shared by world_to_grid / grid_to_world_center.
struct GridGeometry
{
  WorldPoint origin;
  double cell_side = 0.1;
  int width = 0;
  int height = 0;

  bool contains(GridIndex i) const { return i.u >= 0 && i.v >= 0 && i.u < width && i.v < height; }
};

/// Floor quantization without a bounds check; may return negative or oversized indices.
GridIndex quantize(WorldPoint p, WorldPoint map_origin, double cell_side);

/// Floor quantization; throws OutOfRangeError instead of clamping.
GridIndex world_to_grid(WorldPoint p, const GridGeometry& geometry);

/// Center of cell `i`; throws OutOfRangeError when `i` is outside the grid.
WorldPoint grid_to_world_center(GridIndex i, const GridGeometry& geometry);

WorldPoint rotate(WorldPoint p, double angle);

/// Rotation by heading followed by translation by origin.
WorldPoint body_to_world(WorldPoint p_body, const BodyFrame& frame);
WorldPoint world_to_body(WorldPoint p_world, const BodyFrame& frame);

/// Body frame of a UAV whose boresight points along yaw `pose.phi`.
BodyFrame body_frame_of(const Pose4& pose);

/// Rigid 2D transform p' = R(angle) p + translation.
struct Rigid2
{
  double angle = 0.0;
  WorldPoint translation;

  WorldPoint apply(WorldPoint p) const { return rotate(p, angle) + translation; }
  Rigid2 inverse() const;
};

/// Transform mapping coordinates in body frame `from` to body frame `to`.
Rigid2 relative_transform(const BodyFrame& from, const BodyFrame& to);

}  // namespace agriroute
