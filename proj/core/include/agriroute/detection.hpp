#pragma once
/**
 * @file detection.hpp
 * @brief Pluggable pest detector. The shipped detector is a ground-truth
 *        oracle that misses each specimen with probability 1 - p.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "agriroute/random.hpp"
#include "agriroute/world.hpp"

namespace agriroute
{

struct Detection
{
  WorldPoint position;
  std::string label;
  std::size_t hotspot = 0;  ///< index into WorldModel::hotspots()
};

class Detector
{
public:
  virtual ~Detector() = default;
  virtual std::vector<Detection> detect(const Pose4& pose, const WorldModel& world, Rng& rng) const = 0;
};

class GroundTruthDetector : public Detector
{
public:
  explicit GroundTruthDetector(double p = 0.8, double footprint_radius = 1.0);

  double probability() const { return p_; }
  double footprint_radius() const { return radius_; }

  /// One detection per hotspot with at least one specimen detected inside the
  /// camera footprint (disc under the UAV). Specimens are drawn independently.
  std::vector<Detection> detect(const Pose4& pose, const WorldModel& world, Rng& rng) const override;

private:
  double p_;
  double radius_;
};

inline const char* const kPestLabel = "popillia_japonica";

std::vector<Detection> detect(const Pose4& pose, const WorldModel& world, const Detector& detector,
                              std::uint64_t seed);

}  // namespace agriroute
