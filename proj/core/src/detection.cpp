#include "agriroute/detection.hpp"

#include <stdexcept>

namespace agriroute
{

GroundTruthDetector::GroundTruthDetector(double p, double footprint_radius)
  : p_(p), radius_(footprint_radius)
{
  if (!(p >= 0.0 && p <= 1.0) || !(footprint_radius >= 0.0)) {
    throw std::invalid_argument("detector probability must be in [0, 1] and radius non-negative");
  }
}

std::vector<Detection> GroundTruthDetector::detect(const Pose4& pose, const WorldModel& world, Rng& rng) const
{
  std::vector<Detection> out;
  const auto hotspots = world.hotspots();
  for (std::size_t i = 0; i < hotspots.size(); ++i) {
    if (distance(hotspots[i].position, pose.position()) > radius_) {
      continue;
    }
    bool seen = false;
    for (int s = 0; s < hotspots[i].specimens; ++s) {
      seen = rng.bernoulli(p_) || seen;
    }
    if (seen) {
      out.push_back({hotspots[i].position, kPestLabel, i});
    }
  }
  return out;
}

std::vector<Detection> detect(const Pose4& pose, const WorldModel& world, const Detector& detector,
                              std::uint64_t seed)
{
  Rng rng(seed);
  return detector.detect(pose, world, rng);
}

}  // namespace agriroute
