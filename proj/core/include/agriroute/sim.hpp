#pragma once
/**
 * @file sim.hpp
 * @brief Discrete-time UAV simulation locked to the 15 Hz sensor tick.
 *
 * Policies: Blind follows the global path without sensing; Random flies legs
 * of random heading and length; WeightedLocal / ShortestLocal replan on the
 * local map with the matching metric; Reactive steers among candidate
 * headings inside the field of view.
 */

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agriroute/detection.hpp"
#include "agriroute/local_nav.hpp"
#include "agriroute/mission.hpp"
#include "agriroute/sensor.hpp"
#include "agriroute/world.hpp"

namespace agriroute
{

enum class Policy
{
  Blind,
  Random,
  WeightedLocal,
  ShortestLocal,
  Reactive,
};

/// B, R, W, S, X
std::string_view policy_code(Policy p);
/// Accepts the one-letter code or the full name (case-insensitive).
Policy parse_policy(std::string_view text);

struct AgentConfig
{
  Policy policy = Policy::WeightedLocal;
  double speed = 1.0;
  double dt = 1.0 / 15.0;
  double capture_radius = 0.1;
  double random_capture_radius = 0.3;
  BatteryModel battery;
  SensorSpec sensor;
  CostScheme scheme;
  bool noise = true;
  bool memory = false;
  double memory_reanchor_distance = 0.5;
  double memory_reanchor_angle = deg_to_rad(45.0);
  bool solid_contour = true;
  double contour_depth = 0.6;
  bool random_yaw_escape = false;
  int reactive_candidates = 15;
  double reactive_clearance = 0.5;
  double stall_timeout = 15.0;
  double path_horizon = 6.0;     ///< global path length checked against the local map
  double yaw_lookahead = 0.5;    ///< arc length ahead used for yaw on the global path
  double turn_lookahead = 0.3;   ///< rotate in place when this point ahead leaves the FoV
  double max_yaw_rate = deg_to_rad(180.0);
  double scan_half_angle = deg_to_rad(90.0);
  double scan_step = deg_to_rad(30.0);
  double rescan_distance = 0.3;
  double detector_p = 0.8;
  double footprint_radius = 1.0;
};

struct Event
{
  double t = 0.0;
  int agent = 0;
  std::string kind;
  std::string payload;
};

/// "<t> <agent> <KIND> <payload>" with t in seconds, 3 decimals.
std::string format_event(const Event& e);

struct RunRecord
{
  std::string scenario;
  std::uint64_t seed = 0;
  Policy policy = Policy::Blind;
  std::size_t waypoints_total = 0;
  std::size_t waypoints_reached = 0;
  int collisions = 0;
  int blockages = 0;
  double flight_time = 0.0;
  std::vector<Detection> detections;

  double pct() const
  {
    return waypoints_total == 0 ? 100.0 : 100.0 * static_cast<double>(waypoints_reached) / waypoints_total;
  }
};

enum class StopReason
{
  Running,
  Finished,
  Battery,
  Collision,
  Blockage,
  Stall,
};

class Agent
{
public:
  Agent(std::vector<Pose4> global_path, AgentConfig config, std::uint64_t seed, int id = 0);

  /// Advances one tick of `config.dt`. Returns the events raised.
  std::vector<Event> step(const WorldModel& world);

  bool done() const { return stop_ != StopReason::Running; }
  StopReason stop_reason() const { return stop_; }
  double time() const { return tick_ * config_.dt; }
  const NavState& nav() const { return nav_; }
  const Pose4& pose() const { return nav_.pose; }
  RunRecord record() const;
  /// Emit one FRAME event per sensed planning row.
  void set_frame_events(bool on) { frame_events_ = on; }

private:
  void capture_waypoints(std::vector<Event>& events, const WorldModel& world);
  bool move_along(std::vector<WorldPoint> targets, double step, const WorldModel& world, std::vector<Event>& events,
                  std::size_t* consumed);
  double global_yaw() const;
  /// Heading towards the point `turn_lookahead` along `targets`.
  std::optional<double> aim_direction(const std::vector<WorldPoint>& targets) const;
  /// Rotates in place when the aim point lies outside the outer zone rays.
  bool turn_towards(const std::vector<WorldPoint>& targets);
  /// Yaw update limited by `max_yaw_rate`.
  void set_yaw(double target);
  void step_blind(const WorldModel& world, std::vector<Event>& events);
  void step_random(const WorldModel& world, std::vector<Event>& events);
  void step_local(const WorldModel& world, std::vector<Event>& events);
  void step_reactive(const WorldModel& world, std::vector<Event>& events);
  void stop(StopReason r, std::vector<Event>& events, const std::string& payload = {});
  Event event(std::string kind, std::string payload = {}) const;
  PlanningRow sense(const WorldModel& world);

  AgentConfig config_;
  std::uint64_t seed_;
  int id_;
  NavState nav_;
  std::size_t local_index_ = 0;
  std::vector<bool> visited_;
  std::size_t reached_ = 0;
  std::int64_t tick_ = 0;
  double last_progress_ = 0.0;
  int collisions_ = 0;
  int blockages_ = 0;
  StopReason stop_ = StopReason::Running;
  Rng rng_;
  GroundTruthDetector detector_;
  std::vector<Detection> detections_;
  std::vector<bool> hotspot_seen_;
  std::optional<WorldPoint> leg_target_;
  std::vector<double> scan_yaws_;
  std::optional<WorldPoint> last_scan_at_;
  bool frame_events_ = false;
  std::vector<Event> pending_;
};

/// Runs an agent over `global_path` until it finishes, crashes, blocks or
/// the exploration budget runs out.
RunRecord simulate(const WorldModel& world, const std::vector<Pose4>& global_path, const AgentConfig& config,
                   std::uint64_t seed, std::vector<Event>* events = nullptr, int agent = 0);

/// Moving disc bouncing along a corridor midline at `speed`.
DynamicObstacle corridor_mover(const FieldSpec& field, int corridor, double speed, double radius = 0.3);

/// Hotspots placed uniformly on non-Obstacle cells.
void place_hotspots(WorldModel& world, int count, std::uint64_t seed, int specimens = 1);

/// Environment + density + policy + seed, loaded from `key=value` lines.
struct Scenario
{
  int env = 1;
  double density = 0.0;
  Policy policy = Policy::WeightedLocal;
  std::uint64_t seed = 0;
  std::uint64_t base_seed = 1;
  bool memory = false;
  double detector_p = 0.8;
  int hotspots = 0;
  int movers = 0;

  std::string id() const;
};

Scenario parse_scenario(const std::string& text);
std::string format_scenario(const Scenario& s);

/// Seed of the world shared by all policies of one (env, density, seed) cell.
std::uint64_t world_seed(std::uint64_t base_seed, int env, double density, std::uint64_t seed);
std::uint64_t agent_seed(std::uint64_t world_seed, Policy policy);

struct Trial
{
  WorldModel world;
  std::vector<Pose4> path;
};

/// Builds the environment, samples barrels; throws SamplingError.
Trial make_trial(int env, double density, std::uint64_t world_seed);

RunRecord run_scenario(const Scenario& s, const AgentConfig& base, std::vector<Event>* events = nullptr);

}  // namespace agriroute
