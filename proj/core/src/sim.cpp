#include "agriroute/sim.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <sstream>

#include "agriroute/map_io.hpp"

namespace agriroute
{

std::string_view policy_code(Policy p)
{
  switch (p) {
  case Policy::Blind:
    return "B";
  case Policy::Random:
    return "R";
  case Policy::WeightedLocal:
    return "W";
  case Policy::ShortestLocal:
    return "S";
  case Policy::Reactive:
    return "X";
  }
  return "?";
}

Policy parse_policy(std::string_view text)
{
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "b" || t == "blind") {
    return Policy::Blind;
  }
  if (t == "r" || t == "random") {
    return Policy::Random;
  }
  if (t == "w" || t == "weighted" || t == "weightedlocal") {
    return Policy::WeightedLocal;
  }
  if (t == "s" || t == "shortest" || t == "shortestlocal") {
    return Policy::ShortestLocal;
  }
  if (t == "x" || t == "reactive") {
    return Policy::Reactive;
  }
  throw std::invalid_argument("unknown policy '" + std::string(text) + "'");
}

std::string format_event(const Event& e)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f %d ", e.t, e.agent);
  std::string out = buf + e.kind;
  if (!e.payload.empty()) {
    out += ' ';
    out += e.payload;
  }
  return out;
}

namespace
{
std::string fmt3(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string point_text(WorldPoint p) { return fmt3(p.x) + ' ' + fmt3(p.y); }
}  // namespace

Agent::Agent(std::vector<Pose4> global_path, AgentConfig config, std::uint64_t seed, int id)
  : config_(std::move(config)),
    seed_(seed),
    id_(id),
    rng_(derive_seed({seed, 0x7a11})),
    detector_(config_.detector_p, config_.footprint_radius)
{
  if (global_path.empty()) {
    throw std::invalid_argument("agent needs a non-empty global path");
  }
  nav_.pose = global_path.front();
  nav_.pose.z = kFlightAltitude;
  nav_.global_path = std::move(global_path);
  visited_.assign(nav_.global_path.size(), false);
}

Event Agent::event(std::string kind, std::string payload) const
{
  return {time(), id_, std::move(kind), std::move(payload)};
}

void Agent::stop(StopReason r, std::vector<Event>& events, const std::string& payload)
{
  stop_ = r;
  static const char* const names[] = {"RUNNING", "FINISH", "BATTERY", "COLLISION", "BLOCKAGE", "STALL"};
  events.push_back(event(names[static_cast<int>(r)], payload));
}

PlanningRow Agent::sense(const WorldModel& world)
{
  std::optional<std::uint64_t> noise;
  if (config_.noise) {
    noise = derive_seed({seed_, 0x5e45, static_cast<std::uint64_t>(tick_)});
  }
  const PlanningRow row = capture(world, nav_.pose, config_.sensor, noise, time()).planning_row();
  if (frame_events_) {
    std::string payload;
    for (double d : row) {
      payload += (payload.empty() ? "" : " ") + fmt3(d);
    }
    pending_.push_back(event("FRAME", payload));
  }
  return row;
}

void Agent::capture_waypoints(std::vector<Event>& events, const WorldModel& world)
{
  const WorldPoint p = nav_.pose.position();
  const auto& wp = nav_.global_path;
  const auto on_reach = [&](std::size_t i) {
    visited_[i] = true;
    ++reached_;
    last_progress_ = time();
    events.push_back(event("WAYPOINT_REACHED", std::to_string(i)));
    if (!world.hotspots().empty()) {
      hotspot_seen_.resize(world.hotspots().size(), false);
      for (auto& d : detect(wp[i], world, detector_, derive_seed({seed_, 0xde7, i}))) {
        if (!hotspot_seen_[d.hotspot]) {
          hotspot_seen_[d.hotspot] = true;
          events.push_back(event("DETECTION", point_text(d.position) + ' ' + d.label));
          detections_.push_back(std::move(d));
        }
      }
    }
  };
  if (config_.policy == Policy::Random) {
    for (std::size_t i = 0; i < wp.size(); ++i) {
      if (!visited_[i] && distance(p, wp[i].position()) < config_.random_capture_radius) {
        on_reach(i);
      }
    }
    if (reached_ == wp.size()) {
      nav_.next_waypoint_index = wp.size();
      stop(StopReason::Finished, events);
    }
    return;
  }
  while (!nav_.finished() && distance(p, wp[nav_.next_waypoint_index].position()) < config_.capture_radius) {
    on_reach(nav_.next_waypoint_index);
    ++nav_.next_waypoint_index;
  }
  if (nav_.finished()) {
    stop(StopReason::Finished, events);
  }
}

bool Agent::move_along(std::vector<WorldPoint> targets, double step, const WorldModel& world,
                       std::vector<Event>& events, std::size_t* consumed)
{
  constexpr double kSample = 0.05;
  const double t = time() + config_.dt;
  std::size_t k = 0;
  while (step > 1e-12 && k < targets.size()) {
    const WorldPoint p = nav_.pose.position();
    const double d = distance(p, targets[k]);
    const double m = std::min(d, step);
    if (d > 1e-12) {
      const int n = std::max(1, static_cast<int>(std::ceil(m / kSample)));
      for (int i = 1; i <= n; ++i) {
        const WorldPoint q = p + (m * i / n / d) * (targets[k] - p);
        nav_.pose.x = q.x;
        nav_.pose.y = q.y;
        if (world.collides(q, t)) {
          ++collisions_;
          stop(StopReason::Collision, events, point_text(q));
          return false;
        }
        capture_waypoints(events, world);
        if (done()) {
          return false;
        }
      }
    }
    step -= m;
    if (m < d - 1e-12) {
      break;
    }
    ++k;
  }
  if (consumed) {
    *consumed = k;
  }
  return true;
}

double Agent::global_yaw() const
{
  const auto& wp = nav_.global_path;
  WorldPoint from = nav_.pose.position();
  WorldPoint aim = from;
  double left = config_.yaw_lookahead;
  for (std::size_t i = nav_.next_waypoint_index; i < wp.size(); ++i) {
    const WorldPoint w = wp[i].position();
    const double d = distance(from, w);
    if (d >= left) {
      aim = from + (left / d) * (w - from);
      break;
    }
    left -= d;
    from = w;
    aim = w;
  }
  const WorldPoint p = nav_.pose.position();
  if (distance(aim, p) < 1e-9) {
    return nav_.pose.phi;
  }
  return std::atan2(aim.y - p.y, aim.x - p.x);
}

std::vector<Event> Agent::step(const WorldModel& world)
{
  std::vector<Event> events;
  if (done()) {
    return events;
  }
  if (tick_ == 0) {
    events.push_back(event("START", std::string(policy_code(config_.policy))));
    capture_waypoints(events, world);
    if (done()) {
      return events;
    }
  }
  if (time() >= config_.battery.explore_budget - 1e-9) {
    stop(StopReason::Battery, events);
    return events;
  }
  switch (config_.policy) {
  case Policy::Blind:
    step_blind(world, events);
    break;
  case Policy::Random:
    step_random(world, events);
    break;
  case Policy::WeightedLocal:
  case Policy::ShortestLocal:
    step_local(world, events);
    break;
  case Policy::Reactive:
    step_reactive(world, events);
    break;
  }
  if (!pending_.empty()) {
    events.insert(events.begin(), std::make_move_iterator(pending_.begin()), std::make_move_iterator(pending_.end()));
    pending_.clear();
  }
  ++tick_;
  if (!done() && config_.policy != Policy::Random && time() - last_progress_ > config_.stall_timeout) {
    ++blockages_;
    stop(StopReason::Stall, events, std::to_string(nav_.next_waypoint_index));
  }
  return events;
}

void Agent::step_blind(const WorldModel& world, std::vector<Event>& events)
{
  const auto& wp = nav_.global_path;
  std::vector<WorldPoint> targets;
  for (std::size_t i = nav_.next_waypoint_index; i < wp.size() && targets.size() < 4; ++i) {
    targets.push_back(wp[i].position());
  }
  if (move_along(targets, config_.speed * config_.dt, world, events, nullptr)) {
    nav_.pose.phi = global_yaw();
  }
}

void Agent::step_random(const WorldModel& world, std::vector<Event>& events)
{
  const GridMap& map = world.static_map();
  const double x_max = map.origin().x + map.width() * map.cell_side();
  const double y_max = map.origin().y + map.height() * map.cell_side();
  if (!leg_target_) {
    const WorldPoint p = nav_.pose.position();
    leg_target_ = p;
    for (int attempt = 0; attempt < 100; ++attempt) {
      const double heading = rng_.uniform(-kPi, kPi);
      nav_.pose.phi = heading;
      const PlanningRow row = sense(world);
      const double reach = std::min(*std::min_element(row.begin(), row.end()), config_.sensor.range_max);
      const double len = reach * (1.0 - rng_.uniform01());
      const WorldPoint q = p + len * WorldPoint{std::cos(heading), std::sin(heading)};
      if (q.x >= map.origin().x && q.y >= map.origin().y && q.x < x_max && q.y < y_max) {
        leg_target_ = q;
        break;
      }
    }
  }
  std::size_t consumed = 0;
  if (move_along({*leg_target_}, config_.speed * config_.dt, world, events, &consumed) && consumed == 1) {
    leg_target_.reset();
  }
}

void Agent::step_local(const WorldModel& world, std::vector<Event>& events)
{
  const bool scanning = !scan_yaws_.empty();
  if (scanning) {
    nav_.pose.phi = scan_yaws_.front();
    scan_yaws_.erase(scan_yaws_.begin());
  }
  const PlanningRow row = sense(world);
  BackprojectOptions bp;
  bp.inflate = false;
  bp.solid_contour = config_.solid_contour;
  bp.contour_depth = config_.contour_depth;
  GridMap raw = backproject(row, config_.sensor, bp);
  const BodyFrame body = body_frame_of(nav_.pose);
  if (config_.memory) {
    if (!nav_.memory) {
      nav_.memory = LocalMemory{raw, body};
    } else {
      const BodyFrame anchor = nav_.memory->frame;
      raw = merge_memory(nav_.memory->map, raw, relative_transform(anchor, body));
      // Fresh views fold into a fixed anchor; re-anchor after real motion only.
      if (distance(anchor.origin, body.origin) > config_.memory_reanchor_distance ||
          std::abs(normalize_angle(anchor.heading - body.heading)) > config_.memory_reanchor_angle) {
        nav_.memory = LocalMemory{raw, body};
      } else {
        nav_.memory->map = merge_memory(raw, nav_.memory->map, relative_transform(body, anchor));
      }
    }
  }
  if (scanning && !scan_yaws_.empty()) {
    return;
  }
  GridMap map = raw;
  inflate_safety(map, 2);

  const auto& wp = nav_.global_path;
  std::vector<WorldPoint> remaining{nav_.pose.position()};
  if (nav_.active_local_path) {
    for (std::size_t i = local_index_; i < nav_.active_local_path->size(); ++i) {
      remaining.push_back((*nav_.active_local_path)[i].position());
    }
  } else {
    double len = 0.0;
    for (std::size_t i = nav_.next_waypoint_index; i < wp.size() && len < config_.path_horizon; ++i) {
      len += distance(remaining.back(), wp[i].position());
      remaining.push_back(wp[i].position());
    }
  }
  const auto cells = rasterize_polyline(remaining, body, map);

  // An active local path already paid for its way through the safety ring.
  const bool trigger = nav_.active_local_path
                         ? std::any_of(cells.begin(), cells.end(),
                                       [&](GridIndex c) { return map.at(c) == CellState::Obstacle; })
                         : needs_replan(map, cells);
  if (scanning || trigger) {
    events.push_back(event("TRIGGER", scanning ? "scan" : "path"));
    const bool occluded = occluded_towards_waypoint(nav_, row, config_.sensor, kWorkingRange);
    if (config_.memory && !scanning && occluded &&
        !(last_scan_at_ && distance(*last_scan_at_, nav_.pose.position()) < config_.rescan_distance)) {
      const double base = nav_.pose.phi;
      for (double a = config_.scan_step; a <= config_.scan_half_angle + 1e-9; a += config_.scan_step) {
        scan_yaws_.push_back(normalize_angle(base + a));
      }
      for (double a = config_.scan_step; a <= config_.scan_half_angle + 1e-9; a += config_.scan_step) {
        scan_yaws_.push_back(normalize_angle(base - a));
      }
      scan_yaws_.push_back(base);
      last_scan_at_ = nav_.pose.position();
      nav_.active_local_path.reset();
      events.push_back(event("SCAN", point_text(nav_.pose.position())));
      return;
    }
    ReplanOptions opt;
    opt.metric = config_.policy == Policy::ShortestLocal ? Metric::Shortest : Metric::Weighted;
    opt.scheme = config_.scheme;
    opt.row = row;
    opt.sensor = config_.sensor;
    opt.memory = config_.memory;
    if (config_.memory && occluded && !scanning) {
      // Repeated occlusion right after a scan.
      opt.memory = false;
    }
    auto outcome = replan_local(nav_, map, opt);
    if (auto* b = std::get_if<Blockage>(&outcome)) {
      ++blockages_;
      nav_.active_local_path.reset();
      if (config_.random_yaw_escape) {
        events.push_back(event("BLOCKAGE", b->reason));
        nav_.pose.phi = rng_.uniform(-kPi, kPi);
        return;
      }
      stop(StopReason::Blockage, events, b->reason);
      return;
    }
    auto& lp = std::get<LocalPlan>(outcome);
    events.push_back(event("REPLAN", fmt3(lp.plan.total_cost) + ' ' + std::to_string(lp.plan.expanded_nodes)));
    if (lp.waypoints.size() < 2) {
      // Destination shares the source cell.
      lp.waypoints = {nav_.pose, wp[nav_.next_waypoint_index]};
    }
    nav_.active_local_path = std::move(lp.waypoints);
    local_index_ = 1;
  }

  const double step = config_.speed * config_.dt;
  if (nav_.active_local_path) {
    // Pure pursuit: head for the first node at least `turn_lookahead` away.
    const auto& lp = *nav_.active_local_path;
    const WorldPoint p = nav_.pose.position();
    while (local_index_ + 1 < lp.size() && distance(p, lp[local_index_].position()) < config_.turn_lookahead) {
      ++local_index_;
    }
    const std::vector<WorldPoint> target{lp[local_index_].position()};
    if (turn_towards(target)) {
      return;
    }
    std::size_t consumed = 0;
    if (!move_along(target, step, world, events, &consumed)) {
      return;
    }
    local_index_ += consumed;
    if (local_index_ >= lp.size()) {
      nav_.active_local_path.reset();
      set_yaw(global_yaw());
    } else if (const auto dir = aim_direction({lp[local_index_].position()})) {
      set_yaw(*dir);
    }
    return;
  }
  std::vector<WorldPoint> targets;
  for (std::size_t i = nav_.next_waypoint_index; i < wp.size() && targets.size() < 4; ++i) {
    targets.push_back(wp[i].position());
  }
  if (turn_towards(targets)) {
    return;
  }
  if (move_along(targets, step, world, events, nullptr)) {
    set_yaw(global_yaw());
  }
}

std::optional<double> Agent::aim_direction(const std::vector<WorldPoint>& targets) const
{
  const WorldPoint p = nav_.pose.position();
  WorldPoint from = p;
  WorldPoint aim = p;
  double left = config_.turn_lookahead;
  for (const WorldPoint& t : targets) {
    const double d = distance(from, t);
    if (d >= left) {
      aim = from + (left / d) * (t - from);
      break;
    }
    left -= d;
    from = aim = t;
  }
  if (distance(p, aim) < 1e-9) {
    return std::nullopt;
  }
  return std::atan2(aim.y - p.y, aim.x - p.x);
}

bool Agent::turn_towards(const std::vector<WorldPoint>& targets)
{
  const auto dir = aim_direction(targets);
  if (!dir || std::abs(normalize_angle(*dir - nav_.pose.phi)) <= std::abs(config_.sensor.zone_azimuth(0))) {
    return false;
  }
  set_yaw(*dir);
  return true;
}

void Agent::set_yaw(double target)
{
  const double max_step = config_.max_yaw_rate * config_.dt;
  const double diff = normalize_angle(target - nav_.pose.phi);
  nav_.pose.phi = normalize_angle(nav_.pose.phi + std::clamp(diff, -max_step, max_step));
}

void Agent::step_reactive(const WorldModel& world, std::vector<Event>& events)
{
  const WorldPoint p = nav_.pose.position();
  const WorldPoint goal = nav_.global_path[nav_.next_waypoint_index].position();
  if (distance(goal, p) > 1e-9) {
    nav_.pose.phi = std::atan2(goal.y - p.y, goal.x - p.x);
  }
  const PlanningRow row = sense(world);
  const double fov = config_.sensor.horizontal_fov();
  const double zone = config_.sensor.zone_width();
  const double heading = body_frame_of(nav_.pose).heading;
  const int n = std::max(1, config_.reactive_candidates);
  std::optional<WorldPoint> best;
  double best_score = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a = -fov / 2.0 + (k + 0.5) * fov / n;
    const int z = std::clamp(static_cast<int>(std::floor((a + fov / 2.0) / zone)), 0, 7);
    const double reading = row[static_cast<std::size_t>(z)];
    if (reading <= config_.reactive_clearance) {
      continue;
    }
    const WorldPoint dir = rotate({std::sin(a), std::cos(a)}, heading);
    const WorldPoint to_goal = goal - p;
    const double along = std::max(0.0, to_goal.x * dir.x + to_goal.y * dir.y);
    const double reach = std::min({reading - config_.reactive_clearance, 1.0, along});
    const WorldPoint end = p + reach * dir;
    const double score = distance(end, goal);
    if (!best || score < best_score - 1e-12) {
      best = end;
      best_score = score;
    }
  }
  if (!best) {
    ++blockages_;
    stop(StopReason::Blockage, events, "no free heading");
    return;
  }
  move_along({*best}, config_.speed * config_.dt, world, events, nullptr);
}

RunRecord Agent::record() const
{
  RunRecord r;
  r.seed = seed_;
  r.policy = config_.policy;
  r.waypoints_total = nav_.global_path.size();
  r.waypoints_reached = reached_;
  r.collisions = collisions_;
  r.blockages = blockages_;
  r.flight_time = time();
  r.detections = detections_;
  return r;
}

RunRecord simulate(const WorldModel& world, const std::vector<Pose4>& global_path, const AgentConfig& config,
                   std::uint64_t seed, std::vector<Event>* events, int agent)
{
  Agent a(global_path, config, seed, agent);
  a.set_frame_events(events != nullptr);
  while (!a.done()) {
    auto ev = a.step(world);
    if (events) {
      events->insert(events->end(), std::make_move_iterator(ev.begin()), std::make_move_iterator(ev.end()));
    }
  }
  return a.record();
}

DynamicObstacle corridor_mover(const FieldSpec& field, int corridor, double speed, double radius)
{
  const auto all = corridors(field);
  if (corridor < 0 || static_cast<std::size_t>(corridor) >= all.size()) {
    throw std::invalid_argument("no corridor " + std::to_string(corridor));
  }
  const double mid = all[static_cast<std::size_t>(corridor)].midline();
  const double along = field.row_axis == RowAxis::X ? field.width : field.height;
  const double lo = std::min(field.headland, along / 2.0);
  const double hi = along - lo;
  DynamicObstacle d;
  d.radius = radius;
  d.trajectory.speed = std::min(speed, max_detectable_speed(kWorkingRange, 2.0 * radius).speed);
  if (field.row_axis == RowAxis::X) {
    d.trajectory.points = {{lo, mid}, {hi, mid}};
  } else {
    d.trajectory.points = {{mid, lo}, {mid, hi}};
  }
  return d;
}

void place_hotspots(WorldModel& world, int count, std::uint64_t seed, int specimens)
{
  Rng rng(seed);
  const GridMap& map = world.static_map();
  const double w = map.width() * map.cell_side();
  const double h = map.height() * map.cell_side();
  for (int i = 0; i < count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
      const WorldPoint p{map.origin().x + rng.uniform(0.0, w), map.origin().y + rng.uniform(0.0, h)};
      const auto cell = map.cell_of(p);
      if (cell && map.at(*cell) != CellState::Obstacle) {
        world.add_hotspot({p, specimens});
        placed = true;
      }
    }
    if (!placed) {
      throw SamplingError("no free cell for hotspot " + std::to_string(i));
    }
  }
}

std::string Scenario::id() const
{
  return "env" + std::to_string(env) + "_d" + format_double(density) + "_s" + std::to_string(seed);
}

Scenario parse_scenario(const std::string& text)
{
  Scenario s;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("scenario line " + std::to_string(line_no) + ": expected key=value");
    }
    const auto trim = [](std::string v) {
      const auto a = v.find_first_not_of(" \t\r");
      const auto b = v.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "env") {
        s.env = std::stoi(value.rfind("env", 0) == 0 ? value.substr(3) : value);
      } else if (key == "density") {
        s.density = std::stod(value);
      } else if (key == "policy") {
        s.policy = parse_policy(value);
      } else if (key == "seed") {
        s.seed = std::stoull(value);
      } else if (key == "base_seed") {
        s.base_seed = std::stoull(value);
      } else if (key == "memory") {
        if (value != "0" && value != "1" && value != "true" && value != "false") {
          throw std::invalid_argument("memory must be 0, 1, true or false");
        }
        s.memory = value == "1" || value == "true";
      } else if (key == "detector_p") {
        s.detector_p = std::stod(value);
      } else if (key == "hotspots") {
        s.hotspots = std::stoi(value);
      } else if (key == "movers") {
        s.movers = std::stoi(value);
      } else {
        throw std::invalid_argument("unknown key");
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("scenario line " + std::to_string(line_no) + " (" + key + "): " + e.what());
    }
  }
  return s;
}

std::string format_scenario(const Scenario& s)
{
  std::ostringstream out;
  out << "env=" << s.env << '\n'
      << "density=" << format_double(s.density) << '\n'
      << "policy=" << policy_code(s.policy) << '\n'
      << "seed=" << s.seed << '\n'
      << "base_seed=" << s.base_seed << '\n'
      << "memory=" << (s.memory ? 1 : 0) << '\n'
      << "detector_p=" << format_double(s.detector_p) << '\n'
      << "hotspots=" << s.hotspots << '\n'
      << "movers=" << s.movers << '\n';
  return out.str();
}

std::uint64_t world_seed(std::uint64_t base_seed, int env, double density, std::uint64_t seed)
{
  return derive_seed({base_seed, static_cast<std::uint64_t>(env),
                      static_cast<std::uint64_t>(std::llround(density * 1000.0)), seed});
}

std::uint64_t agent_seed(std::uint64_t world_seed, Policy policy)
{
  return derive_seed({world_seed, 0xa9e7, static_cast<std::uint64_t>(policy)});
}

Trial make_trial(int env, double density, std::uint64_t world_seed)
{
  const FieldSpec field = environment(env);
  Trial t{build_world(field), {}};
  t.path = sweep_path({{0.0, 0.0}, field.width, field.height, 0}, field);
  std::vector<WorldPoint> points;
  points.reserve(t.path.size());
  for (const auto& p : t.path) {
    points.push_back(p.position());
  }
  sample_obstacles(t.world, density, points, world_seed);
  return t;
}

RunRecord run_scenario(const Scenario& s, const AgentConfig& base, std::vector<Event>* events)
{
  AgentConfig cfg = base;
  cfg.policy = s.policy;
  cfg.memory = s.memory;
  cfg.detector_p = s.detector_p;
  const std::uint64_t ws = world_seed(s.base_seed, s.env, s.density, s.seed);
  Trial trial = make_trial(s.env, s.density, ws);
  if (s.hotspots > 0) {
    place_hotspots(trial.world, s.hotspots, derive_seed({ws, 0x4075}));
  }
  const FieldSpec field = environment(s.env);
  const int n_corridors = static_cast<int>(corridors(field).size());
  for (int i = 0; i < s.movers; ++i) {
    trial.world.add_dynamic(corridor_mover(field, (2 * i + 1) % n_corridors, 0.5));
  }
  RunRecord r = simulate(trial.world, trial.path, cfg, agent_seed(ws, s.policy), events);
  r.scenario = s.id();
  return r;
}

}  // namespace agriroute
