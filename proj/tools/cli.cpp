#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "agriroute/experiment.hpp"
#include "agriroute/local_nav.hpp"
#include "agriroute/logistics.hpp"
#include "agriroute/map_io.hpp"
#include "agriroute/mission.hpp"
#include "agriroute/planner.hpp"
#include "agriroute/sensor.hpp"
#include "agriroute/sim.hpp"

namespace agriroute::cli
{

namespace
{

using json = nlohmann::ordered_json;

struct DomainError : std::runtime_error
{
  DomainError(std::string kind, const std::string& message) : std::runtime_error(message), kind(std::move(kind)) {}
  std::string kind;
};

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DomainError("IoError", "cannot open " + path);
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw DomainError("IoError", "cannot write " + path);
  }
}

std::string fmt(const char* spec, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::vector<double> parse_numbers(const std::string& text, char sep)
{
  std::vector<double> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, sep)) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) {
      throw std::invalid_argument("bad number '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

struct FieldFlags
{
  int env = 0;
  double width = 200.0;
  double height = 200.0;
  double spacing = 2.75;
  double thickness = 0.4;
  double headland = 3.0;
  double block = 0.0;
  std::string axis = "x";

  void add(CLI::App* app)
  {
    app->add_option("--env", env, "Shipped environment 1, 2 or 3 (overrides the field flags)")->check(CLI::Range(1, 3));
    app->add_option("--width", width, "Field width [m]");
    app->add_option("--height", height, "Field height [m]");
    app->add_option("--spacing", spacing, "Row spacing [m]");
    app->add_option("--thickness", thickness, "Row thickness [m]");
    app->add_option("--headland", headland, "Headland at row ends [m]");
    app->add_option("--block", block, "Row block length, 0 for continuous rows [m]");
    app->add_option("--axis", axis, "Row axis")->check(CLI::IsMember({"x", "y"}));
  }

  FieldSpec spec() const
  {
    if (env != 0) {
      return environment(env);
    }
    FieldSpec f;
    f.width = width;
    f.height = height;
    f.row_spacing = spacing;
    f.row_thickness = thickness;
    f.headland = headland;
    f.block_length = block;
    f.row_axis = axis == "x" ? RowAxis::X : RowAxis::Y;
    return f;
  }
};

json agent_json(const AgentConfig& a)
{
  return json{{"policy", std::string(policy_code(a.policy))},
              {"speed", a.speed},
              {"dt", a.dt},
              {"capture_radius", a.capture_radius},
              {"random_capture_radius", a.random_capture_radius},
              {"explore_budget", a.battery.explore_budget},
              {"return_budget", a.battery.return_budget},
              {"noise", a.noise},
              {"memory", a.memory},
              {"random_yaw_escape", a.random_yaw_escape},
              {"reactive_candidates", a.reactive_candidates},
              {"reactive_clearance", a.reactive_clearance},
              {"stall_timeout", a.stall_timeout},
              {"detector_p", a.detector_p},
              {"footprint_radius", a.footprint_radius}};
}

int cmd_plan_global(const FieldFlags& ff, double tile_side, const std::string& out_path, const std::string& map_path,
                    std::ostream& out)
{
  const FieldSpec field = ff.spec();
  Mission m;
  try {
    m = plan_mission(field, tile_side);
  } catch (const CorridorError& e) {
    throw DomainError("CorridorError", e.what());
  }
  write_file(out_path, format_mission(m));
  if (!map_path.empty()) {
    save_map(build_static_map(field), map_path);
  }
  out << "tile,agent,waypoints,length_m,feasible,excess_s\n";
  for (std::size_t i = 0; i < m.tiles.size(); ++i) {
    const auto f = feasibility(m.paths[i]);
    out << i << ',' << m.tiles[i].agent << ',' << m.paths[i].size() << ',' << fmt("%.3f", polyline_length(m.paths[i]))
        << ',' << (f.ok ? 1 : 0) << ',' << fmt("%.3f", f.excess_seconds) << '\n';
  }
  return 0;
}

struct ReplanFlags
{
  std::string frame_path;
  std::string map_path;
  std::string pose = "0,0,1.5707963267948966";
  std::string waypoints;
  std::size_t next = 0;
  std::string metric = "W";
  bool memory = false;
};

int cmd_replan_local(const ReplanFlags& f, std::ostream& out)
{
  const auto pose_v = parse_numbers(f.pose, ',');
  if (pose_v.size() != 3) {
    throw std::invalid_argument("--pose expects x,y,phi");
  }
  NavState nav;
  nav.pose = {pose_v[0], pose_v[1], kFlightAltitude, pose_v[2]};
  std::stringstream ws(f.waypoints);
  std::string item;
  while (std::getline(ws, item, ';')) {
    const auto v = parse_numbers(item, ',');
    if (v.size() != 2) {
      throw std::invalid_argument("--waypoints expects x,y;x,y;...");
    }
    nav.global_path.push_back({v[0], v[1], kFlightAltitude, 0.0});
  }
  if (nav.global_path.empty() || f.next >= nav.global_path.size()) {
    throw std::invalid_argument("--next must index into --waypoints");
  }
  nav.next_waypoint_index = f.next;

  ReplanOptions opt;
  opt.metric = f.metric == "S" ? Metric::Shortest : Metric::Weighted;
  opt.memory = f.memory;
  GridMap local;
  if (!f.frame_path.empty()) {
    const DepthFrame frame = parse_frame(read_file(f.frame_path));
    opt.row = frame.planning_row();
    const AgentConfig agent;
    BackprojectOptions bp;
    bp.solid_contour = agent.solid_contour;
    bp.contour_depth = agent.contour_depth;
    local = backproject(*opt.row, agent.sensor, bp);
  } else {
    try {
      local = parse_map(read_file(f.map_path));
    } catch (const MapParseError& e) {
      throw DomainError("MapParseError", e.what());
    }
    if (local.width() != 40 || local.height() != 40) {
      throw DomainError("MapParseError", "local map must be 40x40 cells");
    }
  }
  auto outcome = replan_local(nav, local, opt);
  if (const auto* b = std::get_if<Blockage>(&outcome)) {
    throw DomainError("Blockage", b->reason);
  }
  const auto& lp = std::get<LocalPlan>(outcome);
  out << "# cost " << fmt("%.3f", lp.plan.total_cost) << " expanded " << lp.plan.expanded_nodes << " generated "
      << lp.plan.generated_nodes << " depth " << lp.plan.depth() << '\n';
  for (const auto& p : lp.waypoints) {
    out << fmt("%.3f", p.x) << ' ' << fmt("%.3f", p.y) << ' ' << fmt("%.3f", p.z) << ' ' << fmt("%.6f", p.phi) << '\n';
  }
  return 0;
}

std::string record_csv(const RunRecord& r, const Scenario& s)
{
  std::ostringstream out;
  out << kCoverageHeader << '\n';
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%d,%s,%s,%llu,%zu,%zu,%.4f,%d,%d,%.3f\n", s.env, format_double(s.density).c_str(),
                std::string(policy_code(s.policy)).c_str(), static_cast<unsigned long long>(s.seed),
                r.waypoints_total, r.waypoints_reached, r.pct(), r.collisions, r.blockages, r.flight_time);
  out << buf;
  return out.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Routing, sensing and coverage experiments for vineyard nano-UAVs", "agriroute"};
  app.require_subcommand(1);

  FieldFlags pg_field;
  double tile_side = 40.0;
  std::string pg_out;
  std::string pg_map;
  auto* pg = app.add_subcommand("plan-global", "Partition a field and write per-tile sweep waypoints");
  pg_field.add(pg);
  pg->add_option("--tile-side", tile_side, "Maximum tile side [m]")->check(CLI::PositiveNumber);
  pg->add_option("--out", pg_out, "Mission file")->required();
  pg->add_option("--map", pg_map, "Also write the static map");

  ReplanFlags rl;
  auto* rlc = app.add_subcommand("replan-local", "Plan on one local map");
  auto* frame_opt = rlc->add_option("--frame", rl.frame_path, "8x8 depth frame text file");
  auto* map_opt = rlc->add_option("--local-map", rl.map_path, "40x40 local map file");
  frame_opt->excludes(map_opt);
  rlc->add_option("--pose", rl.pose, "x,y,phi");
  rlc->add_option("--waypoints", rl.waypoints, "Global path x,y;x,y;...")->required();
  rlc->add_option("--next", rl.next, "Index of the next waypoint");
  rlc->add_option("--metric", rl.metric)->check(CLI::IsMember({"W", "S"}));
  rlc->add_flag("--memory", rl.memory, "Skip the full-FoV blockage check");

  std::string sim_scenario;
  std::optional<int> sim_env;
  std::optional<double> sim_density;
  std::optional<std::string> sim_policy;
  std::optional<std::uint64_t> sim_seed;
  std::optional<bool> sim_memory;
  std::optional<double> sim_p;
  std::optional<int> sim_hotspots;
  std::string sim_events;
  std::string sim_out;
  auto* sim = app.add_subcommand("simulate", "Run one scenario");
  sim->add_option("--scenario", sim_scenario, "Scenario file (key=value)");
  sim->add_option("--env", sim_env)->check(CLI::Range(1, 3));
  sim->add_option("--density", sim_density)->check(CLI::Range(0.0, 100.0));
  sim->add_option("--policy", sim_policy, "B, R, W, S or X");
  sim->add_option("--seed", sim_seed);
  sim->add_option("--memory", sim_memory, "0 or 1");
  sim->add_option("--detector-p", sim_p)->check(CLI::Range(0.0, 1.0));
  sim->add_option("--hotspots", sim_hotspots);
  sim->add_option("--events", sim_events, "Event log output");
  sim->add_option("--out", sim_out, "Run record CSV");

  std::vector<int> cov_envs{1, 2, 3};
  std::vector<double> cov_densities{0, 1, 2, 5, 10};
  std::vector<std::string> cov_policies{"B", "R", "W", "S"};
  int cov_seeds = 20;
  std::uint64_t cov_base = 1;
  unsigned cov_threads = 0;
  bool cov_memory = false;
  std::string cov_out;
  auto* cov = app.add_subcommand("experiment-coverage", "Waypoint coverage over envs x densities x policies x seeds");
  cov->add_option("--envs", cov_envs)->delimiter(',')->check(CLI::Range(1, 3));
  cov->add_option("--densities", cov_densities)->delimiter(',')->check(CLI::Range(0.0, 100.0));
  cov->add_option("--policies", cov_policies)->delimiter(',');
  cov->add_option("--seeds", cov_seeds)->check(CLI::PositiveNumber);
  cov->add_option("--base-seed", cov_base);
  cov->add_option("--threads", cov_threads);
  cov->add_flag("--memory", cov_memory);
  cov->add_option("--out", cov_out)->required();

  std::vector<int> lg_counts{0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  int lg_seeds = 5;
  std::uint64_t lg_base = 1;
  double lg_cell = 0.5;
  double lg_speed = 0.2;
  unsigned lg_threads = 0;
  std::string lg_out;
  FieldFlags lg_field;
  auto* lg = app.add_subcommand("experiment-logistics", "Ground-vehicle hotspot tour vs full sweep");
  lg_field.add(lg);
  lg->add_option("--counts", lg_counts)->delimiter(',')->check(CLI::Range(0, 100000));
  lg->add_option("--seeds", lg_seeds)->check(CLI::PositiveNumber);
  lg->add_option("--base-seed", lg_base);
  lg->add_option("--cell-side", lg_cell)->check(CLI::PositiveNumber);
  lg->add_option("--speed", lg_speed)->check(CLI::PositiveNumber);
  lg->add_option("--threads", lg_threads);
  lg->add_option("--out", lg_out)->required();

  double bs_n = 0.0;
  int bs_d = 0;
  auto* bs = app.add_subcommand("bstar", "Effective branching factor");
  bs->add_option("--n", bs_n, "Expanded nodes")->required();
  bs->add_option("--d", bs_d, "Solution depth")->required();

  double ms_d = 0.65;
  double ms_o = 0.2;
  bool ms_grid = false;
  auto* ms = app.add_subcommand("maxspeed", "Maximum detectable object speed");
  ms->add_option("--distance", ms_d, "[m]");
  ms->add_option("--oside", ms_o, "Projected object side [m]");
  ms->add_flag("--grid", ms_grid, "Print the working grid as CSV");

  std::string vm_path;
  auto* vm = app.add_subcommand("validate-map", "Parse a map file");
  vm->add_option("path", vm_path)->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*pg) {
      return cmd_plan_global(pg_field, tile_side, pg_out, pg_map, out);
    }
    if (*rlc) {
      if (rl.frame_path.empty() && rl.map_path.empty()) {
        err << "replan-local needs --frame or --local-map\n";
        return 2;
      }
      return cmd_replan_local(rl, out);
    }
    if (*sim) {
      Scenario s;
      if (!sim_scenario.empty()) {
        s = parse_scenario(read_file(sim_scenario));
      }
      if (sim_env) s.env = *sim_env;
      if (sim_density) s.density = *sim_density;
      if (sim_policy) s.policy = parse_policy(*sim_policy);
      if (sim_seed) s.seed = *sim_seed;
      if (sim_memory) s.memory = *sim_memory;
      if (sim_p) s.detector_p = *sim_p;
      if (sim_hotspots) s.hotspots = *sim_hotspots;
      std::vector<Event> events;
      const RunRecord r = run_scenario(s, AgentConfig{}, &events);
      const std::string csv = record_csv(r, s);
      if (!sim_out.empty()) {
        write_file(sim_out, csv);
        AgentConfig a;
        a.policy = s.policy;
        a.memory = s.memory;
        a.detector_p = s.detector_p;
        json cfg{{"scenario", format_scenario(s)}, {"agent", agent_json(a)}};
        write_file(sim_out + ".config.json", cfg.dump(2) + "\n");
      }
      if (!sim_events.empty()) {
        std::string log;
        for (const auto& e : events) {
          log += format_event(e) + '\n';
        }
        write_file(sim_events, log);
      }
      out << csv;
      for (const auto& d : r.detections) {
        out << "# detection " << fmt("%.3f", d.position.x) << ' ' << fmt("%.3f", d.position.y) << ' ' << d.label
            << '\n';
      }
      return 0;
    }
    if (*cov) {
      ExperimentConfig cfg;
      cfg.envs = cov_envs;
      cfg.densities = cov_densities;
      cfg.policies.clear();
      for (const auto& p : cov_policies) {
        cfg.policies.push_back(parse_policy(p));
      }
      cfg.seeds = cov_seeds;
      cfg.base_seed = cov_base;
      cfg.threads = cov_threads;
      cfg.agent.memory = cov_memory;
      const auto result = run_experiment(cfg);
      std::ostringstream csv;
      write_coverage_csv(csv, result.rows);
      write_file(cov_out, csv.str());
      std::ostringstream fail;
      write_failures_csv(fail, result.failures);
      write_file(cov_out + ".failures.csv", fail.str());
      json j{{"command", "experiment-coverage"},
             {"envs", cfg.envs},
             {"densities", cfg.densities},
             {"policies", cov_policies},
             {"seeds", cfg.seeds},
             {"base_seed", cfg.base_seed},
             {"agent", agent_json(cfg.agent)}};
      write_file(cov_out + ".config.json", j.dump(2) + "\n");
      for (const auto& f : result.failures) {
        err << "warning kind=SamplingError env=" << f.env << " density=" << format_double(f.density)
            << " seed=" << f.seed << " message=\"" << f.message << "\"\n";
      }
      out << result.rows.size() << " runs, " << result.failures.size() << " sampling failures -> " << cov_out << '\n';
      return 0;
    }
    if (*lg) {
      const FieldSpec field = lg_field.spec();
      TractorSpec tractor;
      tractor.speed = lg_speed;
      const auto rows = compare_baseline(lg_counts, field, tractor, lg_seeds, lg_base, lg_cell, lg_threads);
      std::ostringstream csv;
      write_logistics_csv(csv, rows);
      write_file(lg_out, csv.str());
      json j{{"command", "experiment-logistics"},
             {"counts", lg_counts},
             {"seeds", lg_seeds},
             {"base_seed", lg_base},
             {"cell_side", lg_cell},
             {"speed", lg_speed},
             {"field",
              {{"width", field.width},
               {"height", field.height},
               {"row_axis", field.row_axis == RowAxis::X ? "x" : "y"},
               {"row_spacing", field.row_spacing},
               {"row_thickness", field.row_thickness},
               {"headland", field.headland},
               {"block_length", field.block_length}}}};
      write_file(lg_out + ".config.json", j.dump(2) + "\n");
      out << rows.size() << " tours -> " << lg_out << '\n';
      return 0;
    }
    if (*bs) {
      out << fmt("%.6f", effective_branching_factor(bs_n, bs_d)) << '\n';
      return 0;
    }
    if (*ms) {
      if (ms_grid) {
        out << "distance_m,oside_m,speed_mps\n";
        for (int i = 0; i < 10; ++i) {
          for (int k = 0; k < 10; ++k) {
            const double d = 0.20 + 0.05 * i;
            const double o = 0.20 + 0.05 * k;
            out << fmt("%.2f", d) << ',' << fmt("%.2f", o) << ',' << fmt("%.6f", max_detectable_speed(d, o).speed)
                << '\n';
          }
        }
        return 0;
      }
      const auto est = max_detectable_speed(ms_d, ms_o);
      out << fmt("%.6f", est.speed) << (est.out_of_range ? " out_of_range" : "") << '\n';
      return 0;
    }
    if (*vm) {
      try {
        const GridMap m = parse_map(read_file(vm_path));
        out << "ok " << m.width() << 'x' << m.height() << '\n';
        return 0;
      } catch (const MapParseError& e) {
        err << "error kind=MapParseError line=" << e.line() << " column=" << e.column() << " message=\"" << e.what()
            << "\"\n";
        return 1;
      }
    }
  } catch (const DomainError& e) {
    err << "error kind=" << e.kind << " message=\"" << e.what() << "\"\n";
    return 1;
  } catch (const SamplingError& e) {
    err << "error kind=SamplingError message=\"" << e.what() << "\"\n";
    return 1;
  } catch (const UnreachableHotspot& e) {
    err << "error kind=NoPath message=\"" << e.what() << "\"\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error kind=Usage message=\"" << e.what() << "\"\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error kind=Error message=\"" << e.what() << "\"\n";
    return 1;
  }
  return 2;
}

}  // namespace agriroute::cli
