#include "agriroute/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "agriroute/map_io.hpp"

namespace agriroute
{

unsigned worker_count(unsigned requested)
{
  unsigned n = requested == 0 ? std::thread::hardware_concurrency() : requested;
  if (const char* env = std::getenv("AGRIROUTE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) {
      n = std::min(n == 0 ? static_cast<unsigned>(cap) : n, static_cast<unsigned>(cap));
    }
  }
  return std::max(1u, n);
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& job)
{
  workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(n, 1)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      job(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) {
            error = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config)
{
  struct Cell
  {
    int env;
    double density;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int env : config.envs) {
    for (double d : config.densities) {
      for (int s = 0; s < config.seeds; ++s) {
        cells.push_back({env, d, static_cast<std::uint64_t>(s)});
      }
    }
  }
  std::vector<std::vector<CoverageRow>> rows(cells.size());
  std::vector<std::optional<SamplingFailure>> failures(cells.size());
  parallel_for(cells.size(), worker_count(config.threads), [&](std::size_t i) {
    const Cell& c = cells[i];
    const std::uint64_t ws = world_seed(config.base_seed, c.env, c.density, c.seed);
    Trial trial;
    try {
      trial = make_trial(c.env, c.density, ws);
    } catch (const SamplingError& e) {
      failures[i] = SamplingFailure{c.env, c.density, c.seed, e.what()};
      return;
    }
    for (Policy p : config.policies) {
      AgentConfig agent = config.agent;
      agent.policy = p;
      RunRecord r = simulate(trial.world, trial.path, agent, agent_seed(ws, p));
      r.scenario = Scenario{c.env, c.density, p, c.seed}.id();
      r.seed = c.seed;
      rows[i].push_back({c.env, c.density, p, c.seed, std::move(r)});
    }
  });
  ExperimentResult result;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (auto& r : rows[i]) {
      result.rows.push_back(std::move(r));
    }
    if (failures[i]) {
      result.failures.push_back(*failures[i]);
    }
  }
  const auto key = [](const CoverageRow& r) { return std::make_tuple(r.env, r.density, r.policy, r.seed); };
  std::sort(result.rows.begin(), result.rows.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  std::sort(result.failures.begin(), result.failures.end(), [](const auto& a, const auto& b) {
    return std::tie(a.env, a.density, a.seed) < std::tie(b.env, b.density, b.seed);
  });
  return result;
}

void write_coverage_csv(std::ostream& out, const std::vector<CoverageRow>& rows)
{
  out << kCoverageHeader << '\n';
  char buf[256];
  for (const auto& r : rows) {
    const auto& rec = r.record;
    std::snprintf(buf, sizeof(buf), "%d,%s,%s,%llu,%zu,%zu,%.4f,%d,%d,%.3f\n", r.env,
                  format_double(r.density).c_str(), std::string(policy_code(r.policy)).c_str(),
                  static_cast<unsigned long long>(r.seed), rec.waypoints_total, rec.waypoints_reached, rec.pct(),
                  rec.collisions, rec.blockages, rec.flight_time);
    out << buf;
  }
}

void write_failures_csv(std::ostream& out, const std::vector<SamplingFailure>& failures)
{
  out << "env,density_pct,seed,message\n";
  for (const auto& f : failures) {
    std::string msg = f.message;
    std::replace(msg.begin(), msg.end(), ',', ';');
    out << f.env << ',' << format_double(f.density) << ',' << f.seed << ',' << msg << '\n';
  }
}

}  // namespace agriroute
