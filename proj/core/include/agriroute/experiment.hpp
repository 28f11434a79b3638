#pragma once
/**
 * @file experiment.hpp
 * @brief Factorial coverage experiment over environments, barrel densities,
 *        policies and seeds. Each (env, density, seed) world is shared by all
 *        policies; cells run in parallel and rows are sorted before output.
 */

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "agriroute/sim.hpp"

namespace agriroute
{

struct ExperimentConfig
{
  std::vector<int> envs{1, 2, 3};
  std::vector<double> densities{0, 1, 2, 5, 10};
  std::vector<Policy> policies{Policy::Blind, Policy::Random, Policy::WeightedLocal, Policy::ShortestLocal};
  int seeds = 20;
  std::uint64_t base_seed = 1;
  unsigned threads = 0;  ///< 0: hardware concurrency, capped by AGRIROUTE_THREADS
  AgentConfig agent;
};

struct CoverageRow
{
  int env = 0;
  double density = 0.0;
  Policy policy = Policy::Blind;
  std::uint64_t seed = 0;
  RunRecord record;
};

struct SamplingFailure
{
  int env = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  std::string message;
};

struct ExperimentResult
{
  std::vector<CoverageRow> rows;
  std::vector<SamplingFailure> failures;
};

/// Worker count: `requested` (0 = hardware), capped by AGRIROUTE_THREADS, at least 1.
unsigned worker_count(unsigned requested = 0);

/// Runs `job(i)` for i in [0, n) on `workers` threads.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& job);

ExperimentResult run_experiment(const ExperimentConfig& config);

inline constexpr const char* kCoverageHeader =
  "env,density_pct,policy,seed,waypoints_total,waypoints_reached,pct,collisions,blockages,flight_s";

void write_coverage_csv(std::ostream& out, const std::vector<CoverageRow>& rows);
void write_failures_csv(std::ostream& out, const std::vector<SamplingFailure>& failures);

}  // namespace agriroute
