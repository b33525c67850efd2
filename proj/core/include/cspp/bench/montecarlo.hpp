#pragma once

#include <cstddef>
#include <cstdint>

#include "cspp/bench/common.hpp"

namespace cspp::bench {

struct MonteCarloConfig {
  std::size_t instances = 1024;
  std::size_t iterations = 100000;
  std::size_t workers = 4;
  std::uint64_t seed = 0x5eed;
};

struct PiData {
  std::uint64_t instance = 0;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  std::uint64_t within = 0;
};

struct PiResults {
  std::uint64_t iteration_sum = 0;
  std::uint64_t within_sum = 0;
  double pi = 0.0;
};

/// 4 * within / total.
double pi_estimate(std::uint64_t within, std::uint64_t total);

// init [instances, seed]; create [iterations]
EmitDetails pi_data();
WorkerFn pi_within();
ResultDetails pi_results();

void register_montecarlo(FunctionRegistry& registry);

/// Emit -> OneFanAny -> AnyGroupAny -> AnyFanOne -> Collect.
NetworkSpec montecarlo_spec(const MonteCarloConfig& config);

PiResults montecarlo_run(const MonteCarloConfig& config, const BuildOptions& options = {});
PiResults montecarlo_sequential(const MonteCarloConfig& config);

}  // namespace cspp::bench
