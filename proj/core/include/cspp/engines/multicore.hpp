#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "cspp/kernel/channel.hpp"
#include "cspp/protocol/message.hpp"
#include "cspp/protocol/step_result.hpp"

namespace cspp {

/// Configuration of the iterative root/nodes engine. Exactly one of
/// error_margin and iterations selects the stopping mode.
struct EngineConfig {
  std::size_t nodes = 1;
  std::optional<double> error_margin;
  std::optional<std::size_t> iterations;

  // Root, once per input object.
  std::function<StepResult(Payload& data, std::size_t nodes)> partition;
  // Every node concurrently: read everything, write only its own partition.
  std::function<StepResult(Payload& data, std::size_t node)> calculate;
  // Root, error-margin mode only: true once every element is within margin.
  std::function<bool(const Payload& data, double margin)> converged;
  // Root, every iteration: move the new values into place for the next one.
  std::function<StepResult(Payload& data)> update;

  bool final_out = true;
  std::size_t iteration_cap = 100000;
};

/// Throws ConfigurationError for an inconsistent configuration.
void engine_validate(const EngineConfig& config);

/// Runs the engine on one payload without any channels. Returns the number
/// of iterations performed.
std::size_t engine_solve(const EngineConfig& config, Payload& data);

/// The engine as a process: solves each input object and forwards it when
/// final_out is set.
void multicore_engine_run(const EngineConfig& config, In<Message> in, Out<Message> out);

}  // namespace cspp
