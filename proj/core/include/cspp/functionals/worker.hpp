#pragma once

#include <memory>
#include <optional>

#include "cspp/kernel/barrier.hpp"
#include "cspp/kernel/channel.hpp"
#include "cspp/logging/phase_logger.hpp"
#include "cspp/terminals/details.hpp"

namespace cspp {

struct WorkerConfig {
  WorkerFn function;
  Params modifier = Params::array();
  std::optional<LocalDetails> local;
  // false: payloads are consumed and only the finalised local object is
  // sent, just before the terminator.
  bool out_data = true;
  std::shared_ptr<Barrier> barrier;  // sync after compute, before output
};

void worker_run(const WorkerConfig& config, In<Message> in, Out<Message> out);
void worker_run(const WorkerConfig& config, In<Message> in, Out<Message> out, PhaseLogger& log);

}  // namespace cspp
