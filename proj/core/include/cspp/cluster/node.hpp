#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>

#include "cspp/builder/registry.hpp"
#include "cspp/cluster/wire.hpp"
#include "cspp/terminals/details.hpp"

namespace cspp::cluster {

/// A farm split across machines. The host keeps Emit and Collect; every
/// worker node runs one Worker over `function`, looked up by name in the
/// worker's own registry.
struct FarmJob {
  EmitDetails emit;
  ResultDetails result;
  std::string function;
  Params modifier = Params::array();
  std::size_t workers = 1;  // worker nodes expected
};

struct HostOptions {
  std::string bind = "127.0.0.1";
  std::uint16_t port = 0;  // 0: any free port
  std::chrono::milliseconds accept_timeout{std::chrono::seconds(30)};
  std::function<void(std::uint16_t)> on_listening;  // called once the port is bound
};

/// Accepts job.workers workers, hands each its fragment, runs
/// Emit -> spreader -> net channels -> reducer -> Collect and returns the
/// collect outcome. Throws ClusterError naming the worker on any failure.
CollectOutcome host_run(const FarmJob& job, const TypeRegistry& types, const HostOptions& options);

struct WorkerOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::string name;  // reported in the manifest; defaults to "worker-<pid>"
  std::chrono::milliseconds connect_timeout{std::chrono::seconds(30)};
};

/// Connects to a host, runs the fragment it is given until the terminator
/// and returns. Throws ClusterError on failure, including an unknown function
/// name (the host is told before this returns).
void worker_run_remote(const FunctionRegistry& registry, const TypeRegistry& types,
                       const WorkerOptions& options);

}  // namespace cspp::cluster
