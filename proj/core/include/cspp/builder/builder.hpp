#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cspp/builder/registry.hpp"
#include "cspp/builder/spec.hpp"
#include "cspp/functionals/network.hpp"

namespace cspp {

enum class PortKind { none, one, any, list };

struct Port {
  PortKind kind = PortKind::none;
  std::size_t arity = 0;  // parties on the far side for any, channels for list

  bool operator==(const Port&) const = default;
  std::string str() const;
};

struct NodePorts {
  Port in;
  Port out;
};

/// Ports of a node as implied by its kind and config. Throws SpecError when
/// the config is too malformed to tell.
NodePorts node_ports(const NodeDescriptor& node, std::size_t index);

/// Static checks: configs, registry names, stage counts and port adjacency.
/// An empty result means the spec builds.
std::vector<Diagnostic> validate(const NetworkSpec& spec, const FunctionRegistry& registry);

/// A wired network ready to run once.
class RunnableNetwork {
 public:
  explicit RunnableNetwork(Network net) : net_(std::move(net)) {}

  std::size_t process_count() const noexcept { return net_.process_count(); }
  std::size_t channel_count() const noexcept { return net_.channel_count(); }
  bool has_run() const noexcept { return net_.has_run(); }
  Network& network() noexcept { return net_; }

  NetworkReport run() { return net_.run(); }

 private:
  Network net_;
};

struct BuildOptions {
  ChannelObserver observer;  // installed before any channel is created
  bool echo_log = false;
};

/// Validates and wires the spec. Throws SpecError when validation fails.
RunnableNetwork build(const NetworkSpec& spec, const FunctionRegistry& registry, const BuildOptions& options = {});

NetworkReport run(RunnableNetwork& net);

}  // namespace cspp
