#pragma once

#include <stdexcept>
#include <string>

namespace cspp {

/// Library-defined negative status codes. User callbacks pick their own
/// negative codes; these are reserved for failures raised by the runtime.
namespace errc {
inline constexpr int unknown = -1;
inline constexpr int clone = -101;
inline constexpr int protocol = -102;
inline constexpr int sorted_merge = -103;
inline constexpr int configuration = -104;
inline constexpr int network = -105;
inline constexpr int iteration_cap = -106;
inline constexpr int timeout = -107;
}  // namespace errc

/// A fatal error raised inside a process body. Carries a strictly negative
/// code; catching it in run_parallel shuts the whole network down.
class ProcessError : public std::runtime_error {
 public:
  ProcessError(int code, const std::string& message)
      : std::runtime_error(message), code_(code < 0 ? code : errc::unknown) {}

  int code() const noexcept { return code_; }

 private:
  int code_;
};

/// Thrown by channel and barrier operations once the network has been
/// poisoned. Processes let it propagate so they unwind cleanly.
class ChannelPoisoned : public std::runtime_error {
 public:
  ChannelPoisoned() : std::runtime_error("channel poisoned: network shutting down") {}
};

/// Invalid static configuration (arity, party counts, stage counts, ...).
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cspp
