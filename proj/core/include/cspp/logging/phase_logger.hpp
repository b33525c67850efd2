#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "cspp/kernel/channel.hpp"
#include "cspp/logging/log_record.hpp"
#include "cspp/protocol/message.hpp"

namespace cspp {

using LogClock = std::chrono::steady_clock;

/// Extracts the logged property of a payload.
using PropertyFn = std::function<std::string(const Payload&)>;

/// Logging context owned by one logged process. Records go to the network's
/// logger over an any2one channel; each send is a single rendezvous.
class PhaseLogger {
 public:
  PhaseLogger(Out<LogMessage> channel, std::string tag, LogClock::time_point origin,
              PropertyFn property = {});

  void event(LogEvent event, std::string_view object_id = {});

  /// Object id of a data message: the logged property when one was
  /// configured, otherwise the trace tag.
  std::string object_id(const Data& data) const;

  /// Records `terminated`, appends this process's summary to t and notifies
  /// the logger that no further records follow.
  void finish(Terminator& t);

  const std::string& tag() const noexcept { return tag_; }
  std::uint64_t records() const noexcept { return records_; }

 private:
  Out<LogMessage> channel_;
  std::string tag_;
  LogClock::time_point origin_;
  PropertyFn property_;
  std::uint64_t records_ = 0;
};

/// The non-logged process variant: every call compiles away.
struct NoLog {
  void event(LogEvent, std::string_view = {}) noexcept {}
  std::string object_id(const Data&) const { return {}; }
  void finish(Terminator&) noexcept {}
};

}  // namespace cspp
