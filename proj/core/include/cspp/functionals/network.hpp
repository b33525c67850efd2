#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cspp/kernel/barrier.hpp"
#include "cspp/kernel/channel.hpp"
#include "cspp/kernel/process.hpp"
#include "cspp/logging/logger.hpp"
#include "cspp/logging/phase_logger.hpp"
#include "cspp/terminals/details.hpp"

namespace cspp {

/// Called for every message transferred on a network channel, with the id
/// the channel was given at creation.
using ChannelObserver = std::function<void(std::size_t channel, const Message& message)>;

struct NetworkReport {
  bool ok = true;
  int code = 0;  // first negative code when !ok
  std::string message;
  std::chrono::nanoseconds wall{0};
  std::vector<ProcessStatus> statuses;
  std::vector<std::shared_ptr<CollectOutcome>> results;  // in collect creation order
  std::optional<std::filesystem::path> log_path;
};

/// Optional per-node logging request.
struct LogSpec {
  std::string phase;  // empty: not logged
  PropertyFn property;

  bool enabled() const noexcept { return !phase.empty(); }
};

/// A process network under construction: owns the shutdown, every channel
/// and process created for it, and the logger when logging is on.
/// run() may be called once.
class Network {
 public:
  Network();

  Network(Network&&) noexcept = default;
  Network& operator=(Network&&) noexcept = default;

  Channel<Message> channel(ChannelKind kind = ChannelKind::one2one);
  ChannelList<Message> channel_list(std::size_t n);
  std::shared_ptr<Barrier> barrier(std::size_t parties);

  void add(std::string name, std::function<void()> body);

  /// A result slot filled when the owning Collect finalises.
  std::shared_ptr<CollectOutcome> result_slot();

  /// Must be set before channels are created.
  void observe(ChannelObserver observer);

  /// Turns logging on: one any2one log channel plus one logger process.
  void enable_logging(std::filesystem::path file, bool echo = false);
  bool logging() const noexcept { return static_cast<bool>(log_channel_); }

  /// Logging context for one logged process. Logging must be enabled.
  PhaseLogger make_logger(std::string tag, PropertyFn property = {});

  std::size_t process_count() const noexcept;
  std::size_t channel_count() const noexcept { return channels_; }
  bool has_run() const noexcept { return ran_; }

  NetworkReport run();

 private:
  void watch(Channel<Message>& c);

  std::unique_ptr<Shutdown> shutdown_;
  std::vector<Process> processes_;
  std::vector<std::shared_ptr<CollectOutcome>> results_;
  ChannelObserver observer_;
  std::size_t channels_ = 0;
  LogClock::time_point origin_;
  std::optional<Channel<LogMessage>> log_channel_;
  std::filesystem::path log_file_;
  bool log_echo_ = false;
  std::size_t loggers_ = 0;
  bool ran_ = false;
};

}  // namespace cspp
