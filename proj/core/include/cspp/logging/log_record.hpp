#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace cspp {

enum class LogEvent { initialised, input_ready, input_complete, output_ready, output_complete, terminated };

std::string_view to_string(LogEvent event) noexcept;
std::optional<LogEvent> parse_log_event(std::string_view text) noexcept;

struct LogRecord {
  std::string tag;  // process/phase identifier
  LogEvent event = LogEvent::initialised;
  std::int64_t timestamp_nanos = 0;  // monotonic, since network start
  std::string object_id;             // logged property of the current payload

  bool operator==(const LogRecord&) const = default;
};

/// Sent once by each logged process when it terminates.
struct LogShutdown {
  std::string tag;
  std::uint64_t records = 0;
};

using LogMessage = std::variant<LogRecord, LogShutdown>;

/// One line of the log file: timestamp<TAB>tag<TAB>event<TAB>objectId.
std::string format_log_line(const LogRecord& record);
std::optional<LogRecord> parse_log_line(std::string_view line);

}  // namespace cspp
