#include <array>
#include <charconv>
#include <fstream>
#include <iostream>
#include <string>

#include "cspp/logging/log_record.hpp"
#include "cspp/logging/logger.hpp"
#include "cspp/logging/phase_logger.hpp"

namespace cspp {
namespace {

constexpr std::array<std::string_view, 6> kEventNames = {
    "initialised", "inputReady", "inputComplete", "outputReady", "outputComplete", "terminated"};

}  // namespace

std::string_view to_string(LogEvent event) noexcept {
  return kEventNames[static_cast<std::size_t>(event)];
}

std::optional<LogEvent> parse_log_event(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kEventNames.size(); ++i) {
    if (kEventNames[i] == text) return static_cast<LogEvent>(i);
  }
  return std::nullopt;
}

std::string format_log_line(const LogRecord& record) {
  std::string line = std::to_string(record.timestamp_nanos);
  line += '\t';
  line += record.tag;
  line += '\t';
  line += to_string(record.event);
  line += '\t';
  line += record.object_id;
  return line;
}

std::optional<LogRecord> parse_log_line(std::string_view line) {
  std::array<std::string_view, 4> fields;
  std::size_t start = 0;
  for (std::size_t f = 0; f < 3; ++f) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) return std::nullopt;
    fields[f] = line.substr(start, tab - start);
    start = tab + 1;
  }
  fields[3] = line.substr(start);

  LogRecord record;
  const auto* end = fields[0].data() + fields[0].size();
  auto [ptr, ec] = std::from_chars(fields[0].data(), end, record.timestamp_nanos);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  record.tag = fields[1];
  auto event = parse_log_event(fields[2]);
  if (!event) return std::nullopt;
  record.event = *event;
  record.object_id = fields[3];
  return record;
}

PhaseLogger::PhaseLogger(Out<LogMessage> channel, std::string tag, LogClock::time_point origin,
                         PropertyFn property)
    : channel_(std::move(channel)),
      tag_(std::move(tag)),
      origin_(origin),
      property_(std::move(property)) {}

void PhaseLogger::event(LogEvent event, std::string_view object_id) {
  const auto now = std::chrono::duration_cast<std::chrono::nanoseconds>(LogClock::now() - origin_);
  ++records_;
  channel_.write(LogRecord{tag_, event, now.count(), std::string(object_id)});
}

std::string PhaseLogger::object_id(const Data& data) const {
  if (property_) return property_(data.payload);
  return data.tag;
}

void PhaseLogger::finish(Terminator& t) {
  event(LogEvent::terminated);
  t.logs.push_back(LogSummary{tag_, records_});
  channel_.write(LogShutdown{tag_, records_});
}

LoggerOutcome logger_run(In<LogMessage> in, const LoggerConfig& config) {
  std::ostream& console = config.console != nullptr ? *config.console : std::cout;
  LoggerOutcome outcome;
  std::ofstream file(config.file, std::ios::out | std::ios::trunc);
  if (!file) {
    outcome.file_ok = false;
    console << "warning: cannot open log file " << config.file << ", logging to console only\n";
  }

  std::size_t shutdowns = 0;
  while (shutdowns < config.expected_shutdowns) {
    LogMessage message = in.read();
    if (std::holds_alternative<LogShutdown>(message)) {
      ++shutdowns;
      continue;
    }
    const std::string line = format_log_line(std::get<LogRecord>(message));
    ++outcome.records;
    if (outcome.file_ok) {
      file << line << '\n';
      if (!file) {
        outcome.file_ok = false;
        console << "warning: write to log file failed, logging to console only\n";
      }
    }
    if (config.echo || !outcome.file_ok) console << line << '\n';
  }
  if (outcome.file_ok) file.flush();
  return outcome;
}

std::vector<LogRecord> read_log_file(const std::filesystem::path& path) {
  std::vector<LogRecord> records;
  std::ifstream file(path);
  std::string line;
  while (std::getline(file, line)) {
    if (auto record = parse_log_line(line)) records.push_back(std::move(*record));
  }
  return records;
}

}  // namespace cspp
