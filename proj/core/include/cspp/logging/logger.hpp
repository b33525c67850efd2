#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "cspp/kernel/channel.hpp"
#include "cspp/logging/log_record.hpp"

namespace cspp {

struct LoggerConfig {
  std::filesystem::path file;
  std::size_t expected_shutdowns = 0;
  bool echo = true;                  // mirror each record to the console
  std::ostream* console = nullptr;   // defaults to std::cout
};

struct LoggerOutcome {
  std::size_t records = 0;
  bool file_ok = true;
};

/// The logger process: appends each record to the file as it arrives and
/// completes after `expected_shutdowns` shutdown notices. File errors fall
/// back to the console and never abort the network.
LoggerOutcome logger_run(In<LogMessage> in, const LoggerConfig& config);

/// Parses a log file written by logger_run; malformed lines are skipped.
std::vector<LogRecord> read_log_file(const std::filesystem::path& file);

}  // namespace cspp
