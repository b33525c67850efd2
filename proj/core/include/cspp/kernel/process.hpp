#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cspp/kernel/shutdown.hpp"

namespace cspp {

/// A process body: a self-contained callable that talks to the rest of the
/// network only through the channel ends it captured.
struct Process {
  std::string name;
  std::function<void()> body;
};

enum class Completion { ok, error, interrupted };

struct ProcessStatus {
  std::string name;
  Completion completion = Completion::ok;
  int code = 0;
  std::string message;
  // Order in which errors were raised; 0 for non-error statuses.
  std::size_t error_sequence = 0;

  bool ok() const noexcept { return completion == Completion::ok; }
};

/// Runs every body on its own thread and returns once all have finished.
/// Statuses come back in input order. The first body to fail triggers the
/// shutdown so that every blocked peer wakes and unwinds.
std::vector<ProcessStatus> run_parallel(std::vector<Process> processes, Shutdown& shutdown);
std::vector<ProcessStatus> run_parallel(std::vector<Process> processes);

/// The earliest error raised, or nullptr when no body failed.
const ProcessStatus* first_error(const std::vector<ProcessStatus>& statuses);

}  // namespace cspp
