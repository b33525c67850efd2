#include "cspp/kernel/process.hpp"

#include <atomic>
#include <exception>
#include <thread>

#include "cspp/kernel/errors.hpp"

namespace cspp {

std::vector<ProcessStatus> run_parallel(std::vector<Process> processes, Shutdown& shutdown) {
  std::vector<ProcessStatus> statuses(processes.size());
  std::atomic<std::size_t> error_counter{0};

  auto fail = [&](ProcessStatus& status, int code, std::string message) {
    status.completion = Completion::error;
    status.code = code;
    status.message = std::move(message);
    status.error_sequence = ++error_counter;
    shutdown.trigger();
  };

  auto execute = [&](std::size_t i) {
    ProcessStatus& status = statuses[i];
    status.name = processes[i].name;
    try {
      processes[i].body();
    } catch (const ProcessError& e) {
      fail(status, e.code(), e.what());
    } catch (const ChannelPoisoned&) {
      status.completion = Completion::interrupted;
    } catch (const std::exception& e) {
      fail(status, errc::unknown, e.what());
    } catch (...) {
      fail(status, errc::unknown, "unknown exception");
    }
  };

  {
    std::vector<std::jthread> threads;
    threads.reserve(processes.size());
    for (std::size_t i = 0; i < processes.size(); ++i) threads.emplace_back(execute, i);
  }
  return statuses;
}

std::vector<ProcessStatus> run_parallel(std::vector<Process> processes) {
  Shutdown shutdown;
  return run_parallel(std::move(processes), shutdown);
}

const ProcessStatus* first_error(const std::vector<ProcessStatus>& statuses) {
  const ProcessStatus* first = nullptr;
  for (const auto& s : statuses) {
    if (s.completion != Completion::error) continue;
    if (first == nullptr || s.error_sequence < first->error_sequence) first = &s;
  }
  return first;
}

}  // namespace cspp
