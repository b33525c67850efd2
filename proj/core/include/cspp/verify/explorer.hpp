#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cspp/verify/model.hpp"

namespace cspp::verify {

using Trace = std::vector<std::string>;

struct ExplorationResult {
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::size_t deadlock_count = 0;
  std::vector<Trace> deadlocks;  // shortest counterexamples, at most max_counterexamples
  bool terminated = false;       // every path ends in the all-SKIP state
  bool divergent = false;        // some cycle made only of hidden events
  bool truncated = false;        // the state cap was hit

  bool deadlock_free() const noexcept { return deadlock_count == 0 && !truncated; }
};

constexpr std::size_t max_counterexamples = 8;

/// Breadth-first search of the interleaving graph. Channel events are two-way
/// rendezvous between the writer and the reader of one channel element.
ExplorationResult explore(const AbstractModel& m, std::size_t state_cap = 1'000'000);

/// Maximal visible traces after hiding the given channels. Traces that end in
/// successful termination finish with tick_event. Throws VerifyError when the
/// model has infinite behaviour or exceeds the state cap.
std::set<Trace> trace_set(const AbstractModel& m, const std::set<std::string>& hide,
                          std::size_t state_cap = 1'000'000);

struct RefinementResult {
  bool holds = false;
  std::optional<Trace> counterexample;  // an impl trace that spec cannot produce
};

/// Traces refinement on maximal traces: every maximal visible trace of impl is a
/// maximal visible trace of spec. Both models must be finite.
RefinementResult check_refinement(const AbstractModel& spec, const AbstractModel& impl,
                                  const std::set<std::string>& hide,
                                  std::size_t state_cap = 1'000'000);

/// Mutual refinement.
bool trace_equivalent(const AbstractModel& a, const AbstractModel& b,
                      const std::set<std::string>& hide, std::size_t state_cap = 1'000'000);

/// One-paragraph text summary for the CLI.
std::string summary(const AbstractModel& m, const ExplorationResult& r);

}  // namespace cspp::verify
