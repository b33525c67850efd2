#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cspp/protocol/payload.hpp"

namespace cspp {

/// Per-process logging summary carried by the terminator.
struct LogSummary {
  std::string process;
  std::uint64_t records = 0;

  bool operator==(const LogSummary&) const = default;
};

struct Data {
  Payload payload;
  std::string tag;  // trace id, stable for the payload's whole journey
};

/// The universal terminator: last message on every channel.
struct Terminator {
  std::vector<LogSummary> logs;
};

using Message = std::variant<Data, Terminator>;

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline bool is_terminator(const Message& m) noexcept { return std::holds_alternative<Terminator>(m); }

/// Concatenates the log summaries of two terminators (a's first).
Terminator terminator_merge(Terminator a, Terminator b);
Message terminator_merge(Message a, Message b);

}  // namespace cspp
