#pragma once

#include <string>
#include <string_view>

#include "cspp/kernel/errors.hpp"

namespace cspp {

/// Outcome of a user callback. create callbacks answer continuation or
/// termination; every other callback answers completed_ok. Errors carry a
/// strictly negative code and shut the network down.
class StepResult {
 public:
  enum class Kind { normal_continuation, normal_termination, completed_ok, error };

  static StepResult normal_continuation() noexcept { return StepResult(Kind::normal_continuation); }
  static StepResult normal_termination() noexcept { return StepResult(Kind::normal_termination); }
  static StepResult completed_ok() noexcept { return StepResult(Kind::completed_ok); }
  static StepResult error(int code, std::string message = {});

  Kind kind() const noexcept { return kind_; }
  bool is_error() const noexcept { return kind_ == Kind::error; }
  int code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

  bool operator==(const StepResult& other) const = default;

 private:
  explicit StepResult(Kind kind) noexcept : kind_(kind) {}

  Kind kind_;
  int code_ = 0;
  std::string message_;
};

/// Raises a ProcessError when r is an error; `where` names the callback.
void check(const StepResult& r, std::string_view where);

}  // namespace cspp
