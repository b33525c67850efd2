#include <string>

#include "cspp/protocol/message.hpp"
#include "cspp/protocol/step_result.hpp"

namespace cspp {

StepResult StepResult::error(int code, std::string message) {
  if (code >= 0) throw std::invalid_argument("error codes must be strictly negative");
  StepResult r(Kind::error);
  r.code_ = code;
  r.message_ = std::move(message);
  return r;
}

void check(const StepResult& r, std::string_view where) {
  if (!r.is_error()) return;
  std::string text(where);
  text += " failed with code " + std::to_string(r.code());
  if (!r.message().empty()) text += ": " + r.message();
  throw ProcessError(r.code(), text);
}

Terminator terminator_merge(Terminator a, Terminator b) {
  a.logs.insert(a.logs.end(), std::make_move_iterator(b.logs.begin()),
                std::make_move_iterator(b.logs.end()));
  return a;
}

Message terminator_merge(Message a, Message b) {
  if (!is_terminator(a) || !is_terminator(b)) {
    throw ContractViolation("terminator_merge called with a data message");
  }
  return terminator_merge(std::get<Terminator>(std::move(a)), std::get<Terminator>(std::move(b)));
}

}  // namespace cspp
