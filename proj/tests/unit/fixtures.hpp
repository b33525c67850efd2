#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "cspp/functionals/network.hpp"
#include "cspp/terminals/details.hpp"

namespace testing {

/// Emits the integers 1..n (or the given values) as int payloads.
inline cspp::EmitDetails int_emit(std::vector<int> values) {
  struct Cursor {
    std::size_t next = 0;
  };
  cspp::EmitDetails d;
  d.make_state = [] { return cspp::Payload(Cursor{}); };
  d.make = [] { return cspp::Payload(0); };
  d.create = [values = std::move(values)](cspp::EmitContext& c, cspp::Payload& fresh, const cspp::Params&) {
    auto& cur = c.state.as<Cursor>();
    if (cur.next >= values.size()) return cspp::StepResult::normal_termination();
    fresh.as<int>() = values[cur.next++];
    return cspp::StepResult::normal_continuation();
  };
  return d;
}

inline cspp::EmitDetails int_emit(int n) {
  std::vector<int> v;
  for (int i = 1; i <= n; ++i) v.push_back(i);
  return int_emit(std::move(v));
}

/// Collects int payloads into a vector<int>, preserving arrival order.
inline cspp::ResultDetails int_collect() {
  cspp::ResultDetails d;
  d.make = [] { return cspp::Payload(std::vector<int>{}); };
  d.collect = [](cspp::Payload& r, cspp::Payload& item) {
    r.as<std::vector<int>>().push_back(item.as<int>());
    return cspp::StepResult::completed_ok();
  };
  return d;
}

inline cspp::WorkerFn int_fn(int (*f)(int)) {
  return [f](cspp::Payload& p, const cspp::Params&, cspp::Payload*) {
    p.as<int>() = f(p.as<int>());
    return cspp::StepResult::completed_ok();
  };
}

inline cspp::WorkerFn identity_fn() {
  return [](cspp::Payload&, const cspp::Params&, cspp::Payload*) { return cspp::StepResult::completed_ok(); };
}

/// Records the message kinds seen on every channel of a network:
/// 'D' for data and 'T' for a terminator.
class ChannelMonitor {
 public:
  cspp::ChannelObserver observer() {
    return [this](std::size_t id, const cspp::Message& m) {
      std::lock_guard lock(mutex_);
      streams_[id] += cspp::is_terminator(m) ? 'T' : 'D';
    };
  }

  /// Every stream ends with its terminators and carries no data after the
  /// last one. A channel with one writer therefore reads Data* Terminator;
  /// on a shared any-end each writer's own terminator may precede another
  /// writer's data.
  bool terminator_last() const {
    std::lock_guard lock(mutex_);
    for (const auto& [id, s] : streams_) {
      if (s.empty() || s.back() != 'T') return false;
    }
    return true;
  }

  /// Channels whose stream is strictly Data* followed by exactly one terminator.
  std::size_t strict_streams() const {
    std::lock_guard lock(mutex_);
    std::size_t n = 0;
    for (const auto& [id, s] : streams_) {
      if (s.find('T') == s.size() - 1) ++n;
    }
    return n;
  }

  std::map<std::size_t, std::string> streams() const {
    std::lock_guard lock(mutex_);
    return streams_;
  }

 private:
  mutable std::mutex mutex_;
  std::map<std::size_t, std::string> streams_;
};

}  // namespace testing
