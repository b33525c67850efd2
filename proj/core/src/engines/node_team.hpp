#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <utility>
#include <vector>

#include "cspp/kernel/barrier.hpp"

namespace cspp::detail {

/// The worker nodes of an engine: N threads that run one task per phase.
/// The root calls run(), which releases every node and returns once all of
/// them have finished the phase. The two barriers have the root as an extra
/// party.
class NodeTeam {
 public:
  explicit NodeTeam(std::size_t nodes) : start_(nodes + 1), end_(nodes + 1), errors_(nodes) {
    threads_.reserve(nodes);
    for (std::size_t i = 0; i < nodes; ++i) threads_.emplace_back([this, i] { loop(i); });
  }

  ~NodeTeam() {
    stop_ = true;
    start_.sync();
  }

  NodeTeam(const NodeTeam&) = delete;
  NodeTeam& operator=(const NodeTeam&) = delete;

  void run(const std::function<void(std::size_t)>& task) {
    task_ = &task;
    start_.sync();
    end_.sync();
    task_ = nullptr;
    for (auto& e : errors_) {
      if (e) std::rethrow_exception(std::exchange(e, nullptr));
    }
  }

 private:
  void loop(std::size_t node) {
    for (;;) {
      start_.sync();
      if (stop_) return;
      try {
        (*task_)(node);
      } catch (...) {
        errors_[node] = std::current_exception();
      }
      end_.sync();
    }
  }

  Barrier start_;
  Barrier end_;
  const std::function<void(std::size_t)>* task_ = nullptr;
  bool stop_ = false;  // published to the nodes by the start barrier
  std::vector<std::exception_ptr> errors_;
  std::vector<std::jthread> threads_;
};

}  // namespace cspp::detail
