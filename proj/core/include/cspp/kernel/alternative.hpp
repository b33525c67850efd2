#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cspp/kernel/channel.hpp"

namespace cspp {

/// Fair choice over a list of input ends.
///
/// select() blocks until some input has a waiting writer and returns its
/// index. Priority rotates: the search starts one past the previously chosen
/// index, so an input that stays ready is chosen within size() calls.
/// Only the single reader of each channel may alternate over it.
template <class T>
class Alternative {
 public:
  explicit Alternative(std::vector<In<T>> inputs) : inputs_(std::move(inputs)) {
    if (inputs_.empty()) throw ConfigurationError("alternative needs at least one input");
    last_ = inputs_.size() - 1;
  }

  std::size_t size() const noexcept { return inputs_.size(); }
  In<T>& operator[](std::size_t i) { return inputs_[i]; }

  std::size_t select() {
    jitter::perturb();
    if (auto found = scan()) return *found;

    detail::AltSignal signal;
    for (auto& in : inputs_) in.state().attach(&signal);
    struct Detach {
      std::vector<In<T>>& inputs;
      detail::AltSignal& signal;
      ~Detach() {
        for (auto& in : inputs) in.state().detach(&signal);
      }
    } detach{inputs_, signal};

    for (;;) {
      // Attached before scanning, so a writer arriving after the scan fires.
      if (auto found = scan()) return *found;
      std::unique_lock lock(signal.mutex);
      signal.cv.wait(lock, [&] { return signal.fired; });
      signal.fired = false;
    }
  }

 private:
  std::optional<std::size_t> scan() {
    const std::size_t n = inputs_.size();
    for (std::size_t k = 1; k <= n; ++k) {
      const std::size_t i = (last_ + k) % n;
      if (inputs_[i].poisoned()) throw ChannelPoisoned();
      if (inputs_[i].ready()) {
        last_ = i;
        return i;
      }
    }
    return std::nullopt;
  }

  std::vector<In<T>> inputs_;
  std::size_t last_;
};

}  // namespace cspp
