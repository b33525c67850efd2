#pragma once

#include <memory>
#include <mutex>
#include <vector>

namespace cspp {

/// Anything a blocked process may be waiting on.
class Poisonable {
 public:
  virtual ~Poisonable() = default;
  virtual void poison() noexcept = 0;
};

/// Cooperative network-wide shutdown. Channels and barriers enrol here; a
/// single trigger() wakes every blocked process with ChannelPoisoned.
class Shutdown {
 public:
  Shutdown() = default;
  Shutdown(const Shutdown&) = delete;
  Shutdown& operator=(const Shutdown&) = delete;

  void enrol(const std::shared_ptr<Poisonable>& member);
  void trigger() noexcept;
  bool triggered() const noexcept;

 private:
  mutable std::mutex mutex_;
  std::vector<std::weak_ptr<Poisonable>> members_;
  bool triggered_ = false;
};

}  // namespace cspp
