#include "cspp/kernel/shutdown.hpp"

namespace cspp {

void Shutdown::enrol(const std::shared_ptr<Poisonable>& member) {
  bool poison_now = false;
  {
    std::lock_guard lock(mutex_);
    members_.push_back(member);
    poison_now = triggered_;
  }
  if (poison_now) member->poison();
}

void Shutdown::trigger() noexcept {
  std::vector<std::weak_ptr<Poisonable>> members;
  {
    std::lock_guard lock(mutex_);
    if (triggered_) return;
    triggered_ = true;
    members = members_;
  }
  for (auto& weak : members) {
    if (auto member = weak.lock()) member->poison();
  }
}

bool Shutdown::triggered() const noexcept {
  std::lock_guard lock(mutex_);
  return triggered_;
}

}  // namespace cspp
