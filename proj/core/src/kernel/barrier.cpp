#include "cspp/kernel/barrier.hpp"

#include "cspp/kernel/errors.hpp"
#include "cspp/kernel/jitter.hpp"

namespace cspp {

Barrier::Barrier(std::size_t parties) : parties_(parties) {
  if (parties == 0) throw ConfigurationError("barrier needs at least one party");
}

void Barrier::sync() {
  jitter::perturb();
  std::unique_lock lock(mutex_);
  if (poisoned_) throw ChannelPoisoned();
  if (parties_ == 0) throw ConfigurationError("barrier sync with no enrolled parties");
  const std::uint64_t my_round = round_;
  if (++arrived_ == parties_) {
    release_locked();
    return;
  }
  cv_.wait(lock, [&] { return round_ != my_round || poisoned_; });
  if (round_ == my_round) throw ChannelPoisoned();
}

void Barrier::resign() {
  std::lock_guard lock(mutex_);
  if (parties_ == 0) throw ConfigurationError("barrier party count underflow");
  --parties_;
  if (parties_ > 0 && arrived_ == parties_) release_locked();
}

void Barrier::release_locked() {
  arrived_ = 0;
  ++round_;
  cv_.notify_all();
}

void Barrier::poison() noexcept {
  {
    std::lock_guard lock(mutex_);
    poisoned_ = true;
  }
  cv_.notify_all();
}

std::size_t Barrier::parties() const {
  std::lock_guard lock(mutex_);
  return parties_;
}

std::uint64_t Barrier::round() const {
  std::lock_guard lock(mutex_);
  return round_;
}

std::shared_ptr<Barrier> barrier_new(std::size_t parties, Shutdown* shutdown) {
  auto barrier = std::make_shared<Barrier>(parties);
  if (shutdown != nullptr) shutdown->enrol(barrier);
  return barrier;
}

}  // namespace cspp
