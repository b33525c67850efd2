#pragma once

#include <algorithm>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <string_view>
#include <utility>
#include <vector>

#include "cspp/kernel/errors.hpp"
#include "cspp/kernel/jitter.hpp"
#include "cspp/kernel/shutdown.hpp"

namespace cspp {

/// Which sides of a channel may be shared between processes. All kinds are
/// unbuffered: a transfer happens only when a writer and a reader meet.
enum class ChannelKind { one2one, any2one, one2any, any2any };

constexpr std::string_view to_string(ChannelKind kind) noexcept {
  switch (kind) {
    case ChannelKind::one2one: return "one2one";
    case ChannelKind::any2one: return "any2one";
    case ChannelKind::one2any: return "one2any";
    case ChannelKind::any2any: return "any2any";
  }
  return "?";
}

namespace detail {

/// Wakes an alternation waiting on several channels at once.
struct AltSignal {
  std::mutex mutex;
  std::condition_variable cv;
  bool fired = false;

  void fire() {
    {
      std::lock_guard lock(mutex);
      fired = true;
    }
    cv.notify_one();
  }
};

template <class T>
class ChannelState final : public Poisonable {
 public:
  explicit ChannelState(ChannelKind kind) : kind_(kind) {}

  ChannelKind kind() const noexcept { return kind_; }

  void write(T&& value) {
    jitter::perturb();
    std::unique_lock lock(mutex_);
    if (poisoned_) throw ChannelPoisoned();
    Offer offer{&value};
    offers_.push_back(&offer);
    for (AltSignal* alt : alts_) alt->fire();
    cv_.notify_all();
    cv_.wait(lock, [&] { return offer.taken || poisoned_; });
    if (!offer.taken) {
      offers_.erase(std::find(offers_.begin(), offers_.end(), &offer));
      throw ChannelPoisoned();
    }
  }

  T read() {
    jitter::perturb();
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return !offers_.empty() || poisoned_; });
    if (poisoned_) throw ChannelPoisoned();
    Offer* offer = offers_.front();
    offers_.pop_front();
    if (observer_) observer_(*offer->value);
    T value = std::move(*offer->value);
    offer->taken = true;
    ++transfers_;
    cv_.notify_all();
    return value;
  }

  bool ready() const {
    std::lock_guard lock(mutex_);
    return !offers_.empty();
  }

  bool poisoned() const {
    std::lock_guard lock(mutex_);
    return poisoned_;
  }

  /// Writers currently blocked on this channel.
  std::size_t pending() const {
    std::lock_guard lock(mutex_);
    return offers_.size();
  }

  void attach(AltSignal* alt) {
    std::lock_guard lock(mutex_);
    alts_.push_back(alt);
    if (poisoned_) alt->fire();
  }

  void detach(AltSignal* alt) {
    std::lock_guard lock(mutex_);
    alts_.erase(std::remove(alts_.begin(), alts_.end(), alt), alts_.end());
  }

  void poison() noexcept override {
    std::vector<AltSignal*> alts;
    {
      std::lock_guard lock(mutex_);
      poisoned_ = true;
      alts = alts_;
    }
    cv_.notify_all();
    for (AltSignal* alt : alts) alt->fire();
  }

  void observe(std::function<void(const T&)> observer) {
    std::lock_guard lock(mutex_);
    observer_ = std::move(observer);
  }

  std::uint64_t transfers() const {
    std::lock_guard lock(mutex_);
    return transfers_;
  }

 private:
  // Lives on the writer's stack until a reader marks it taken.
  struct Offer {
    T* value;
    bool taken = false;
  };

  const ChannelKind kind_;
  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::deque<Offer*> offers_;  // FIFO of blocked writers
  std::vector<AltSignal*> alts_;
  std::function<void(const T&)> observer_;
  std::uint64_t transfers_ = 0;
  bool poisoned_ = false;
};

}  // namespace detail

template <class T>
class Out;

/// Reading end of a rendezvous channel. Copies share the same channel; for
/// any-ends every reader process holds a copy.
template <class T>
class In {
 public:
  In() = default;
  explicit In(std::shared_ptr<detail::ChannelState<T>> state) : state_(std::move(state)) {}

  T read() { return state_->read(); }
  bool ready() const { return state_->ready(); }
  bool poisoned() const { return state_->poisoned(); }
  ChannelKind kind() const { return state_->kind(); }
  explicit operator bool() const noexcept { return static_cast<bool>(state_); }

  detail::ChannelState<T>& state() const { return *state_; }

 private:
  std::shared_ptr<detail::ChannelState<T>> state_;
};

/// Writing end of a rendezvous channel. write() takes the value by value:
/// ownership passes to the reader and the writer keeps no access to it.
template <class T>
class Out {
 public:
  Out() = default;
  explicit Out(std::shared_ptr<detail::ChannelState<T>> state) : state_(std::move(state)) {}

  void write(T value) { state_->write(std::move(value)); }
  ChannelKind kind() const { return state_->kind(); }
  explicit operator bool() const noexcept { return static_cast<bool>(state_); }

  detail::ChannelState<T>& state() const { return *state_; }

 private:
  std::shared_ptr<detail::ChannelState<T>> state_;
};

template <class T>
struct Channel {
  In<T> in;
  Out<T> out;
};

/// Creates an unbuffered channel. When a Shutdown is given the channel is
/// poisoned together with the rest of the network.
template <class T>
Channel<T> channel_new(ChannelKind kind, Shutdown* shutdown = nullptr) {
  auto state = std::make_shared<detail::ChannelState<T>>(kind);
  if (shutdown != nullptr) shutdown->enrol(state);
  return Channel<T>{In<T>(state), Out<T>(state)};
}

/// A channel list: N independent channels addressed by index.
template <class T>
struct ChannelList {
  std::vector<In<T>> ins;
  std::vector<Out<T>> outs;

  std::size_t size() const noexcept { return ins.size(); }
};

template <class T>
ChannelList<T> channel_list_new(std::size_t n, Shutdown* shutdown = nullptr) {
  if (n == 0) throw ConfigurationError("channel list needs at least one channel");
  ChannelList<T> list;
  list.ins.reserve(n);
  list.outs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = channel_new<T>(ChannelKind::one2one, shutdown);
    list.ins.push_back(std::move(c.in));
    list.outs.push_back(std::move(c.out));
  }
  return list;
}

}  // namespace cspp
