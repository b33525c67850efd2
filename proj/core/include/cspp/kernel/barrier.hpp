#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>

#include "cspp/kernel/shutdown.hpp"

namespace cspp {

/// Reusable synchronisation barrier. No enrolled party returns from sync()
/// until every party has arrived for the current round. A party that has no
/// more rounds to take part in calls resign(), which lowers the party count
/// (and may complete the round the others are waiting on).
class Barrier final : public Poisonable {
 public:
  explicit Barrier(std::size_t parties);

  void sync();
  void resign();
  void poison() noexcept override;

  std::size_t parties() const;
  std::uint64_t round() const;

 private:
  void release_locked();

  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::size_t parties_;
  std::size_t arrived_ = 0;
  std::uint64_t round_ = 0;
  bool poisoned_ = false;
};

std::shared_ptr<Barrier> barrier_new(std::size_t parties, Shutdown* shutdown = nullptr);

}  // namespace cspp
