#include "cspp/kernel/jitter.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

namespace cspp::jitter {
namespace {

std::atomic<bool> g_enabled{false};
std::atomic<std::uint64_t> g_seed{0};
std::atomic<std::uint64_t> g_generation{0};

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct ThreadState {
  std::uint64_t generation = ~0ULL;
  std::uint64_t rng = 0;
};

}  // namespace

void enable(std::uint64_t seed) {
  g_seed.store(seed, std::memory_order_relaxed);
  g_generation.fetch_add(1, std::memory_order_relaxed);
  g_enabled.store(true, std::memory_order_release);
}

void disable() { g_enabled.store(false, std::memory_order_release); }

bool enabled() noexcept { return g_enabled.load(std::memory_order_relaxed); }

void perturb() {
  if (!g_enabled.load(std::memory_order_relaxed)) return;
  thread_local ThreadState local;
  const auto generation = g_generation.load(std::memory_order_relaxed);
  if (local.generation != generation) {
    local.generation = generation;
    local.rng = g_seed.load(std::memory_order_relaxed) ^
                std::hash<std::thread::id>{}(std::this_thread::get_id());
  }
  const std::uint64_t r = splitmix(local.rng);
  if ((r & 3U) == 0) std::this_thread::yield();
  if ((r >> 8) % 32 == 1) std::this_thread::sleep_for(std::chrono::microseconds((r >> 16) % 40));
}

}  // namespace cspp::jitter
