#pragma once

#include <cstdint>

/// Schedule perturbation for stress testing. When enabled, every channel and
/// barrier operation may yield or sleep briefly before acting, so repeated
/// runs explore different interleavings. Disabled by default; a disabled
/// check is a single relaxed atomic load.
namespace cspp::jitter {

void enable(std::uint64_t seed);
void disable();
bool enabled() noexcept;
void perturb();

/// Enables jitter for the lifetime of the guard.
class Scope {
 public:
  explicit Scope(std::uint64_t seed) { enable(seed); }
  ~Scope() { disable(); }
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;
};

}  // namespace cspp::jitter
