#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "cspp/builder/builder.hpp"

namespace cspp::bench {

/// splitmix64: the state advances by the 64-bit golden-ratio increment and
/// each output is the state passed through two xor-shift-multiply rounds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Per-object seed: independent of which worker handles the object.
constexpr std::uint64_t instance_seed(std::uint64_t base, std::uint64_t index) noexcept { return base ^ index; }

/// A demo network finished with an error.
class DemoError : public std::runtime_error {
 public:
  DemoError(const std::string& what, int code) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

/// Registers the callbacks of all seven demos.
void register_demos(FunctionRegistry& registry);

/// A registry holding every demo callback, built on first use.
const FunctionRegistry& demo_registry();

/// Builds and runs a spec against demo_registry(). Throws DemoError when the
/// network reports an error.
NetworkReport run_spec(const NetworkSpec& spec, const BuildOptions& options = {});

/// Reads a whole file. Throws std::runtime_error when it cannot be opened.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace cspp::bench
