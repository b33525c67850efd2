#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cspp/bench/common.hpp"
#include "cspp/engines/shared_grid.hpp"

namespace cspp::bench {

struct Body {
  double x = 0, y = 0, z = 0;
  double vx = 0, vy = 0, vz = 0;
  double mass = 0;

  bool operator==(const Body&) const = default;
};

inline constexpr double gravitational_constant = 6.67e-11;
// Keeps close encounters finite.
inline constexpr double softening = 1e15;  // metres

std::vector<Body> generate_bodies(std::size_t n, std::uint64_t seed);

/// First line: body count. Then one body per line: x y z vx vy vz mass.
std::string format_bodies(const std::vector<Body>& bodies);
std::vector<Body> parse_bodies(const std::string& text);

struct NBodyData {
  std::vector<Body> bodies;
  std::vector<Body> next;
  std::vector<Range> partitions;
  double dt = 1e11;
  std::size_t steps = 0;
};

struct NBodyResult {
  std::string path;  // empty: not written
  std::vector<Body> bodies;
  std::size_t steps = 0;
};

struct NBodyConfig {
  std::string file;        // bodies file; generated when empty
  std::uint64_t seed = 11;
  std::size_t N = 64;
  std::size_t iterations = 100;
  double dt = 1e11;
  std::size_t nodes = 4;
  std::string out_file;
};

// init [file | {"generate": count, "seed": s}, N, dt]
EmitDetails nbody_data();
/// Kick-drift step: v += a dt using the old positions, then x += v dt.
EngineConfig nbody_engine();
// init [writePath]
ResultDetails nbody_results();

void register_nbody(FunctionRegistry& registry);

NetworkSpec nbody_spec(const NBodyConfig& config);

NBodyResult nbody_run(const NBodyConfig& config, const BuildOptions& options = {});
NBodyResult nbody_sequential(const NBodyConfig& config);

}  // namespace cspp::bench
