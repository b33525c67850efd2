#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cspp/bench/common.hpp"
#include "cspp/engines/shared_grid.hpp"

namespace cspp::bench {

/// A x = b with its known solution.
struct LinearSystem {
  std::size_t n = 0;
  std::vector<double> a;  // row-major n x n
  std::vector<double> b;
  std::vector<double> known;
};

/// Strictly diagonally dominant system with an integer-valued known solution.
LinearSystem generate_system(std::size_t n, std::uint64_t seed);

/// Text format: per system, n, then n rows of A, then b, then the known
/// solution. Values are written with full round-trip precision.
std::string format_systems(const std::vector<LinearSystem>& systems);
std::vector<LinearSystem> parse_systems(const std::string& text);

struct JacobiData {
  LinearSystem system;
  std::vector<double> x;
  std::vector<double> next;
  std::vector<Range> partitions;
  std::size_t iterations = 0;
};

struct JacobiSolution {
  std::size_t n = 0;
  std::vector<double> x;
  double max_error = 0.0;  // against the known solution
  std::size_t iterations = 0;
};

struct JacobiResults {
  std::vector<JacobiSolution> solutions;
  double tolerance = 1e-6;
  bool verified = true;
};

struct JacobiConfig {
  std::string file;         // systems file; generated when empty
  std::size_t n = 1024;     // generated size
  std::uint64_t seed = 7;
  std::size_t nodes = 4;
  double margin = 1e-12;
};

// init [file] or [{"generate": n, "seed": s}]
EmitDetails jacobi_data();
/// Engine callbacks; nodes and mode come from the spec.
EngineConfig jacobi_engine();
// init [tolerance]
ResultDetails jacobi_results();

void register_jacobi(FunctionRegistry& registry);

NetworkSpec jacobi_spec(const JacobiConfig& config);

JacobiResults jacobi_run(const JacobiConfig& config, const BuildOptions& options = {});
JacobiResults jacobi_sequential(const JacobiConfig& config);

/// The engine callbacks driven by a plain loop on the calling thread.
std::size_t engine_sequential(const EngineConfig& config, Payload& data);

}  // namespace cspp::bench
