#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cspp/protocol/payload.hpp"

namespace cspp::cli {

enum ExitCode : int { exit_ok = 0, exit_invalid = 1, exit_user_error = 2, exit_failure = 3 };

struct RunOptions {
  std::string spec;
  std::string log_file;
  bool echo = false;
};

struct VerifyOptions {
  std::string model;
  int n = 2;
  int alphabet = 5;
  std::size_t cap = 1'000'000;
  std::string equivalent;  // second catalogue model to compare against
};

/// Every demo flag; each demo reads the ones it understands and keeps its
/// own defaults for the rest.
struct DemoFlags {
  std::vector<std::size_t> workers{1, 2, 4};
  std::optional<std::size_t> instances, iterations, words, min_seq_len, n, bodies, width, height,
      max_iterations, max_prime, p_workers;
  std::optional<std::uint64_t> seed;
  std::optional<double> margin, dt, delta;
  std::optional<std::string> file, arch, out, kernel;
};

struct BenchOptions {
  std::string demo;
  DemoFlags flags;
  std::size_t repeats = 0;  // 0: single run, no timing table
  std::string csv;
  bool sequential = false;
};

struct ClusterOptions {
  bool host = false;
  std::size_t workers = 2;
  std::uint16_t port = 0;
  std::string bind = "127.0.0.1";
  std::string host_address;  // worker: host:port
  std::string demo = "mandelbrot";
  std::string port_file;
  double timeout_s = 30.0;
  DemoFlags flags;
};

int run_command(const RunOptions& options);
int verify_command(const VerifyOptions& options);
int bench_command(const BenchOptions& options);
int cluster_command(const ClusterOptions& options);

/// One-line description of a demo result payload.
std::string describe(const Payload& result);

std::vector<std::string> demo_names();

}  // namespace cspp::cli
