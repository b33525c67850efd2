#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

using namespace cspp::cli;

namespace {

void add_demo_flags(CLI::App& cmd, DemoFlags& f) {
  cmd.add_option("--workers", f.workers, "Worker or node counts, comma separated")->delimiter(',');
  cmd.add_option("--instances", f.instances, "montecarlo: instances");
  cmd.add_option("--iterations", f.iterations, "montecarlo: points per instance; nbody: steps");
  cmd.add_option("--seed", f.seed, "Generator seed");
  cmd.add_option("--file", f.file, "Input file (concordance text, jacobi systems, nbody bodies, stencil image)");
  cmd.add_option("--words", f.words, "concordance: longest word string N");
  cmd.add_option("--min-seq-len", f.min_seq_len, "concordance: minimum occurrences");
  cmd.add_option("--arch", f.arch, "concordance: gop or pog");
  cmd.add_option("--n", f.n, "jacobi: generated system size");
  cmd.add_option("--margin", f.margin, "jacobi: error margin");
  cmd.add_option("--bodies", f.bodies, "nbody: number of bodies");
  cmd.add_option("--dt", f.dt, "nbody: time step");
  cmd.add_option("--width", f.width, "stencil, mandelbrot: image width");
  cmd.add_option("--height", f.height, "stencil, mandelbrot: image height");
  cmd.add_option("--kernel", f.kernel, "stencil: grey, edge3 or edge5");
  cmd.add_option("--delta", f.delta, "mandelbrot: pixel delta");
  cmd.add_option("--max-iterations", f.max_iterations, "mandelbrot: escape limit");
  cmd.add_option("--max-prime", f.max_prime, "goldbach: prime limit");
  cmd.add_option("--p-workers", f.p_workers, "goldbach: prime group workers");
  cmd.add_option("--out", f.out, "Output file or directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Process networks over synchronous channels"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Validate, build and run a network spec");
  run_cmd->add_option("spec", run.spec, "Spec file (JSON)")->required();
  run_cmd->add_option("--log-file", run.log_file, "Override the spec's log file");
  run_cmd->add_flag("--echo", run.echo, "Echo log records to stdout");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Explore an abstract model exhaustively");
  verify_cmd->add_option("model", verify.model, "farm, gop or pog")->required();
  verify_cmd->add_option("--n", verify.n, "farm workers, gop pipes or pog group width");
  verify_cmd->add_option("--alphabet", verify.alphabet, "Objects emitted before UT");
  verify_cmd->add_option("--cap", verify.cap, "State cap");
  verify_cmd->add_option("--equivalent", verify.equivalent,
                         "Also check trace equivalence with this model under full hiding");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run or benchmark a demo");
  bench_cmd->add_option("demo", bench.demo, "Demo name")->required();
  add_demo_flags(*bench_cmd, bench.flags);
  bench_cmd->add_option("--repeats", bench.repeats, "Timed repeats per case (>= 3)");
  bench_cmd->add_option("--csv", bench.csv, "Write the timing report as CSV");
  bench_cmd->add_flag("--seq", bench.sequential, "Run the sequential callback loop instead of the network");

  ClusterOptions cluster;
  auto* cluster_cmd = app.add_subcommand("cluster", "Run a farm demo across processes");
  cluster_cmd->require_subcommand(1);
  auto* host_cmd = cluster_cmd->add_subcommand("host", "Host: emit and collect");
  host_cmd->add_option("--workers", cluster.workers, "Worker nodes to wait for");
  host_cmd->add_option("--port", cluster.port, "Listening port (0: any)");
  host_cmd->add_option("--bind", cluster.bind, "Listening address");
  host_cmd->add_option("--demo", cluster.demo, "mandelbrot or montecarlo");
  host_cmd->add_option("--port-file", cluster.port_file, "Write the bound port here");
  host_cmd->add_option("--timeout", cluster.timeout_s, "Seconds to wait for workers");
  DemoFlags& hf = cluster.flags;
  host_cmd->add_option("--width", hf.width, "mandelbrot: image width");
  host_cmd->add_option("--height", hf.height, "mandelbrot: image height");
  host_cmd->add_option("--delta", hf.delta, "mandelbrot: pixel delta");
  host_cmd->add_option("--max-iterations", hf.max_iterations, "mandelbrot: escape limit");
  host_cmd->add_option("--instances", hf.instances, "montecarlo: instances");
  host_cmd->add_option("--iterations", hf.iterations, "montecarlo: points per instance");
  host_cmd->add_option("--seed", hf.seed, "montecarlo: seed");
  host_cmd->add_option("--out", hf.out, "mandelbrot: output PPM");
  auto* worker_cmd = cluster_cmd->add_subcommand("worker", "Worker node");
  worker_cmd->add_option("--host", cluster.host_address, "host:port")->required();
  worker_cmd->add_option("--timeout", cluster.timeout_s, "Seconds to keep retrying the connection");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run_command(run);
    if (*verify_cmd) return verify_command(verify);
    if (*bench_cmd) return bench_command(bench);
    if (*cluster_cmd) {
      cluster.host = static_cast<bool>(*host_cmd);
      return cluster_command(cluster);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_failure;
  }
  return exit_invalid;
}
