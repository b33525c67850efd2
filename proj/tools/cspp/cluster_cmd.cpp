#include <filesystem>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "cspp/bench/mandelbrot.hpp"
#include "cspp/bench/montecarlo.hpp"
#include "cspp/bench/wire_types.hpp"
#include "cspp/cluster/net_channel.hpp"
#include "cspp/cluster/node.hpp"

namespace cspp::cli {

namespace {

std::chrono::milliseconds millis(double seconds) {
  return std::chrono::milliseconds(static_cast<long long>(seconds * 1000.0));
}

NetworkSpec demo_spec(const ClusterOptions& o) {
  const DemoFlags& f = o.flags;
  if (o.demo == "mandelbrot") {
    bench::MandelbrotConfig c;
    if (f.width) c.width = *f.width;
    if (f.height) c.height = *f.height;
    if (f.delta) c.pixel_delta = *f.delta;
    if (f.max_iterations) c.max_iterations = *f.max_iterations;
    if (f.out) c.out_file = *f.out;
    return bench::mandelbrot_spec(c);
  }
  if (o.demo == "montecarlo") {
    bench::MonteCarloConfig c;
    if (f.instances) c.instances = *f.instances;
    if (f.iterations) c.iterations = *f.iterations;
    if (f.seed) c.seed = *f.seed;
    return bench::montecarlo_spec(c);
  }
  throw std::invalid_argument("cluster demos: mandelbrot, montecarlo");
}

// Written under a temporary name first so a watcher never reads half a file.
void publish_port(const std::string& path, std::uint16_t port) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << port << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

int cluster_command(const ClusterOptions& options) {
  try {
    if (options.host) {
      const auto job = bench::farm_job(demo_spec(options), options.workers);
      cluster::HostOptions host;
      host.bind = options.bind;
      host.port = options.port;
      host.accept_timeout = millis(options.timeout_s);
      host.on_listening = [&](std::uint16_t port) {
        std::cout << "listening on " << options.bind << ":" << port << std::endl;
        if (!options.port_file.empty()) publish_port(options.port_file, port);
      };
      const CollectOutcome outcome = cluster::host_run(job, bench::demo_types(), host);
      std::cout << "collected " << outcome.collected << " objects; " << describe(outcome.result) << "\n";
      return exit_ok;
    }
    const auto address = cluster::parse_address(options.host_address);
    cluster::WorkerOptions worker;
    worker.host = address.host;
    worker.port = address.port;
    worker.connect_timeout = millis(options.timeout_s);
    cluster::worker_run_remote(bench::demo_registry(), bench::demo_types(), worker);
    return exit_ok;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return exit_invalid;
  } catch (const std::exception& e) {
    std::cerr << (options.host ? "host: " : "worker: ") << e.what() << "\n";
    return exit_failure;
  }
}

}  // namespace cspp::cli
