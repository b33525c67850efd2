#include "cspp/bench/common.hpp"

#include <fstream>
#include <sstream>

#include "cspp/bench/concordance.hpp"
#include "cspp/bench/goldbach.hpp"
#include "cspp/bench/jacobi.hpp"
#include "cspp/bench/mandelbrot.hpp"
#include "cspp/bench/montecarlo.hpp"
#include "cspp/bench/nbody.hpp"
#include "cspp/bench/stencil_demo.hpp"

namespace cspp::bench {

void register_demos(FunctionRegistry& registry) {
  register_montecarlo(registry);
  register_concordance(registry);
  register_jacobi(registry);
  register_nbody(registry);
  register_stencil(registry);
  register_goldbach(registry);
  register_mandelbrot(registry);
}

const FunctionRegistry& demo_registry() {
  static const FunctionRegistry registry = [] {
    FunctionRegistry r;
    register_demos(r);
    return r;
  }();
  return registry;
}

NetworkReport run_spec(const NetworkSpec& spec, const BuildOptions& options) {
  auto net = build(spec, demo_registry(), options);
  auto report = net.run();
  if (!report.ok) throw DemoError(report.message, report.code);
  return report;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace cspp::bench
