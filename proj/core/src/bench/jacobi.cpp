#include "cspp/bench/jacobi.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "cspp/terminals/sequential.hpp"
#include "params.hpp"

namespace cspp::bench {

LinearSystem generate_system(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  LinearSystem s;
  s.n = n;
  s.a.assign(n * n, 0.0);
  s.b.assign(n, 0.0);
  s.known.resize(n);
  for (auto& v : s.known) v = std::floor(rng.uniform(-10.0, 11.0));
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double v = rng.uniform(-1.0, 1.0);
      s.a[i * n + j] = v;
      off += std::fabs(v);
    }
    s.a[i * n + i] = off + rng.uniform(1.0, 2.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += s.a[i * n + j] * s.known[j];
    s.b[i] = sum;
  }
  return s;
}

std::string format_systems(const std::vector<LinearSystem>& systems) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  auto row = [&](const double* v, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << v[j];
    out << '\n';
  };
  for (const auto& s : systems) {
    out << s.n << '\n';
    for (std::size_t i = 0; i < s.n; ++i) row(&s.a[i * s.n], s.n);
    row(s.b.data(), s.n);
    row(s.known.data(), s.n);
  }
  return out.str();
}

std::vector<LinearSystem> parse_systems(const std::string& text) {
  std::istringstream in(text);
  std::vector<LinearSystem> systems;
  std::size_t n = 0;
  while (in >> n) {
    LinearSystem s;
    s.n = n;
    s.a.resize(n * n);
    s.b.resize(n);
    s.known.resize(n);
    for (auto& v : s.a) in >> v;
    for (auto& v : s.b) in >> v;
    for (auto& v : s.known) in >> v;
    if (!in) throw std::runtime_error("truncated equation system");
    systems.push_back(std::move(s));
  }
  return systems;
}

namespace {

struct JacobiClass {
  std::vector<LinearSystem> systems;
  std::size_t next = 0;
};

}  // namespace

EmitDetails jacobi_data() {
  auto d = emit_details<JacobiClass, JacobiData>(
      [](JacobiClass& c, const Params& p) {
        if (!p.is_array() || p.empty()) return StepResult::error(detail::bad_params, "jacobi init needs [file]");
        try {
          if (p[0].is_object()) {
            c.systems.push_back(generate_system(p[0].value("generate", std::size_t{0}),
                                                p[0].value("seed", std::uint64_t{0})));
          } else {
            c.systems = parse_systems(read_text(p[0].get<std::string>()));
          }
        } catch (const std::exception& e) {
          return StepResult::error(detail::io_failure, e.what());
        }
        return StepResult::completed_ok();
      },
      Params::array(),
      [](JacobiClass& c, JacobiData& d, const Params&) {
        if (c.next >= c.systems.size()) return StepResult::normal_termination();
        d.system = std::move(c.systems[c.next++]);
        d.x.assign(d.system.n, 0.0);
        d.next.assign(d.system.n, 0.0);
        return StepResult::normal_continuation();
      },
      Params::array());
  d.tag = [](const Payload& p) { return "system-" + std::to_string(p.as<JacobiData>().system.n); };
  return d;
}

EngineConfig jacobi_engine() {
  EngineConfig e;
  e.partition = [](Payload& p, std::size_t nodes) {
    auto& d = p.as<JacobiData>();
    d.partitions = partition_ranges(d.system.n, nodes);
    return StepResult::completed_ok();
  };
  e.calculate = [](Payload& p, std::size_t node) {
    auto& d = p.as<JacobiData>();
    const auto n = d.system.n;
    const double* a = d.system.a.data();
    for (std::size_t i = d.partitions[node].begin; i < d.partitions[node].end; ++i) {
      double sum = d.system.b[i];
      const double* row = a + i * n;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sum -= row[j] * d.x[j];
      d.next[i] = sum / row[i];
    }
    return StepResult::completed_ok();
  };
  e.converged = [](const Payload& p, double margin) {
    const auto& d = p.as<JacobiData>();
    for (std::size_t i = 0; i < d.x.size(); ++i)
      if (std::fabs(d.next[i] - d.x[i]) > margin) return false;
    return true;
  };
  e.update = [](Payload& p) {
    auto& d = p.as<JacobiData>();
    d.x.swap(d.next);
    ++d.iterations;
    return StepResult::completed_ok();
  };
  e.error_margin = 1e-12;
  return e;
}

ResultDetails jacobi_results() {
  return result_details<JacobiResults, JacobiData>(
      [](JacobiResults& r, const Params& p) {
        r.tolerance = detail::param<double>(p, 0).value_or(1e-6);
        return StepResult::completed_ok();
      },
      Params::array({1e-6}),
      [](JacobiResults& r, JacobiData& d) {
        JacobiSolution s{d.system.n, std::move(d.x), 0.0, d.iterations};
        for (std::size_t i = 0; i < s.n; ++i) s.max_error = std::max(s.max_error, std::fabs(s.x[i] - d.system.known[i]));
        if (!(s.max_error <= r.tolerance)) r.verified = false;
        r.solutions.push_back(std::move(s));
        return StepResult::completed_ok();
      },
      [](JacobiResults&, const Params&) { return StepResult::completed_ok(); });
}

void register_jacobi(FunctionRegistry& registry) {
  registry.add("jacobi.data", jacobi_data());
  registry.add("jacobi.engine", jacobi_engine());
  registry.add("jacobi.results", jacobi_results());
}

namespace {

Params source_param(const JacobiConfig& c) {
  if (!c.file.empty()) return c.file;
  return Params{{"generate", c.n}, {"seed", c.seed}};
}

}  // namespace

NetworkSpec jacobi_spec(const JacobiConfig& config) {
  NetworkSpec spec;
  spec.nodes = {
      {"emit", {{"details", "jacobi.data"}, {"initData", {source_param(config)}}}},
      {"multicoreEngine", {{"details", "jacobi.engine"}, {"nodes", config.nodes}, {"errorMargin", config.margin}}},
      {"collect", {{"details", "jacobi.results"}}},
  };
  return spec;
}

JacobiResults jacobi_run(const JacobiConfig& config, const BuildOptions& options) {
  auto report = run_spec(jacobi_spec(config), options);
  return std::move(report.results.at(0)->result.as<JacobiResults>());
}

std::size_t engine_sequential(const EngineConfig& config, Payload& data) {
  auto check = [](const StepResult& r) {
    if (r.is_error()) throw DemoError(r.message(), r.code());
  };
  check(config.partition(data, 1));
  std::size_t it = 0;
  for (;;) {
    check(config.calculate(data, 0));
    ++it;
    const bool stop = config.error_margin ? config.converged(data, *config.error_margin) : it >= *config.iterations;
    check(config.update(data));
    if (stop) break;
    if (config.error_margin && it >= config.iteration_cap) throw DemoError("iteration cap reached", -1);
  }
  return it;
}

JacobiResults jacobi_sequential(const JacobiConfig& config) {
  auto emit = jacobi_data();
  emit.init_data = {source_param(config)};
  auto engine = jacobi_engine();
  engine.error_margin = config.margin;
  WorkerFn solve = [engine](Payload& p, const Params&, Payload*) {
    engine_sequential(engine, p);
    return StepResult::completed_ok();
  };
  auto outcome = run_sequential(emit, {solve}, jacobi_results());
  return std::move(outcome.result.as<JacobiResults>());
}

}  // namespace cspp::bench
