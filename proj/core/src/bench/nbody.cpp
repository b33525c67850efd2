#include "cspp/bench/nbody.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "cspp/bench/jacobi.hpp"
#include "cspp/terminals/sequential.hpp"
#include "params.hpp"

namespace cspp::bench {

std::vector<Body> generate_bodies(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Body> bodies(n);
  for (auto& b : bodies) {
    b.x = rng.uniform(-1e18, 1e18);
    b.y = rng.uniform(-1e18, 1e18);
    b.z = rng.uniform(-1e17, 1e17);
    b.vx = rng.uniform(-5e3, 5e3);
    b.vy = rng.uniform(-5e3, 5e3);
    b.vz = rng.uniform(-5e2, 5e2);
    b.mass = rng.uniform(1e29, 1e31);
  }
  return bodies;
}

std::string format_bodies(const std::vector<Body>& bodies) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << bodies.size() << '\n';
  for (const auto& b : bodies)
    out << b.x << ' ' << b.y << ' ' << b.z << ' ' << b.vx << ' ' << b.vy << ' ' << b.vz << ' ' << b.mass << '\n';
  return out.str();
}

std::vector<Body> parse_bodies(const std::string& text) {
  std::istringstream in(text);
  std::size_t n = 0;
  if (!(in >> n)) throw std::runtime_error("bodies file has no count");
  std::vector<Body> bodies(n);
  for (auto& b : bodies) in >> b.x >> b.y >> b.z >> b.vx >> b.vy >> b.vz >> b.mass;
  if (!in) throw std::runtime_error("truncated bodies file");
  return bodies;
}

namespace {

struct NBodyClass {
  std::vector<Body> bodies;
  double dt = 1e11;
  bool emitted = false;
};

}  // namespace

EmitDetails nbody_data() {
  return emit_details<NBodyClass, NBodyData>(
      [](NBodyClass& c, const Params& p) {
        auto N = detail::param<std::size_t>(p, 1);
        auto dt = detail::param<double>(p, 2);
        if (!N || !dt) return StepResult::error(detail::bad_params, "nbody init needs [file, N, dt]");
        try {
          if (p[0].is_object()) {
            c.bodies = generate_bodies(p[0].value("generate", *N), p[0].value("seed", std::uint64_t{0}));
          } else {
            c.bodies = parse_bodies(read_text(p[0].get<std::string>()));
          }
        } catch (const std::exception& e) {
          return StepResult::error(detail::io_failure, e.what());
        }
        if (*N > c.bodies.size()) return StepResult::error(detail::bad_params, "N exceeds the bodies available");
        c.bodies.resize(*N);
        c.dt = *dt;
        return StepResult::completed_ok();
      },
      Params::array(),
      [](NBodyClass& c, NBodyData& d, const Params&) {
        if (c.emitted) return StepResult::normal_termination();
        c.emitted = true;
        d.bodies = std::move(c.bodies);
        d.next = d.bodies;
        d.dt = c.dt;
        return StepResult::normal_continuation();
      },
      Params::array());
}

EngineConfig nbody_engine() {
  EngineConfig e;
  e.partition = [](Payload& p, std::size_t nodes) {
    auto& d = p.as<NBodyData>();
    d.partitions = partition_ranges(d.bodies.size(), nodes);
    return StepResult::completed_ok();
  };
  e.calculate = [](Payload& p, std::size_t node) {
    auto& d = p.as<NBodyData>();
    const auto& cur = d.bodies;
    const double eps2 = softening * softening;
    for (std::size_t i = d.partitions[node].begin; i < d.partitions[node].end; ++i) {
      double ax = 0, ay = 0, az = 0;
      for (std::size_t j = 0; j < cur.size(); ++j) {
        if (j == i) continue;
        const double dx = cur[j].x - cur[i].x;
        const double dy = cur[j].y - cur[i].y;
        const double dz = cur[j].z - cur[i].z;
        const double r2 = dx * dx + dy * dy + dz * dz + eps2;
        const double f = gravitational_constant * cur[j].mass / (r2 * std::sqrt(r2));
        ax += f * dx;
        ay += f * dy;
        az += f * dz;
      }
      Body b = cur[i];
      b.vx += ax * d.dt;
      b.vy += ay * d.dt;
      b.vz += az * d.dt;
      b.x += b.vx * d.dt;
      b.y += b.vy * d.dt;
      b.z += b.vz * d.dt;
      d.next[i] = b;
    }
    return StepResult::completed_ok();
  };
  e.update = [](Payload& p) {
    auto& d = p.as<NBodyData>();
    d.bodies.swap(d.next);
    ++d.steps;
    return StepResult::completed_ok();
  };
  e.iterations = 100;
  return e;
}

ResultDetails nbody_results() {
  return result_details<NBodyResult, NBodyData>(
      [](NBodyResult& r, const Params& p) {
        r.path = detail::param<std::string>(p, 0).value_or("");
        return StepResult::completed_ok();
      },
      Params::array(),
      [](NBodyResult& r, NBodyData& d) {
        r.bodies = std::move(d.bodies);
        r.steps = d.steps;
        return StepResult::completed_ok();
      },
      [](NBodyResult& r, const Params&) {
        if (r.path.empty()) return StepResult::completed_ok();
        try {
          write_text(r.path, format_bodies(r.bodies));
        } catch (const std::exception& e) {
          return StepResult::error(detail::io_failure, e.what());
        }
        return StepResult::completed_ok();
      });
}

void register_nbody(FunctionRegistry& registry) {
  registry.add("nbody.data", nbody_data());
  registry.add("nbody.engine", nbody_engine());
  registry.add("nbody.results", nbody_results());
}

namespace {

Params init_param(const NBodyConfig& c) {
  Params source = c.file.empty() ? Params{{"generate", c.N}, {"seed", c.seed}} : Params(c.file);
  return Params::array({source, c.N, c.dt});
}

}  // namespace

NetworkSpec nbody_spec(const NBodyConfig& config) {
  NetworkSpec spec;
  spec.nodes = {
      {"emit", {{"details", "nbody.data"}, {"initData", init_param(config)}}},
      {"multicoreEngine", {{"details", "nbody.engine"}, {"nodes", config.nodes}, {"iterations", config.iterations}}},
      {"collect", {{"details", "nbody.results"}, {"initData", {config.out_file}}}},
  };
  return spec;
}

NBodyResult nbody_run(const NBodyConfig& config, const BuildOptions& options) {
  auto report = run_spec(nbody_spec(config), options);
  return std::move(report.results.at(0)->result.as<NBodyResult>());
}

NBodyResult nbody_sequential(const NBodyConfig& config) {
  auto emit = nbody_data();
  emit.init_data = init_param(config);
  auto engine = nbody_engine();
  engine.iterations = config.iterations;
  WorkerFn solve = [engine](Payload& p, const Params&, Payload*) {
    engine_sequential(engine, p);
    return StepResult::completed_ok();
  };
  auto result = nbody_results();
  result.init_data = {config.out_file};
  auto outcome = run_sequential(emit, {solve}, result);
  return std::move(outcome.result.as<NBodyResult>());
}

}  // namespace cspp::bench
