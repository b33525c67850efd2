#include "cspp/bench/montecarlo.hpp"

#include "cspp/terminals/sequential.hpp"
#include "params.hpp"

namespace cspp::bench {

namespace {

struct PiClass {
  std::uint64_t instances = 0;
  std::uint64_t seed = 0;
  std::uint64_t next = 0;
};

}  // namespace

double pi_estimate(std::uint64_t within, std::uint64_t total) {
  return total == 0 ? 0.0 : 4.0 * static_cast<double>(within) / static_cast<double>(total);
}

EmitDetails pi_data() {
  auto d = emit_details<PiClass, PiData>(
      [](PiClass& c, const Params& p) {
        auto instances = detail::param<std::uint64_t>(p, 0);
        if (!instances) return StepResult::error(detail::bad_params, "mc init needs [instances, seed]");
        c.instances = *instances;
        c.seed = detail::param<std::uint64_t>(p, 1).value_or(0);
        return StepResult::completed_ok();
      },
      Params::array({1024, 0x5eed}),
      [](PiClass& c, PiData& d, const Params& p) {
        if (c.next >= c.instances) return StepResult::normal_termination();
        auto iterations = detail::param<std::uint64_t>(p, 0);
        if (!iterations) return StepResult::error(detail::bad_params, "mc create needs [iterations]");
        d.instance = c.next++;
        d.seed = instance_seed(c.seed, d.instance);
        d.iterations = *iterations;
        d.within = 0;
        return StepResult::normal_continuation();
      },
      Params::array({100000}));
  d.tag = [](const Payload& p) { return "pi-" + std::to_string(p.as<PiData>().instance); };
  return d;
}

WorkerFn pi_within() {
  return [](Payload& item, const Params&, Payload*) {
    auto& d = item.as<PiData>();
    SplitMix64 rng(d.seed);
    std::uint64_t within = 0;
    for (std::uint64_t i = 0; i < d.iterations; ++i) {
      const double x = rng.uniform();
      const double y = rng.uniform();
      if (x * x + y * y <= 1.0) ++within;
    }
    d.within = within;
    return StepResult::completed_ok();
  };
}

ResultDetails pi_results() {
  return result_details<PiResults, PiData>(
      [](PiResults&, const Params&) { return StepResult::completed_ok(); }, Params::array(),
      [](PiResults& r, PiData& d) {
        r.iteration_sum += d.iterations;
        r.within_sum += d.within;
        return StepResult::completed_ok();
      },
      [](PiResults& r, const Params&) {
        r.pi = pi_estimate(r.within_sum, r.iteration_sum);
        return StepResult::completed_ok();
      });
}

void register_montecarlo(FunctionRegistry& registry) {
  registry.add("mc.data", pi_data());
  registry.add("mc.within", pi_within());
  registry.add("mc.results", pi_results());
}

NetworkSpec montecarlo_spec(const MonteCarloConfig& config) {
  const auto w = config.workers;
  NetworkSpec spec;
  spec.nodes = {
      {"emit", {{"details", "mc.data"}, {"initData", {config.instances, config.seed}}, {"createData", {config.iterations}}}},
      {"spreader", {{"policy", "fanAny"}, {"destinations", w}}},
      {"group", {{"workers", w}, {"function", "mc.within"}}},
      {"reducer", {{"policy", "fanOne"}, {"sources", w}}},
      {"collect", {{"details", "mc.results"}}},
  };
  return spec;
}

PiResults montecarlo_run(const MonteCarloConfig& config, const BuildOptions& options) {
  auto report = run_spec(montecarlo_spec(config), options);
  return report.results.at(0)->result.as<PiResults>();
}

PiResults montecarlo_sequential(const MonteCarloConfig& config) {
  auto emit = pi_data();
  emit.init_data = {config.instances, config.seed};
  emit.create_data = {config.iterations};
  auto outcome = run_sequential(emit, {pi_within()}, pi_results());
  return outcome.result.as<PiResults>();
}

}  // namespace cspp::bench
