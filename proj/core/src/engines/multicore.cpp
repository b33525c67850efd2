#include "cspp/engines/multicore.hpp"

#include <string>

#include "node_team.hpp"

namespace cspp {

void engine_validate(const EngineConfig& c) {
  if (c.nodes == 0) throw ConfigurationError("engine needs nodes >= 1");
  if (c.error_margin.has_value() == c.iterations.has_value())
    throw ConfigurationError("engine needs exactly one of errorMargin and iterations");
  if (!c.calculate) throw ConfigurationError("engine needs a calculation method");
  if (c.error_margin) {
    if (!(*c.error_margin >= 0.0)) throw ConfigurationError("errorMargin must be non-negative");
    if (!c.converged) throw ConfigurationError("errorMargin mode needs an error method");
  } else {
    if (c.converged) throw ConfigurationError("error method given in fixed-iterations mode");
    if (*c.iterations == 0) throw ConfigurationError("iterations must be >= 1");
  }
}

std::size_t engine_solve(const EngineConfig& c, Payload& data) {
  engine_validate(c);
  if (c.partition) check(c.partition(data, c.nodes), "engine partition");

  detail::NodeTeam team(c.nodes);
  const std::function<void(std::size_t)> phase = [&](std::size_t node) {
    check(c.calculate(data, node), "engine calculate");
  };
  std::size_t iterations = 0;
  for (;;) {
    if (c.error_margin && iterations >= c.iteration_cap)
      throw ProcessError(errc::iteration_cap,
                         "engine did not converge within " + std::to_string(c.iteration_cap) + " iterations");
    team.run(phase);
    ++iterations;
    const bool stop = c.error_margin ? c.converged(data, *c.error_margin) : iterations >= *c.iterations;
    if (c.update) check(c.update(data), "engine update");
    if (stop) return iterations;
  }
}

void multicore_engine_run(const EngineConfig& config, In<Message> in, Out<Message> out) {
  try {
    engine_validate(config);
  } catch (const ConfigurationError& e) {
    throw ProcessError(errc::configuration, e.what());
  }
  for (;;) {
    Message m = in.read();
    if (is_terminator(m)) {
      out.write(std::move(m));
      return;
    }
    Data& d = std::get<Data>(m);
    engine_solve(config, d.payload);
    if (config.final_out) out.write(std::move(d));
  }
}

}  // namespace cspp
