#include "cspp/functionals/patterns.hpp"

#include <string>

#include "cspp/terminals/collect.hpp"
#include "cspp/terminals/emit.hpp"

namespace cspp {
namespace {

std::optional<PhaseLogger> logger_for(Network& net, const LogSpec& log, const std::string& tag) {
  if (!log.enabled() || !net.logging()) return std::nullopt;
  return net.make_logger(tag, log.property);
}

LogSpec replica(const LogSpec& log, std::size_t i) {
  if (!log.enabled()) return log;
  return LogSpec{log.phase + "." + std::to_string(i), log.property};
}

std::string indexed(const std::string& name, std::size_t i) { return name + "." + std::to_string(i); }

void check_ends(std::size_t ends, std::size_t workers, const char* which) {
  if (ends != 1 && ends != workers)
    throw ConfigurationError(std::string("group ") + which + " must be one any-end or one end per worker");
}

}  // namespace

void add_emit(Network& net, EmitDetails details, Out<Message> out, const LogSpec& log, std::string name) {
  auto logger = logger_for(net, log, log.phase);
  net.add(std::move(name), [details = std::move(details), out, logger]() mutable {
    if (logger) {
      emit_run(details, out, *logger);
    } else {
      emit_run(details, out);
    }
  });
}

std::shared_ptr<CollectOutcome> add_collect(Network& net, ResultDetails details, In<Message> in,
                                            const LogSpec& log, std::string name) {
  auto slot = net.result_slot();
  auto logger = logger_for(net, log, log.phase);
  net.add(std::move(name), [details = std::move(details), in, logger, slot]() mutable {
    *slot = logger ? collect_run(details, in, *logger) : collect_run(details, in);
  });
  return slot;
}

std::vector<std::shared_ptr<CollectOutcome>> add_collect_group(Network& net, std::vector<ResultDetails> details,
                                                               std::vector<In<Message>> ins,
                                                               const LogSpec& log) {
  if (details.size() != ins.size())
    throw ConfigurationError("collect group needs one result details per input");
  std::vector<std::shared_ptr<CollectOutcome>> slots;
  for (std::size_t i = 0; i < ins.size(); ++i)
    slots.push_back(add_collect(net, std::move(details[i]), ins[i], replica(log, i), indexed("collect", i)));
  return slots;
}

void add_worker(Network& net, WorkerConfig config, In<Message> in, Out<Message> out, const LogSpec& log,
                std::string name) {
  auto logger = logger_for(net, log, log.phase);
  net.add(std::move(name), [config = std::move(config), in, out, logger]() mutable {
    if (logger) {
      worker_run(config, in, out, *logger);
    } else {
      worker_run(config, in, out);
    }
  });
}

void add_spreader(Network& net, SpreaderConfig config, In<Message> in, std::vector<Out<Message>> outs,
                  std::string name) {
  net.add(std::move(name), [config, in, outs = std::move(outs)] { spread_run(config, in, outs); });
}

void add_reducer(Network& net, ReducerConfig config, std::vector<In<Message>> ins, Out<Message> out,
                 std::string name) {
  net.add(std::move(name), [config = std::move(config), ins = std::move(ins), out] { reduce_run(config, ins, out); });
}

void add_combine(Network& net, CombineConfig config, std::vector<In<Message>> ins, Out<Message> out,
                 std::string name) {
  net.add(std::move(name), [config = std::move(config), ins = std::move(ins), out] { combine_run(config, ins, out); });
}

void add_group(Network& net, const GroupConfig& config, std::vector<In<Message>> ins,
               std::vector<Out<Message>> outs, const LogSpec& log, std::string name) {
  if (config.workers == 0) throw ConfigurationError("group needs workers >= 1");
  if (!config.per_worker_modifiers.empty() && config.per_worker_modifiers.size() != config.workers)
    throw ConfigurationError("perWorkerModifiers length must equal workers");
  check_ends(ins.size(), config.workers, "input");
  check_ends(outs.size(), config.workers, "output");

  std::shared_ptr<Barrier> barrier;
  if (config.synchronised) barrier = net.barrier(config.workers);
  for (std::size_t i = 0; i < config.workers; ++i) {
    WorkerConfig w;
    w.function = config.function;
    w.modifier = config.per_worker_modifiers.empty() ? config.modifier : config.per_worker_modifiers[i];
    w.local = config.local;
    w.out_data = config.out_data;
    w.barrier = barrier;
    add_worker(net, std::move(w), ins.size() == 1 ? ins[0] : ins[i], outs.size() == 1 ? outs[0] : outs[i],
               replica(log, i), indexed(name, i));
  }
}

namespace {

void check_stages(const PipelineConfig& config) {
  if (config.stages.size() < 2) throw ConfigurationError("pipeline requires >= 2 stages");
  if (!config.modifiers.empty() && config.modifiers.size() != config.stages.size())
    throw ConfigurationError("pipeline modifiers must match the stage count");
}

WorkerConfig stage_worker(const PipelineConfig& config, std::size_t s) {
  WorkerConfig w;
  w.function = config.stages[s];
  if (!config.modifiers.empty()) w.modifier = config.modifiers[s];
  return w;
}

}  // namespace

void add_pipeline(Network& net, const PipelineConfig& config, In<Message> in, Out<Message> out,
                  const LogSpec& log, std::string name) {
  check_stages(config);
  In<Message> current = std::move(in);
  for (std::size_t s = 0; s < config.stages.size(); ++s) {
    const bool last = s + 1 == config.stages.size();
    Channel<Message> link;
    if (!last) link = net.channel(ChannelKind::one2one);
    add_worker(net, stage_worker(config, s), current, last ? out : link.out, replica(log, s), indexed(name, s));
    if (!last) current = link.in;
  }
}

std::shared_ptr<CollectOutcome> add_pipeline_collect(Network& net, const PipelineConfig& config, In<Message> in,
                                                     ResultDetails result, const LogSpec& log, std::string name) {
  check_stages(config);
  auto tail = net.channel(ChannelKind::one2one);
  add_pipeline(net, config, std::move(in), tail.out, log, name);
  LogSpec collect_log = log.enabled() ? LogSpec{log.phase + ".collect", log.property} : log;
  return add_collect(net, std::move(result), tail.in, collect_log, name + ".collect");
}

std::vector<std::shared_ptr<CollectOutcome>> add_group_of_pipeline_collects(Network& net,
                                                                            const PipelineConfig& pipeline,
                                                                            std::vector<ResultDetails> results,
                                                                            std::vector<In<Message>> ins,
                                                                            const LogSpec& log) {
  if (ins.empty()) throw ConfigurationError("group of pipelines needs groups >= 1");
  if (results.size() != ins.size())
    throw ConfigurationError("group of pipelines needs one result details per group");
  check_stages(pipeline);
  std::vector<std::shared_ptr<CollectOutcome>> slots;
  for (std::size_t g = 0; g < ins.size(); ++g)
    slots.push_back(add_pipeline_collect(net, pipeline, ins[g], std::move(results[g]), replica(log, g),
                                         indexed("gop", g)));
  return slots;
}

std::vector<std::shared_ptr<CollectOutcome>> add_task_parallel_of_group_collects(
    Network& net, EmitDetails emit, std::size_t workers, const PipelineConfig& stages,
    std::vector<ResultDetails> results, const LogSpec& log) {
  if (workers == 0) throw ConfigurationError("pipeline of groups needs workers >= 1");
  if (results.size() != workers)
    throw ConfigurationError("pipeline of groups needs one result details per worker");
  check_stages(stages);

  auto source = net.channel(ChannelKind::one2one);
  add_emit(net, std::move(emit), source.out);
  auto fan = net.channel_list(workers);
  add_spreader(net, SpreaderConfig{SpreadPolicy::fan_list, workers}, source.in, fan.outs);

  std::vector<In<Message>> current = fan.ins;
  for (std::size_t s = 0; s < stages.stages.size(); ++s) {
    auto next = net.channel_list(workers);
    GroupConfig g;
    g.workers = workers;
    g.function = stages.stages[s];
    if (!stages.modifiers.empty()) g.modifier = stages.modifiers[s];
    add_group(net, g, current, next.outs, replica(log, s), indexed("pog", s));
    current = next.ins;
  }
  return add_collect_group(net, std::move(results), current, log);
}

std::shared_ptr<CollectOutcome> add_data_parallel_collect(Network& net, EmitDetails emit, ResultDetails result,
                                                          std::size_t workers, WorkerFn function,
                                                          Params modifier) {
  if (workers == 0) throw ConfigurationError("data parallel collect needs workers >= 1");
  auto a = net.channel(ChannelKind::one2one);
  auto b = net.channel(ChannelKind::one2any);
  auto c = net.channel(ChannelKind::any2one);
  auto d = net.channel(ChannelKind::one2one);
  add_emit(net, std::move(emit), a.out);
  add_spreader(net, SpreaderConfig{SpreadPolicy::fan_any, workers}, a.in, {b.out});
  GroupConfig g;
  g.workers = workers;
  g.function = std::move(function);
  g.modifier = std::move(modifier);
  add_group(net, g, {b.in}, {c.out});
  add_reducer(net, ReducerConfig{ReducePolicy::fan_one, workers, {}}, {c.in}, d.out);
  return add_collect(net, std::move(result), d.in);
}

}  // namespace cspp
