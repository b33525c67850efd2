#include <string>

#include "cspp/terminals/collect.hpp"
#include "cspp/terminals/emit.hpp"
#include "cspp/terminals/sequential.hpp"

namespace cspp {
namespace {

void init_context(const EmitDetails& d, EmitContext& ctx) {
  if (d.make_state) ctx.state = d.make_state();
  if (d.local) {
    ctx.local = d.local->make ? d.local->make() : Payload();
    if (d.local->init) check(d.local->init(ctx.local, d.local->init_data), "emit local init");
  }
  if (d.init) check(d.init(ctx, d.init_data), "emit init");
}

/// Runs create once. Returns false once create signals termination.
bool create_next(const EmitDetails& d, EmitContext& ctx, Payload& fresh) {
  const StepResult r = d.create(ctx, fresh, d.create_data);
  switch (r.kind()) {
    case StepResult::Kind::normal_continuation: return true;
    case StepResult::Kind::normal_termination: return false;
    case StepResult::Kind::error: check(r, "emit create"); break;
    case StepResult::Kind::completed_ok: break;
  }
  throw ProcessError(errc::protocol, "emit create must answer continuation or termination");
}

template <class Log>
void emit_loop(const EmitDetails& d, Out<Message>& out, Log& log) {
  if (!d.make || !d.create) throw ProcessError(errc::configuration, "emit needs make and create");
  EmitContext ctx;
  init_context(d, ctx);
  log.event(LogEvent::initialised);
  for (;;) {
    Payload fresh = d.make();
    if (!create_next(d, ctx, fresh)) break;
    ++ctx.sequence;
    std::string tag = d.tag ? d.tag(fresh) : "emit-" + std::to_string(ctx.sequence);
    Data data{std::move(fresh), std::move(tag)};
    const std::string id = log.object_id(data);
    log.event(LogEvent::output_ready, id);
    out.write(std::move(data));
    log.event(LogEvent::output_complete, id);
  }
  Terminator t;
  log.finish(t);
  out.write(std::move(t));
}

template <class Log>
CollectOutcome collect_loop(const ResultDetails& d, In<Message>& in, Log& log) {
  if (!d.collect) throw ProcessError(errc::configuration, "collect needs a collect callback");
  CollectOutcome outcome;
  if (d.make) outcome.result = d.make();
  if (d.init) check(d.init(outcome.result, d.init_data), "collect init");
  log.event(LogEvent::initialised);
  for (;;) {
    log.event(LogEvent::input_ready);
    Message m = in.read();
    if (auto* t = std::get_if<Terminator>(&m)) {
      if (d.finalise) check(d.finalise(outcome.result, d.finalise_data), "collect finalise");
      log.finish(*t);
      outcome.logs = std::move(t->logs);
      return outcome;
    }
    Data& data = std::get<Data>(m);
    log.event(LogEvent::input_complete, log.object_id(data));
    check(d.collect(outcome.result, data.payload), "collect");
    ++outcome.collected;
  }
}

}  // namespace

void emit_run(const EmitDetails& details, Out<Message> out) {
  NoLog log;
  emit_loop(details, out, log);
}

void emit_run(const EmitDetails& details, Out<Message> out, PhaseLogger& log) {
  emit_loop(details, out, log);
}

void emit_with_local_run(const EmitDetails& details, Out<Message> out) {
  if (!details.local) throw ProcessError(errc::configuration, "EmitWithLocal needs local details");
  emit_run(details, std::move(out));
}

void emit_with_local_run(const EmitDetails& details, Out<Message> out, PhaseLogger& log) {
  if (!details.local) throw ProcessError(errc::configuration, "EmitWithLocal needs local details");
  emit_run(details, std::move(out), log);
}

CollectOutcome collect_run(const ResultDetails& details, In<Message> in) {
  NoLog log;
  return collect_loop(details, in, log);
}

CollectOutcome collect_run(const ResultDetails& details, In<Message> in, PhaseLogger& log) {
  return collect_loop(details, in, log);
}

CollectOutcome run_sequential(const EmitDetails& emit, const std::vector<WorkerFn>& stages,
                              const ResultDetails& result, const std::vector<Params>& modifiers) {
  EmitContext ctx;
  init_context(emit, ctx);
  CollectOutcome outcome;
  if (result.make) outcome.result = result.make();
  if (result.init) check(result.init(outcome.result, result.init_data), "collect init");
  for (;;) {
    Payload item = emit.make();
    if (!create_next(emit, ctx, item)) break;
    for (std::size_t s = 0; s < stages.size(); ++s) {
      const Params& modifier = s < modifiers.size() ? modifiers[s] : Params::array();
      check(stages[s](item, modifier, nullptr), "stage function");
    }
    check(result.collect(outcome.result, item), "collect");
    ++outcome.collected;
  }
  if (result.finalise) check(result.finalise(outcome.result, result.finalise_data), "collect finalise");
  return outcome;
}

}  // namespace cspp
