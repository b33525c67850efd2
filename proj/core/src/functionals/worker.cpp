#include "cspp/functionals/worker.hpp"

namespace cspp {
namespace {

template <class Log>
void worker_loop(const WorkerConfig& c, In<Message>& in, Out<Message>& out, Log& log) {
  if (!c.function) throw ProcessError(errc::configuration, "worker needs a function");
  if (!c.out_data && !c.local) throw ProcessError(errc::configuration, "outData=false needs local details");

  Payload local;
  if (c.local) {
    if (c.local->make) local = c.local->make();
    if (c.local->init) check(c.local->init(local, c.local->init_data), "worker local init");
  }
  Payload* local_ptr = c.local ? &local : nullptr;
  log.event(LogEvent::initialised);

  for (;;) {
    log.event(LogEvent::input_ready);
    Message m = in.read();
    if (auto* t = std::get_if<Terminator>(&m)) {
      if (c.barrier) c.barrier->resign();
      if (c.local && c.local->finalise) check(c.local->finalise(local, c.local->finalise_data), "worker local finalise");
      if (!c.out_data) {
        Data d{std::move(local), "local"};
        const std::string id = log.object_id(d);
        log.event(LogEvent::output_ready, id);
        out.write(std::move(d));
        log.event(LogEvent::output_complete, id);
      }
      log.finish(*t);
      out.write(std::move(*t));
      return;
    }
    Data& d = std::get<Data>(m);
    log.event(LogEvent::input_complete, log.object_id(d));
    check(c.function(d.payload, c.modifier, local_ptr), "worker function");
    if (c.barrier) c.barrier->sync();
    if (!c.out_data) continue;
    const std::string id = log.object_id(d);
    log.event(LogEvent::output_ready, id);
    out.write(std::move(d));
    log.event(LogEvent::output_complete, id);
  }
}

}  // namespace

void worker_run(const WorkerConfig& config, In<Message> in, Out<Message> out) {
  NoLog log;
  worker_loop(config, in, out, log);
}

void worker_run(const WorkerConfig& config, In<Message> in, Out<Message> out, PhaseLogger& log) {
  worker_loop(config, in, out, log);
}

}  // namespace cspp
