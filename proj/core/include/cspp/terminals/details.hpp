#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cspp/protocol/message.hpp"
#include "cspp/protocol/params.hpp"
#include "cspp/protocol/step_result.hpp"

namespace cspp {

/// Process-private mutable state of an Emit: the class-level ("static")
/// state of the emitted data type plus the optional local helper object.
struct EmitContext {
  Payload state;
  Payload local;
  std::uint64_t sequence = 0;  // Data messages emitted so far
};

using EmitInitFn = std::function<StepResult(EmitContext&, const Params&)>;
using CreateFn = std::function<StepResult(EmitContext&, Payload& fresh, const Params&)>;
using TagFn = std::function<std::string(const Payload&)>;
using ObjectInitFn = std::function<StepResult(Payload&, const Params&)>;

/// A local helper object: constructed, initialised, used by the owning
/// process's callbacks and optionally finalised.
struct LocalDetails {
  std::function<Payload()> make;
  ObjectInitFn init;
  Params init_data = Params::array();
  ObjectInitFn finalise;
  Params finalise_data = Params::array();
};

struct EmitDetails {
  std::function<Payload()> make_state;  // optional
  EmitInitFn init;                      // optional
  Params init_data = Params::array();
  std::function<Payload()> make;        // fresh payload per iteration
  CreateFn create;
  Params create_data = Params::array();
  std::optional<LocalDetails> local;  // EmitWithLocal helper
  TagFn tag;                          // optional trace-tag extractor
};

/// A worker function: mutates the payload in place. `local` is the worker's
/// local helper when one is configured, otherwise nullptr.
using WorkerFn = std::function<StepResult(Payload& item, const Params& modifier, Payload* local)>;

using CollectFn = std::function<StepResult(Payload& result, Payload& item)>;

struct ResultDetails {
  std::function<Payload()> make;
  ObjectInitFn init;  // optional
  Params init_data = Params::array();
  CollectFn collect;
  ObjectInitFn finalise;  // optional
  Params finalise_data = Params::array();
};

/// What a Collect process hands back once it has finalised.
struct CollectOutcome {
  Payload result;
  std::vector<LogSummary> logs;  // accumulated from the terminator
  std::size_t collected = 0;
};

// Typed adaptors. They wrap callbacks written against concrete types so that
// user code does not deal with Payload directly.

template <class State, class T, class Init, class Create>
EmitDetails emit_details(Init init, Params init_data, Create create, Params create_data) {
  EmitDetails d;
  d.make_state = [] { return Payload(State{}); };
  d.init = [init](EmitContext& c, const Params& p) { return init(c.state.as<State>(), p); };
  d.init_data = std::move(init_data);
  d.make = [] { return Payload(T{}); };
  d.create = [create](EmitContext& c, Payload& fresh, const Params& p) {
    return create(c.state.as<State>(), fresh.as<T>(), p);
  };
  d.create_data = std::move(create_data);
  return d;
}

template <class Local, class Init, class Finalise = std::nullptr_t>
LocalDetails local_details(Init init, Params init_data, Finalise finalise = nullptr) {
  LocalDetails d;
  d.make = [] { return Payload(Local{}); };
  d.init = [init](Payload& local, const Params& p) { return init(local.as<Local>(), p); };
  d.init_data = std::move(init_data);
  if constexpr (!std::is_same_v<Finalise, std::nullptr_t>) {
    d.finalise = [finalise](Payload& local, const Params& p) { return finalise(local.as<Local>(), p); };
  }
  return d;
}

/// EmitWithLocal details: create receives the local helper as well.
template <class State, class T, class Local, class Init, class Create>
EmitDetails emit_with_local_details(Init init, Params init_data, Create create, Params create_data,
                                    LocalDetails local) {
  EmitDetails d;
  d.make_state = [] { return Payload(State{}); };
  d.init = [init](EmitContext& c, const Params& p) { return init(c.state.as<State>(), p); };
  d.init_data = std::move(init_data);
  d.make = [] { return Payload(T{}); };
  d.create = [create](EmitContext& c, Payload& fresh, const Params& p) {
    return create(c.state.as<State>(), fresh.as<T>(), c.local.as<Local>(), p);
  };
  d.create_data = std::move(create_data);
  d.local = std::move(local);
  return d;
}

template <class R, class T, class Init, class Collect, class Finalise>
ResultDetails result_details(Init init, Params init_data, Collect collect, Finalise finalise,
                             Params finalise_data = Params::array()) {
  ResultDetails d;
  d.make = [] { return Payload(R{}); };
  d.init = [init](Payload& r, const Params& p) { return init(r.as<R>(), p); };
  d.init_data = std::move(init_data);
  d.collect = [collect](Payload& r, Payload& item) { return collect(r.as<R>(), item.as<T>()); };
  d.finalise = [finalise](Payload& r, const Params& p) { return finalise(r.as<R>(), p); };
  d.finalise_data = std::move(finalise_data);
  return d;
}

}  // namespace cspp
