#include <string>
#include <thread>

#include "cspp/connectors/spreader.hpp"
#include "cspp/protocol/payload.hpp"

namespace cspp {
namespace {

Data clone_data(const Data& d) {
  try {
    return Data{d.payload.clone(), d.tag};
  } catch (const CloneError& e) {
    throw ProcessError(errc::clone, std::string("cast spreader: ") + e.what());
  }
}

void cast(const Data& d, std::vector<Out<Message>>& outs, bool parallel) {
  if (!parallel) {
    for (auto& out : outs) out.write(clone_data(d));
    return;
  }
  // Clone up front so a clone failure aborts before anything is written.
  std::vector<Data> copies;
  copies.reserve(outs.size());
  for (std::size_t i = 0; i < outs.size(); ++i) copies.push_back(clone_data(d));
  std::vector<std::exception_ptr> failures(outs.size());
  {
    std::vector<std::jthread> writers;
    writers.reserve(outs.size());
    for (std::size_t i = 0; i < outs.size(); ++i) {
      writers.emplace_back([&, i] {
        try {
          outs[i].write(std::move(copies[i]));
        } catch (...) {
          failures[i] = std::current_exception();
        }
      });
    }
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
}

}  // namespace

void spread_run(const SpreaderConfig& config, In<Message> in, std::vector<Out<Message>> outs) {
  if (config.destinations == 0) throw ProcessError(errc::configuration, "spreader needs destinations >= 1");
  const bool any = config.policy == SpreadPolicy::fan_any;
  if (any ? outs.size() != 1 : outs.size() != config.destinations)
    throw ProcessError(errc::configuration, "spreader output arity does not match destinations");

  std::size_t next = 0;
  for (;;) {
    Message m = in.read();
    if (auto* t = std::get_if<Terminator>(&m)) {
      // The first terminator carries the accumulated logs; the rest are bare.
      const std::size_t copies = config.destinations;
      for (std::size_t i = 0; i < copies; ++i) {
        Terminator out_t;
        if (i == 0) out_t.logs = std::move(t->logs);
        outs[any ? 0 : i].write(std::move(out_t));
      }
      return;
    }
    Data& d = std::get<Data>(m);
    switch (config.policy) {
      case SpreadPolicy::fan_any: outs[0].write(std::move(d)); break;
      case SpreadPolicy::fan_list:
        outs[next].write(std::move(d));
        next = (next + 1) % outs.size();
        break;
      case SpreadPolicy::seq_cast: cast(d, outs, false); break;
      case SpreadPolicy::par_cast: cast(d, outs, true); break;
    }
  }
}

}  // namespace cspp
