#include <optional>
#include <string>

#include "cspp/connectors/reducer.hpp"
#include "cspp/kernel/alternative.hpp"

namespace cspp {
namespace {

void check_arity(bool any, std::size_t sources, std::size_t ins, const char* who) {
  if (sources == 0) throw ProcessError(errc::configuration, std::string(who) + " needs sources >= 1");
  if (any ? ins != 1 : ins != sources)
    throw ProcessError(errc::configuration, std::string(who) + " input arity does not match sources");
}

/// Reads from a set of inputs until `sources` terminators have arrived.
/// A single any-end is read directly; a list is read by fair alternation.
class Gather {
 public:
  Gather(std::vector<In<Message>> ins, std::size_t sources) : remaining_(sources) {
    if (ins.size() == 1) {
      single_ = std::move(ins[0]);
    } else {
      alt_.emplace(std::move(ins));
    }
  }

  /// Next data message, or nullopt once every source has terminated.
  std::optional<Data> next() {
    while (remaining_ > 0) {
      Message m = read_one();
      if (auto* t = std::get_if<Terminator>(&m)) {
        merged_ = terminator_merge(std::move(merged_), std::move(*t));
        --remaining_;
        continue;
      }
      return std::move(std::get<Data>(m));
    }
    return std::nullopt;
  }

  Terminator take_terminator() { return std::move(merged_); }

 private:
  Message read_one() {
    if (!alt_) return single_.read();
    // A terminated input never has a writer again, so alternation skips it.
    const std::size_t i = alt_->select();
    return (*alt_)[i].read();
  }

  In<Message> single_;
  std::optional<Alternative<Message>> alt_;
  std::size_t remaining_;
  Terminator merged_;
};

void round_robin(std::vector<In<Message>>& ins, Out<Message>& out) {
  std::vector<bool> open(ins.size(), true);
  std::size_t remaining = ins.size();
  Terminator merged;
  for (std::size_t i = 0; remaining > 0; i = (i + 1) % ins.size()) {
    if (!open[i]) continue;
    Message m = ins[i].read();
    if (auto* t = std::get_if<Terminator>(&m)) {
      merged = terminator_merge(std::move(merged), std::move(*t));
      open[i] = false;
      --remaining;
      continue;
    }
    out.write(std::move(m));
  }
  out.write(std::move(merged));
}

void sorted_merge(const KeyFn& key, std::vector<In<Message>>& ins, Out<Message>& out) {
  if (!key) throw ProcessError(errc::configuration, "sorted merge needs a key function");
  struct Head {
    std::optional<Data> data;
    std::int64_t key = 0;
    bool seen = false;  // a previous key exists for the monotonicity check
  };
  std::vector<Head> heads(ins.size());
  Terminator merged;

  auto refill = [&](std::size_t i) {
    Message m = ins[i].read();
    if (auto* t = std::get_if<Terminator>(&m)) {
      merged = terminator_merge(std::move(merged), std::move(*t));
      heads[i].data.reset();
      return;
    }
    Data d = std::move(std::get<Data>(m));
    const std::int64_t k = key(d.payload);
    if (heads[i].seen && k < heads[i].key)
      throw ProcessError(errc::sorted_merge,
                         "sorted merge: input " + std::to_string(i) + " is not nondecreasing");
    heads[i].key = k;
    heads[i].seen = true;
    heads[i].data = std::move(d);
  };

  for (std::size_t i = 0; i < ins.size(); ++i) refill(i);
  for (;;) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < heads.size(); ++i) {
      if (!heads[i].data) continue;
      if (!best || heads[i].key < heads[*best].key) best = i;  // ties: lowest index
    }
    if (!best) break;
    out.write(std::move(*heads[*best].data));
    heads[*best].data.reset();
    refill(*best);
  }
  out.write(std::move(merged));
}

}  // namespace

void reduce_run(const ReducerConfig& config, std::vector<In<Message>> ins, Out<Message> out) {
  check_arity(config.policy == ReducePolicy::fan_one, config.sources, ins.size(), "reducer");
  switch (config.policy) {
    case ReducePolicy::round_robin: round_robin(ins, out); return;
    case ReducePolicy::sorted_merge: sorted_merge(config.key, ins, out); return;
    case ReducePolicy::fan_one:
    case ReducePolicy::fair_alt: break;
  }
  Gather gather(std::move(ins), config.sources);
  while (auto d = gather.next()) out.write(std::move(*d));
  out.write(gather.take_terminator());
}

void combine_run(const CombineConfig& config, std::vector<In<Message>> ins, Out<Message> out) {
  if (!config.combine) throw ProcessError(errc::configuration, "combine needs a combine function");
  if (ins.empty()) throw ProcessError(errc::configuration, "combine needs at least one input");
  if (ins.size() > 1 && ins.size() != config.sources)
    throw ProcessError(errc::configuration, "combine input arity does not match sources");

  const LocalDetails& acc_details = config.accumulator;
  Payload acc = acc_details.make ? acc_details.make() : Payload();
  if (acc_details.init) check(acc_details.init(acc, acc_details.init_data), "combine init");

  Gather gather(std::move(ins), config.sources);
  while (auto d = gather.next()) check(config.combine(acc, d->payload), "combine");

  if (acc_details.finalise) check(acc_details.finalise(acc, acc_details.finalise_data), "combine finalise");
  Payload result = config.output ? config.output(std::move(acc)) : std::move(acc);
  out.write(Data{std::move(result), "combined"});
  out.write(gather.take_terminator());
}

}  // namespace cspp
