#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "cspp/kernel/channel.hpp"
#include "cspp/protocol/message.hpp"
#include "cspp/terminals/details.hpp"

namespace cspp {

enum class ReducePolicy {
  fan_one,       // one any-end shared by all producers, arrival order
  fair_alt,      // channel list, fair alternation
  round_robin,   // channel list, read 0..N-1 cyclically
  sorted_merge,  // channel list, globally least key first
};

using KeyFn = std::function<std::int64_t(const Payload&)>;

struct ReducerConfig {
  ReducePolicy policy = ReducePolicy::fan_one;
  std::size_t sources = 1;
  KeyFn key;  // sorted_merge only
};

/// Reducer process. For fan_one `ins` holds the single shared any-end;
/// otherwise ins.size() must equal sources. Forwards all data and, once a
/// terminator has arrived from every source, exactly one merged terminator.
void reduce_run(const ReducerConfig& config, std::vector<In<Message>> ins, Out<Message> out);

using CombineFn = std::function<StepResult(Payload& accumulator, Payload& item)>;
using CombineOutputFn = std::function<Payload(Payload&& accumulator)>;

struct CombineConfig {
  LocalDetails accumulator;
  CombineFn combine;
  CombineOutputFn output;  // optional; the accumulator itself is sent otherwise
  std::size_t sources = 1;  // terminators to wait for; > ins.size() for an any-end
};

/// Folds every incoming payload into one accumulator, then writes a single
/// Data followed by a single terminator.
void combine_run(const CombineConfig& config, std::vector<In<Message>> ins, Out<Message> out);

}  // namespace cspp
