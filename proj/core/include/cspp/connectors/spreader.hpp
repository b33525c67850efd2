#pragma once

#include <cstddef>
#include <vector>

#include "cspp/kernel/channel.hpp"
#include "cspp/protocol/message.hpp"

namespace cspp {

enum class SpreadPolicy {
  fan_any,   // one any-end shared by all consumers
  fan_list,  // round robin over a channel list, starting at 0
  seq_cast,  // a deep clone to every output, one after another
  par_cast,  // a deep clone to every output, written concurrently
};

struct SpreaderConfig {
  SpreadPolicy policy = SpreadPolicy::fan_any;
  std::size_t destinations = 1;
};

/// Spreader process. For fan_any `outs` holds the single shared any-end and
/// `destinations` terminators are written to it; otherwise outs.size() must
/// equal destinations. Every destination receives exactly one terminator.
void spread_run(const SpreaderConfig& config, In<Message> in, std::vector<Out<Message>> outs);

}  // namespace cspp
