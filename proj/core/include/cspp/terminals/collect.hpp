#pragma once

#include "cspp/kernel/channel.hpp"
#include "cspp/logging/phase_logger.hpp"
#include "cspp/terminals/details.hpp"

namespace cspp {

/// Collect: init once, collect every Data payload, finalise exactly once
/// after the Terminator.
CollectOutcome collect_run(const ResultDetails& details, In<Message> in);
CollectOutcome collect_run(const ResultDetails& details, In<Message> in, PhaseLogger& log);

}  // namespace cspp
