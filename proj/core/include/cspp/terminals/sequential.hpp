#pragma once

#include <vector>

#include "cspp/terminals/details.hpp"

namespace cspp {

/// Plain-loop invocation of the same callbacks a network would run:
/// init, then create -> stage functions -> collect for every object, then
/// finalise. Used as the sequential baseline and as a test oracle.
CollectOutcome run_sequential(const EmitDetails& emit, const std::vector<WorkerFn>& stages,
                              const ResultDetails& result,
                              const std::vector<Params>& modifiers = {});

}  // namespace cspp
