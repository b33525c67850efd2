#pragma once

#include "cspp/kernel/channel.hpp"
#include "cspp/logging/phase_logger.hpp"
#include "cspp/terminals/details.hpp"

namespace cspp {

/// Emit: init once, then create fresh payloads until create answers
/// termination; writes Data* followed by exactly one Terminator.
void emit_run(const EmitDetails& details, Out<Message> out);
void emit_run(const EmitDetails& details, Out<Message> out, PhaseLogger& log);

/// EmitWithLocal: as emit_run, with an initialised local helper handed to
/// create. The local helper is mandatory.
void emit_with_local_run(const EmitDetails& details, Out<Message> out);
void emit_with_local_run(const EmitDetails& details, Out<Message> out, PhaseLogger& log);

}  // namespace cspp
