#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cspp/connectors/reducer.hpp"
#include "cspp/connectors/spreader.hpp"
#include "cspp/functionals/network.hpp"
#include "cspp/functionals/worker.hpp"

namespace cspp {

// Fragment constructors. Each adds processes (and any internal channels) to
// a Network. Process names double as log tags: the node's phase name for a
// single process, "phase.i" for the i-th replica.

void add_emit(Network& net, EmitDetails details, Out<Message> out, const LogSpec& log = {},
              std::string name = "emit");

std::shared_ptr<CollectOutcome> add_collect(Network& net, ResultDetails details, In<Message> in,
                                            const LogSpec& log = {}, std::string name = "collect");

/// ListGroupCollect: collector i reads ins[i].
std::vector<std::shared_ptr<CollectOutcome>> add_collect_group(Network& net,
                                                               std::vector<ResultDetails> details,
                                                               std::vector<In<Message>> ins,
                                                               const LogSpec& log = {});

void add_worker(Network& net, WorkerConfig config, In<Message> in, Out<Message> out,
                const LogSpec& log = {}, std::string name = "worker");

void add_spreader(Network& net, SpreaderConfig config, In<Message> in, std::vector<Out<Message>> outs,
                  std::string name = "spreader");
void add_reducer(Network& net, ReducerConfig config, std::vector<In<Message>> ins, Out<Message> out,
                 std::string name = "reducer");
void add_combine(Network& net, CombineConfig config, std::vector<In<Message>> ins, Out<Message> out,
                 std::string name = "combine");

struct GroupConfig {
  std::size_t workers = 1;
  WorkerFn function;
  Params modifier = Params::array();            // broadcast to every worker
  std::vector<Params> per_worker_modifiers;     // empty, or exactly `workers` entries
  std::optional<LocalDetails> local;
  bool out_data = true;
  bool synchronised = false;
};

/// A group of workers. `ins` and `outs` each hold either one shared any-end
/// or exactly `workers` list ends (worker i uses index i).
void add_group(Network& net, const GroupConfig& config, std::vector<In<Message>> ins,
               std::vector<Out<Message>> outs, const LogSpec& log = {}, std::string name = "group");

struct PipelineConfig {
  std::vector<WorkerFn> stages;
  std::vector<Params> modifiers;  // optional, one per stage
};

void add_pipeline(Network& net, const PipelineConfig& config, In<Message> in, Out<Message> out,
                  const LogSpec& log = {}, std::string name = "pipeline");
std::shared_ptr<CollectOutcome> add_pipeline_collect(Network& net, const PipelineConfig& config,
                                                     In<Message> in, ResultDetails result,
                                                     const LogSpec& log = {},
                                                     std::string name = "pipeline");

/// GroupOfPipelineCollects: pipeline i (followed by its own Collect) reads ins[i].
std::vector<std::shared_ptr<CollectOutcome>> add_group_of_pipeline_collects(
    Network& net, const PipelineConfig& pipeline, std::vector<ResultDetails> results,
    std::vector<In<Message>> ins, const LogSpec& log = {});

/// TaskParallelOfGroupCollects, including its own Emit:
/// Emit -> OneFanList(workers) -> one ListGroupList per stage -> ListGroupCollect.
std::vector<std::shared_ptr<CollectOutcome>> add_task_parallel_of_group_collects(
    Network& net, EmitDetails emit, std::size_t workers, const PipelineConfig& stages,
    std::vector<ResultDetails> results, const LogSpec& log = {});

/// Emit -> OneFanAny -> AnyGroupAny(workers) -> AnyFanOne -> Collect.
std::shared_ptr<CollectOutcome> add_data_parallel_collect(Network& net, EmitDetails emit,
                                                          ResultDetails result, std::size_t workers,
                                                          WorkerFn function,
                                                          Params modifier = Params::array());

}  // namespace cspp
