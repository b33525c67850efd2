#pragma once

#include "cspp/bench/common.hpp"
#include "cspp/cluster/node.hpp"
#include "cspp/cluster/wire.hpp"

namespace cspp::bench {

/// Wire mappings for the payloads of the farm-shaped demos (Monte Carlo and
/// Mandelbrot), the only demos that run across a cluster.
void register_wire_types(cluster::TypeRegistry& types);

/// basic_types() plus register_wire_types().
const cluster::TypeRegistry& demo_types();

/// Turns a farm spec (emit, spreader, group, reducer, collect) into a
/// cluster job with `workers` worker nodes. Throws SpecError for any other
/// shape.
cluster::FarmJob farm_job(const NetworkSpec& spec, std::size_t workers,
                          const FunctionRegistry& registry = demo_registry());

}  // namespace cspp::bench
