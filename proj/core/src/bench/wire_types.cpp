#include "cspp/bench/wire_types.hpp"

#include "cspp/bench/mandelbrot.hpp"
#include "cspp/bench/montecarlo.hpp"

namespace cspp::bench {

using cluster::Json;

void register_wire_types(cluster::TypeRegistry& types) {
  types.add<PiData>(
      "PiData",
      [](const PiData& d) {
        Json j;
        j["instance"] = d.instance;
        j["seed"] = d.seed;
        j["iterations"] = d.iterations;
        j["within"] = d.within;
        return j;
      },
      [](const Json& j) {
        PiData d;
        d.instance = j.at("instance").get<std::uint64_t>();
        d.seed = j.at("seed").get<std::uint64_t>();
        d.iterations = j.at("iterations").get<std::uint64_t>();
        d.within = j.at("within").get<std::uint64_t>();
        return d;
      });
  types.add<MandelbrotLine>(
      "MandelbrotLine",
      [](const MandelbrotLine& l) {
        Json j;
        j["row"] = l.row;
        j["width"] = l.width;
        j["height"] = l.height;
        j["pixelDelta"] = l.pixel_delta;
        j["maxIterations"] = l.max_iterations;
        j["centre"] = {l.centre_x, l.centre_y};
        j["rgb"] = l.rgb;
        return j;
      },
      [](const Json& j) {
        MandelbrotLine l;
        l.row = j.at("row").get<std::size_t>();
        l.width = j.at("width").get<std::size_t>();
        l.height = j.at("height").get<std::size_t>();
        l.pixel_delta = j.at("pixelDelta").get<double>();
        l.max_iterations = j.at("maxIterations").get<std::size_t>();
        l.centre_x = j.at("centre").at(0).get<double>();
        l.centre_y = j.at("centre").at(1).get<double>();
        l.rgb = j.at("rgb").get<std::vector<std::uint8_t>>();
        return l;
      });
}

const cluster::TypeRegistry& demo_types() {
  static const cluster::TypeRegistry types = [] {
    auto t = cluster::basic_types();
    register_wire_types(t);
    return t;
  }();
  return types;
}

cluster::FarmJob farm_job(const NetworkSpec& spec, std::size_t workers, const FunctionRegistry& registry) {
  static const char* const shape[] = {"emit", "spreader", "group", "reducer", "collect"};
  bool farm = spec.nodes.size() == 5;
  for (std::size_t i = 0; farm && i < 5; ++i) farm = spec.nodes[i].kind == shape[i];
  if (!farm) throw SpecError({{Diagnostic::npos, "cluster runs need an emit/spreader/group/reducer/collect farm"}});

  const Params& e = spec.nodes[0].config;
  const Params& g = spec.nodes[2].config;
  const Params& c = spec.nodes[4].config;
  auto need = [&](const Params& node, const char* field) -> std::string {
    if (!node.contains(field) || !node[field].is_string()) {
      throw SpecError({{Diagnostic::npos, std::string("farm node lacks '") + field + "'"}});
    }
    return node[field].get<std::string>();
  };

  cluster::FarmJob job;
  const auto emit_name = need(e, "details");
  const auto* emit = registry.find<EmitDetails>(emit_name);
  const auto result_name = need(c, "details");
  const auto* result = registry.find<ResultDetails>(result_name);
  if (emit == nullptr || result == nullptr) {
    throw SpecError({{Diagnostic::npos, "unknown registry name '" + (emit ? result_name : emit_name) + "'"}});
  }
  job.emit = *emit;
  if (e.contains("initData")) job.emit.init_data = e["initData"];
  if (e.contains("createData")) job.emit.create_data = e["createData"];
  job.result = *result;
  if (c.contains("initData")) job.result.init_data = c["initData"];
  job.function = need(g, "function");
  if (g.contains("modifier")) job.modifier = g["modifier"];
  job.workers = workers;
  return job;
}

}  // namespace cspp::bench
