#include "cspp/builder/builder.hpp"

#include <set>

#include "cspp/functionals/patterns.hpp"

namespace cspp {

std::string Port::str() const {
  switch (kind) {
    case PortKind::none: return "none";
    case PortKind::one: return "one";
    case PortKind::any: return "any(" + std::to_string(arity) + ")";
    case PortKind::list: return "list(" + std::to_string(arity) + ")";
  }
  return "?";
}

namespace {

using Diags = std::vector<Diagnostic>;

std::optional<std::size_t> get_count(const Params& c, const char* field) {
  if (!c.contains(field)) return std::nullopt;
  const Params& v = c[field];
  if (!v.is_number_integer() || v.get<long long>() < 0) return std::nullopt;
  return v.get<std::size_t>();
}

/// Config access for one node; every problem becomes a diagnostic.
class Reader {
 public:
  Reader(const NodeDescriptor& node, std::size_t index, Diags& out) : node_(node), index_(index), out_(out) {}

  const Params& config() const { return node_.config; }
  bool has(const char* field) const { return node_.config.contains(field); }

  void fail(const std::string& reason) { out_.push_back({index_, reason}); }

  std::size_t count(const char* field, std::size_t min = 1) {
    auto v = get_count(node_.config, field);
    if (!v) {
      if (has(field)) fail("'" + std::string(field) + "' must be a non-negative integer");
      return 0;
    }
    if (*v < min) fail("'" + std::string(field) + "' must be >= " + std::to_string(min));
    return *v;
  }

  std::string choice(const char* field, const std::vector<std::string>& options, const std::string& fallback) {
    if (!has(field)) return fallback;
    const Params& v = node_.config[field];
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      for (const auto& o : options)
        if (o == s) return s;
    }
    std::string list;
    for (const auto& o : options) list += (list.empty() ? "" : ", ") + o;
    fail("'" + std::string(field) + "' must be one of " + list);
    return fallback;
  }

  bool flag(const char* field, bool fallback) {
    if (!has(field)) return fallback;
    if (!node_.config[field].is_boolean()) {
      fail("'" + std::string(field) + "' must be a boolean");
      return fallback;
    }
    return node_.config[field].get<bool>();
  }

  void params(const char* field) {
    if (has(field) && !node_.config[field].is_array()) fail("'" + std::string(field) + "' must be a list");
  }

  void ref(const Params& value, EntryKind expected, const FunctionRegistry& reg, const std::string& field) {
    if (!value.is_string()) {
      fail("'" + field + "' must name a registry entry");
      return;
    }
    const auto name = value.get<std::string>();
    auto kind = reg.kind_of(name);
    if (!kind) {
      fail("unknown registry name '" + name + "' in '" + field + "'");
    } else if (*kind != expected) {
      fail("'" + name + "' is a " + std::string(to_string(*kind)) + ", expected " + std::string(to_string(expected)));
    }
  }

  void ref(const char* field, EntryKind expected, const FunctionRegistry& reg) {
    if (has(field)) ref(node_.config[field], expected, reg, field);
  }

  /// A list of n registry names, or one name standing for all n.
  void refs(const char* field, std::size_t n, EntryKind expected, const FunctionRegistry& reg) {
    if (!has(field)) return;
    const Params& v = node_.config[field];
    if (v.is_string()) {
      ref(v, expected, reg, field);
      return;
    }
    if (!v.is_array()) {
      fail("'" + std::string(field) + "' must be a name or a list of names");
      return;
    }
    if (v.size() != n)
      fail("'" + std::string(field) + "' needs " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    for (const auto& item : v) ref(item, expected, reg, field);
  }

 private:
  const NodeDescriptor& node_;
  std::size_t index_;
  Diags& out_;
};

Port any_or_list(const std::string& mode, std::size_t n) {
  return Port{mode == "list" ? PortKind::list : PortKind::any, n};
}

NodePorts ports_of(const NodeDescriptor& node, std::size_t i, Diags& diags) {
  Reader r(node, i, diags);
  const Port one{PortKind::one, 1};
  const Port none{};
  const auto& k = node.kind;
  if (k == "emit" || k == "emitWithLocal") return {none, one};
  if (k == "collect") {
    if (r.has("collectors")) return {Port{PortKind::list, r.count("collectors")}, none};
    return {one, none};
  }
  if (k == "worker" || k == "multicoreEngine" || k == "stencilEngine") return {one, one};
  if (k == "spreader") {
    const auto policy = r.choice("policy", {"fanAny", "fanList", "seqCast", "parCast"}, "fanAny");
    const auto d = r.count("destinations");
    return {one, Port{policy == "fanAny" ? PortKind::any : PortKind::list, d}};
  }
  if (k == "reducer") {
    const auto policy = r.choice("policy", {"fanOne", "fairAlt", "roundRobin", "sortedMerge"}, "fanOne");
    const auto s = r.count("sources");
    return {Port{policy == "fanOne" ? PortKind::any : PortKind::list, s}, one};
  }
  if (k == "combine") {
    const auto s = r.count("sources");
    const auto input = r.choice("input", {"any", "list", "one"}, "any");
    if (input == "one") return {one, one};
    return {any_or_list(input, s), one};
  }
  if (k == "group") {
    const auto w = r.count("workers");
    return {any_or_list(r.choice("input", {"any", "list"}, "any"), w),
            any_or_list(r.choice("output", {"any", "list"}, "any"), w)};
  }
  if (k == "pipeline") return {one, r.has("collect") ? none : one};
  if (k == "composite") {
    const auto type = r.choice("type", {"groupOfPipelineCollects", "taskParallelOfGroupCollects"}, "");
    if (type == "groupOfPipelineCollects")
      return {any_or_list(r.choice("input", {"any", "list"}, "any"), r.count("groups")), none};
    return {none, none};
  }
  diags.push_back({i, "unknown node kind '" + k + "'"});
  return {none, none};
}

const std::set<std::string>& loggable() {
  static const std::set<std::string> kinds = {"emit",  "emitWithLocal", "collect",  "worker",
                                              "group", "pipeline",      "composite"};
  return kinds;
}

void check_node(const NodeDescriptor& node, std::size_t i, const FunctionRegistry& reg, Diags& diags) {
  Reader r(node, i, diags);
  const auto& k = node.kind;
  if (node.log_phase && !loggable().count(k)) r.fail("logging is not supported for " + k + " nodes");
  if (node.log_property) r.ref(Params(*node.log_property), EntryKind::property, reg, "log.property");

  auto stage_checks = [&] {
    const auto stages = r.count("stages", 0);
    if (stages < 2) r.fail("pipeline requires >= 2 stages");
    r.refs("stageOps", stages, EntryKind::function, reg);
    if (r.has("stageOps") && !r.config()["stageOps"].is_array()) r.fail("'stageOps' must be a list");
    if (r.has("modifiers")) {
      const Params& m = r.config()["modifiers"];
      if (!m.is_array() || m.size() != stages) r.fail("'modifiers' needs one list per stage");
    }
    return stages;
  };

  if (k == "emit" || k == "emitWithLocal") {
    r.ref("details", EntryKind::emit, reg);
    r.params("initData");
    r.params("createData");
    if (k == "emitWithLocal") {
      r.ref("local", EntryKind::local, reg);
      r.params("localInitData");
    }
  } else if (k == "collect") {
    r.ref("details", EntryKind::result, reg);
    r.params("initData");
    r.params("finaliseData");
  } else if (k == "worker") {
    r.ref("function", EntryKind::function, reg);
    r.ref("local", EntryKind::local, reg);
    r.params("modifier");
    if (!r.flag("outData", true) && !r.has("local")) r.fail("outData=false needs 'local'");
  } else if (k == "spreader") {
    r.count("destinations");
  } else if (k == "reducer") {
    r.count("sources");
    if (r.choice("policy", {"fanOne", "fairAlt", "roundRobin", "sortedMerge"}, "fanOne") == "sortedMerge") {
      if (!r.has("key")) r.fail("sortedMerge needs a 'key'");
      r.ref("key", EntryKind::key, reg);
    }
  } else if (k == "combine") {
    r.ref("details", EntryKind::combine, reg);
  } else if (k == "group") {
    const auto w = r.count("workers");
    r.ref("function", EntryKind::function, reg);
    r.ref("local", EntryKind::local, reg);
    r.params("modifier");
    r.flag("synchronised", false);
    if (!r.flag("outData", true) && !r.has("local")) r.fail("outData=false needs 'local'");
    if (r.has("perWorkerModifiers")) {
      const Params& m = r.config()["perWorkerModifiers"];
      if (!m.is_array() || m.size() != w)
        r.fail("perWorkerModifiers needs exactly " + std::to_string(w) + " entries (one per worker)");
    }
  } else if (k == "pipeline") {
    stage_checks();
    r.ref("collect", EntryKind::result, reg);
  } else if (k == "composite") {
    const auto type = r.config().value("type", std::string());
    if (type == "groupOfPipelineCollects") {
      const auto g = r.count("groups");
      stage_checks();
      r.refs("results", g, EntryKind::result, reg);
      r.params("resultInitData");
    } else if (type == "taskParallelOfGroupCollects") {
      const auto w = r.count("workers");
      stage_checks();
      r.ref("emit", EntryKind::emit, reg);
      r.params("createData");
      r.refs("results", w, EntryKind::result, reg);
      r.params("resultInitData");
    }
  } else if (k == "multicoreEngine") {
    r.count("nodes");
    r.ref("details", EntryKind::engine, reg);
    if (r.has("errorMargin") && r.has("iterations")) r.fail("give only one of 'errorMargin' and 'iterations'");
    if (r.has("errorMargin") && !r.config()["errorMargin"].is_number()) r.fail("'errorMargin' must be a number");
    if (r.has("iterations")) r.count("iterations");
    if (const auto* e = reg.find<EngineConfig>(r.config().value("details", std::string()))) {
      const bool margin = r.has("errorMargin") || (!r.has("iterations") && e->error_margin);
      if (!margin && e->converged && (r.has("iterations") || e->iterations))
        r.fail("error method given in fixed-iterations mode");
      if (margin && !e->converged) r.fail("errorMargin mode needs an engine with an error method");
      if (!margin && !r.has("iterations") && !e->iterations) r.fail("engine needs 'errorMargin' or 'iterations'");
    }
  } else if (k == "stencilEngine") {
    r.count("nodes");
    r.ref("operation", EntryKind::stencil, reg);
  }
}

bool replicated_out(const NodeDescriptor& n) { return n.kind == "group"; }
bool replicated_in(const NodeDescriptor& n) {
  return n.kind == "group" || (n.kind == "composite" && n.config.value("type", std::string()) == "groupOfPipelineCollects");
}

struct Link {
  std::vector<In<Message>> ins;
  std::vector<Out<Message>> outs;
};

Link make_link(Network& net, const Port& port, bool many_writers, bool many_readers) {
  Link link;
  if (port.kind == PortKind::list) {
    auto list = net.channel_list(port.arity);
    link.ins = std::move(list.ins);
    link.outs = std::move(list.outs);
    return link;
  }
  ChannelKind kind = ChannelKind::one2one;
  if (port.kind == PortKind::any) {
    if (many_writers && many_readers) {
      kind = ChannelKind::any2any;
    } else if (many_writers) {
      kind = ChannelKind::any2one;
    } else if (many_readers) {
      kind = ChannelKind::one2any;
    }
  }
  auto c = net.channel(kind);
  link.ins.push_back(std::move(c.in));
  link.outs.push_back(std::move(c.out));
  return link;
}

template <class T>
T lookup(const FunctionRegistry& reg, const Params& name) {
  return *reg.find<T>(name.get<std::string>());
}

void override_params(Params& target, const Params& config, const char* field) {
  if (config.contains(field)) target = config[field];
}

std::vector<ResultDetails> result_list(const FunctionRegistry& reg, const Params& c, std::size_t n) {
  const Params& v = c["results"];
  std::vector<ResultDetails> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(lookup<ResultDetails>(reg, v.is_string() ? v : v[i]));
    override_params(out.back().init_data, c, "resultInitData");
  }
  return out;
}

PipelineConfig pipeline_of(const FunctionRegistry& reg, const Params& c) {
  PipelineConfig p;
  for (const auto& name : c["stageOps"]) p.stages.push_back(lookup<WorkerFn>(reg, name));
  if (c.contains("modifiers"))
    for (const auto& m : c["modifiers"]) p.modifiers.push_back(m);
  return p;
}

SpreadPolicy spread_policy(const std::string& s) {
  if (s == "fanList") return SpreadPolicy::fan_list;
  if (s == "seqCast") return SpreadPolicy::seq_cast;
  if (s == "parCast") return SpreadPolicy::par_cast;
  return SpreadPolicy::fan_any;
}

ReducePolicy reduce_policy(const std::string& s) {
  if (s == "fairAlt") return ReducePolicy::fair_alt;
  if (s == "roundRobin") return ReducePolicy::round_robin;
  if (s == "sortedMerge") return ReducePolicy::sorted_merge;
  return ReducePolicy::fan_one;
}

void wire(Network& net, const FunctionRegistry& reg, const NetworkSpec& spec, std::size_t i, Link& in, Link& out) {
  const NodeDescriptor& node = spec.nodes[i];
  const Params& c = node.config;
  const std::string& k = node.kind;
  const std::string name = node.log_phase.value_or(k + std::to_string(i));
  LogSpec log;
  if (node.log_phase && spec.log_file) {
    log.phase = *node.log_phase;
    if (node.log_property) log.property = *reg.find<PropertyFn>(*node.log_property);
  }

  if (k == "emit" || k == "emitWithLocal") {
    auto d = lookup<EmitDetails>(reg, c["details"]);
    override_params(d.init_data, c, "initData");
    override_params(d.create_data, c, "createData");
    if (k == "emitWithLocal") {
      d.local = lookup<LocalDetails>(reg, c["local"]);
      override_params(d.local->init_data, c, "localInitData");
    }
    add_emit(net, std::move(d), out.outs[0], log, name);
  } else if (k == "collect") {
    auto d = lookup<ResultDetails>(reg, c["details"]);
    override_params(d.init_data, c, "initData");
    override_params(d.finalise_data, c, "finaliseData");
    if (c.contains("collectors")) {
      add_collect_group(net, std::vector<ResultDetails>(in.ins.size(), d), in.ins, log);
    } else {
      add_collect(net, std::move(d), in.ins[0], log, name);
    }
  } else if (k == "worker") {
    WorkerConfig w;
    w.function = lookup<WorkerFn>(reg, c["function"]);
    override_params(w.modifier, c, "modifier");
    if (c.contains("local")) w.local = lookup<LocalDetails>(reg, c["local"]);
    w.out_data = c.value("outData", true);
    add_worker(net, std::move(w), in.ins[0], out.outs[0], log, name);
  } else if (k == "spreader") {
    SpreaderConfig s{spread_policy(c.value("policy", std::string("fanAny"))), c["destinations"].get<std::size_t>()};
    add_spreader(net, s, in.ins[0], out.outs, name);
  } else if (k == "reducer") {
    ReducerConfig r{reduce_policy(c.value("policy", std::string("fanOne"))), c["sources"].get<std::size_t>(), {}};
    if (c.contains("key")) r.key = lookup<KeyFn>(reg, c["key"]);
    add_reducer(net, std::move(r), in.ins, out.outs[0], name);
  } else if (k == "combine") {
    auto cc = lookup<CombineConfig>(reg, c["details"]);
    cc.sources = c.value("input", std::string("any")) == "one" ? 1 : c["sources"].get<std::size_t>();
    add_combine(net, std::move(cc), in.ins, out.outs[0], name);
  } else if (k == "group") {
    GroupConfig g;
    g.workers = c["workers"].get<std::size_t>();
    g.function = lookup<WorkerFn>(reg, c["function"]);
    override_params(g.modifier, c, "modifier");
    if (c.contains("perWorkerModifiers"))
      for (const auto& m : c["perWorkerModifiers"]) g.per_worker_modifiers.push_back(m);
    if (c.contains("local")) g.local = lookup<LocalDetails>(reg, c["local"]);
    g.out_data = c.value("outData", true);
    g.synchronised = c.value("synchronised", false);
    add_group(net, g, in.ins, out.outs, log, name);
  } else if (k == "pipeline") {
    auto p = pipeline_of(reg, c);
    if (c.contains("collect")) {
      add_pipeline_collect(net, p, in.ins[0], lookup<ResultDetails>(reg, c["collect"]), log, name);
    } else {
      add_pipeline(net, p, in.ins[0], out.outs[0], log, name);
    }
  } else if (k == "composite") {
    auto p = pipeline_of(reg, c);
    if (c["type"] == "groupOfPipelineCollects") {
      const auto g = c["groups"].get<std::size_t>();
      auto ins = in.ins.size() == 1 ? std::vector<In<Message>>(g, in.ins[0]) : in.ins;
      add_group_of_pipeline_collects(net, p, result_list(reg, c, g), std::move(ins), log);
    } else {
      const auto w = c["workers"].get<std::size_t>();
      auto e = lookup<EmitDetails>(reg, c["emit"]);
      override_params(e.init_data, c, "initData");
      override_params(e.create_data, c, "createData");
      add_task_parallel_of_group_collects(net, std::move(e), w, p, result_list(reg, c, w), log);
    }
  } else if (k == "multicoreEngine") {
    auto e = lookup<EngineConfig>(reg, c["details"]);
    e.nodes = c["nodes"].get<std::size_t>();
    if (c.contains("errorMargin")) {
      e.error_margin = c["errorMargin"].get<double>();
      e.iterations.reset();
    }
    if (c.contains("iterations")) {
      e.iterations = c["iterations"].get<std::size_t>();
      e.error_margin.reset();
    }
    e.final_out = c.value("finalOut", true);
    net.add(name, [e = std::move(e), in = in.ins[0], out = out.outs[0]] { multicore_engine_run(e, in, out); });
  } else if (k == "stencilEngine") {
    auto s = lookup<StencilConfig>(reg, c["operation"]);
    s.nodes = c["nodes"].get<std::size_t>();
    const bool after_engine = i > 0 && spec.nodes[i - 1].kind == "stencilEngine";
    s.partition = c.value("partition", !after_engine);
    net.add(name, [s = std::move(s), in = in.ins[0], out = out.outs[0]] { stencil_engine_run(s, in, out); });
  }
}

}  // namespace

NodePorts node_ports(const NodeDescriptor& node, std::size_t index) {
  Diags diags;
  auto ports = ports_of(node, index, diags);
  if (!diags.empty()) throw SpecError(std::move(diags));
  return ports;
}

std::vector<Diagnostic> validate(const NetworkSpec& spec, const FunctionRegistry& registry) {
  Diags diags;
  const std::size_t n = spec.nodes.size();
  if (n < 2) {
    diags.push_back({Diagnostic::npos, "a network needs at least a source and a sink"});
    if (n == 0) return diags;
  }

  std::vector<std::optional<NodePorts>> ports(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = spec.nodes[i];
    auto missing = required_fields(node, i);
    if (!missing.empty()) {
      diags.insert(diags.end(), missing.begin(), missing.end());
      continue;
    }
    const std::size_t before = diags.size();
    auto p = ports_of(node, i, diags);
    check_node(node, i, registry, diags);
    if (diags.size() == before) ports[i] = p;
  }

  const bool pog_only = n == 1 && ports[0] && ports[0]->in.kind == PortKind::none && ports[0]->out.kind == PortKind::none;
  if (pog_only) diags.clear();  // a self-contained composite is a whole network

  for (std::size_t i = 0; i < n; ++i) {
    if (!ports[i]) continue;
    const NodePorts& p = *ports[i];
    if (i == 0 && p.in.kind != PortKind::none) diags.push_back({i, "the first node must be a source"});
    if (i > 0 && p.in.kind == PortKind::none) diags.push_back({i, "only the first node may be a source"});
    if (i + 1 == n && p.out.kind != PortKind::none) diags.push_back({i, "the last node must be a sink"});
    if (i + 1 < n && p.out.kind == PortKind::none) diags.push_back({i, "only the last node may be a sink"});
    if (i + 1 < n && ports[i + 1] && p.out.kind != PortKind::none && ports[i + 1]->in.kind != PortKind::none &&
        !(p.out == ports[i + 1]->in)) {
      diags.push_back({i + 1, spec.nodes[i + 1].kind + " input " + ports[i + 1]->in.str() +
                                  " does not match output " + p.out.str() + " of node " + std::to_string(i)});
    }
  }
  return diags;
}

RunnableNetwork build(const NetworkSpec& spec, const FunctionRegistry& registry, const BuildOptions& options) {
  auto diags = validate(spec, registry);
  if (!diags.empty()) throw SpecError(std::move(diags));

  Network net;
  if (options.observer) net.observe(options.observer);
  if (spec.log_file) net.enable_logging(*spec.log_file, options.echo_log);

  Link in;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    const NodePorts p = node_ports(spec.nodes[i], i);
    Link out;
    if (p.out.kind != PortKind::none) {
      out = make_link(net, p.out, replicated_out(spec.nodes[i]), replicated_in(spec.nodes[i + 1]));
    }
    wire(net, registry, spec, i, in, out);
    in = std::move(out);
  }
  return RunnableNetwork(std::move(net));
}

NetworkReport run(RunnableNetwork& net) { return net.run(); }

}  // namespace cspp
