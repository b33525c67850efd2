#include "cspp/builder/spec.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cspp {

std::string Diagnostic::str() const {
  if (node == npos) return reason;
  return "node " + std::to_string(node) + ": " + reason;
}

namespace {

std::string join(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += "; ";
    out += d.str();
  }
  return out;
}

/// Line and column (both from 1) of a byte offset.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::vector<std::string> required_for(const NodeDescriptor& node) {
  const auto& k = node.kind;
  if (k == "emit") return {"details"};
  if (k == "emitWithLocal") return {"details", "local"};
  if (k == "collect") return {"details"};
  if (k == "worker") return {"function"};
  if (k == "spreader") return {"policy", "destinations"};
  if (k == "reducer") return {"policy", "sources"};
  if (k == "combine") return {"details", "sources"};
  if (k == "group") return {"workers", "function"};
  if (k == "pipeline") return {"stages", "stageOps"};
  if (k == "multicoreEngine") return {"details", "nodes"};
  if (k == "stencilEngine") return {"operation", "nodes"};
  if (k == "composite") {
    const auto type = node.config.value("type", std::string());
    if (type == "groupOfPipelineCollects") return {"type", "groups", "stages", "stageOps", "results"};
    if (type == "taskParallelOfGroupCollects") return {"type", "emit", "workers", "stages", "stageOps", "results"};
    return {"type"};
  }
  return {};
}

}  // namespace

SpecError::SpecError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

const std::vector<std::string>& node_kinds() {
  static const std::vector<std::string> kinds = {
      "emit",  "emitWithLocal", "collect",   "worker",          "spreader",     "reducer",
      "combine", "group",       "pipeline", "composite", "multicoreEngine", "stencilEngine"};
  return kinds;
}

std::vector<Diagnostic> required_fields(const NodeDescriptor& node, std::size_t index) {
  std::vector<Diagnostic> out;
  for (const auto& field : required_for(node)) {
    if (!node.config.is_object() || !node.config.contains(field))
      out.push_back({index, node.kind + " is missing required field '" + field + "'"});
  }
  return out;
}

NetworkSpec load_spec(std::string_view text) {
  Params doc;
  try {
    doc = Params::parse(text.begin(), text.end());
  } catch (const Params::parse_error& e) {
    // byte is one past the offending character
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw SpecError({{Diagnostic::npos, "parse error at line " + std::to_string(line) + ", column " +
                                            std::to_string(column)}});
  }
  if (!doc.is_object()) throw SpecError({{Diagnostic::npos, "spec must be a JSON object"}});
  if (!doc.contains("nodes") || !doc["nodes"].is_array())
    throw SpecError({{Diagnostic::npos, "spec is missing the 'nodes' list"}});

  NetworkSpec spec;
  std::vector<Diagnostic> problems;
  if (doc.contains("logFile")) {
    if (doc["logFile"].is_string()) {
      spec.log_file = doc["logFile"].get<std::string>();
    } else {
      problems.push_back({Diagnostic::npos, "'logFile' must be a string"});
    }
  }

  const auto& kinds = node_kinds();
  for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
    const Params& n = doc["nodes"][i];
    if (!n.is_object() || !n.contains("kind") || !n["kind"].is_string()) {
      problems.push_back({i, "node needs a string 'kind'"});
      continue;
    }
    NodeDescriptor node;
    node.kind = n["kind"].get<std::string>();
    if (std::find(kinds.begin(), kinds.end(), node.kind) == kinds.end()) {
      problems.push_back({i, "unknown node kind '" + node.kind + "'"});
      continue;
    }
    if (n.contains("config")) node.config = n["config"];
    if (!node.config.is_object()) {
      problems.push_back({i, "'config' must be an object"});
      continue;
    }
    if (n.contains("log")) {
      const Params& log = n["log"];
      if (!log.is_object() || !log.contains("phase") || !log["phase"].is_string()) {
        problems.push_back({i, "'log' needs a string 'phase'"});
      } else {
        node.log_phase = log["phase"].get<std::string>();
        if (log.contains("property")) node.log_property = log["property"].get<std::string>();
      }
    }
    auto missing = required_fields(node, i);
    problems.insert(problems.end(), missing.begin(), missing.end());
    spec.nodes.push_back(std::move(node));
  }
  if (!problems.empty()) throw SpecError(std::move(problems));
  return spec;
}

NetworkSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError({{Diagnostic::npos, "cannot read spec file " + path}});
  std::stringstream ss;
  ss << in.rdbuf();
  return load_spec(ss.str());
}

Params to_json(const NetworkSpec& spec) {
  Params doc = Params::object();
  doc["nodes"] = Params::array();
  for (const auto& n : spec.nodes) {
    Params node = {{"kind", n.kind}, {"config", n.config}};
    if (n.log_phase) {
      node["log"] = {{"phase", *n.log_phase}};
      if (n.log_property) node["log"]["property"] = *n.log_property;
    }
    doc["nodes"].push_back(std::move(node));
  }
  if (spec.log_file) doc["logFile"] = *spec.log_file;
  return doc;
}

}  // namespace cspp
