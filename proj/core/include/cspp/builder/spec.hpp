#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cspp/protocol/params.hpp"

namespace cspp {

struct NodeDescriptor {
  NodeDescriptor() = default;
  NodeDescriptor(std::string kind_, Params config_) : kind(std::move(kind_)), config(std::move(config_)) {}

  std::string kind;
  Params config = Params::object();
  std::optional<std::string> log_phase;
  std::optional<std::string> log_property;  // registry name of a property extractor
};

struct NetworkSpec {
  std::vector<NodeDescriptor> nodes;
  std::optional<std::string> log_file;
};

/// A problem with a spec. `node` is the offending node's index, or npos for
/// the document as a whole.
struct Diagnostic {
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  std::size_t node = npos;
  std::string reason;

  std::string str() const;
  bool operator==(const Diagnostic&) const = default;
};

class SpecError : public std::runtime_error {
 public:
  explicit SpecError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// The node kinds understood by the builder.
const std::vector<std::string>& node_kinds();

/// Fields a node of the given kind must carry in its config.
std::vector<Diagnostic> required_fields(const NodeDescriptor& node, std::size_t index);

/// Parses a JSON network document. Throws SpecError for malformed JSON
/// (with line and column), unknown kinds and missing required fields.
NetworkSpec load_spec(std::string_view text);
NetworkSpec load_spec_file(const std::string& path);

Params to_json(const NetworkSpec& spec);

}  // namespace cspp
