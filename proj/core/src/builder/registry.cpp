#include "cspp/builder/registry.hpp"

#include <stdexcept>

namespace cspp {

std::string_view to_string(EntryKind kind) noexcept {
  switch (kind) {
    case EntryKind::emit: return "emit details";
    case EntryKind::result: return "result details";
    case EntryKind::function: return "worker function";
    case EntryKind::local: return "local details";
    case EntryKind::key: return "key function";
    case EntryKind::combine: return "combine details";
    case EntryKind::property: return "property extractor";
    case EntryKind::engine: return "engine details";
    case EntryKind::stencil: return "stencil operation";
  }
  return "?";
}

void FunctionRegistry::add(std::string name, RegistryEntry entry) {
  if (name.empty()) throw std::invalid_argument("registry names must be non-empty");
  auto [it, inserted] = entries_.emplace(std::move(name), std::move(entry));
  if (!inserted) throw std::invalid_argument("duplicate registry name '" + it->first + "'");
}

bool FunctionRegistry::contains(std::string_view name) const { return entries_.find(name) != entries_.end(); }

std::optional<EntryKind> FunctionRegistry::kind_of(std::string_view name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return static_cast<EntryKind>(it->second.index());
}

std::vector<std::string> FunctionRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, entry] : entries_) out.push_back(name);
  return out;
}

}  // namespace cspp
