#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cspp/connectors/reducer.hpp"
#include "cspp/engines/multicore.hpp"
#include "cspp/engines/stencil.hpp"
#include "cspp/logging/phase_logger.hpp"
#include "cspp/terminals/details.hpp"

namespace cspp {

enum class EntryKind { emit, result, function, local, key, combine, property, engine, stencil };

std::string_view to_string(EntryKind kind) noexcept;

using RegistryEntry = std::variant<EmitDetails, ResultDetails, WorkerFn, LocalDetails, KeyFn, CombineConfig,
                                   PropertyFn, EngineConfig, StencilConfig>;

/// Named callbacks and callback bundles that network specs refer to.
/// Names are unique across every kind of entry.
class FunctionRegistry {
 public:
  void add(std::string name, RegistryEntry entry);

  bool contains(std::string_view name) const;
  std::optional<EntryKind> kind_of(std::string_view name) const;
  std::vector<std::string> names() const;

  template <class T>
  const T* find(std::string_view name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) return nullptr;
    return std::get_if<T>(&it->second);
  }

 private:
  std::map<std::string, RegistryEntry, std::less<>> entries_;
};

}  // namespace cspp
