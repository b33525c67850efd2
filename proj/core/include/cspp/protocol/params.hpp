#pragma once

#include <nlohmann/json.hpp>

namespace cspp {

/// Heterogeneous parameter list handed to user callbacks (a JSON array in
/// practice, so it can come straight from a network spec document).
using Params = nlohmann::json;

}  // namespace cspp
