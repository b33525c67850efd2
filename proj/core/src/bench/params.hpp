#pragma once

#include <optional>

#include "cspp/protocol/params.hpp"

namespace cspp::bench::detail {

// Demo callbacks return these for malformed parameter lists.
inline constexpr int bad_params = -2;
inline constexpr int io_failure = -3;

template <class T>
std::optional<T> param(const Params& p, std::size_t i) {
  if (!p.is_array() || p.size() <= i) return std::nullopt;
  try {
    return p[i].get<T>();
  } catch (const Params::exception&) {
    return std::nullopt;
  }
}

}  // namespace cspp::bench::detail
