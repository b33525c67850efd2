#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <typeindex>
#include <vector>

#include <nlohmann/json.hpp>

#include "cspp/protocol/message.hpp"

namespace cspp::cluster {

using Json = nlohmann::ordered_json;

/// A payload type with no wire mapping, or a body that does not decode.
class SerialisationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Transport failure: refused or reset connection, timeout, protocol breach.
class ClusterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::uint32_t max_frame_bytes = 64u << 20;

/// Payload types allowed on the wire, each under a stable name with explicit
/// field mappings.
class TypeRegistry {
 public:
  template <class T>
  void add(std::string name, std::function<Json(const T&)> to, std::function<T(const Json&)> from) {
    Entry e;
    e.name = name;
    e.to = [to](const Payload& p) { return to(p.as<T>()); };
    e.from = [from](const Json& j) { return Payload(from(j)); };
    by_type_.insert_or_assign(std::type_index(typeid(T)), e);
    by_name_.insert_or_assign(std::move(name), std::move(e));
  }

  /// Scalars convertible by the json library directly.
  template <class T>
  void add_scalar(std::string name) {
    add<T>(std::move(name), [](const T& v) { return Json(v); }, [](const Json& j) { return j.get<T>(); });
  }

  bool contains(std::string_view name) const { return by_name_.count(std::string(name)) > 0; }
  std::vector<std::string> names() const;

  /// {"type": name, "data": fields}. Throws SerialisationError when the type is unknown.
  Json to_json(const Payload& p) const;
  Payload from_json(const std::string& name, const Json& data) const;

 private:
  struct Entry {
    std::string name;
    std::function<Json(const Payload&)> to;
    std::function<Payload(const Json&)> from;
  };
  std::map<std::type_index, Entry> by_type_;
  std::map<std::string, Entry> by_name_;
};

/// int, int64, double, bool and string.
TypeRegistry basic_types();

/// Text form used for frame bodies: insertion-ordered keys, ", " and ": "
/// separators, shortest round-trip numbers.
std::string canonical_dump(const Json& j);

/// Data -> {"type": T, "data": ...[, "tag": ...]}; Terminator -> {"type": "UT", "logs": [...]}.
std::string encode(const Message& m, const TypeRegistry& types);
Message decode(std::string_view body, const TypeRegistry& types);

/// Control bodies (manifest, fragment, ACK, ...). Throws SerialisationError
/// for text that is not a JSON object with a string "type".
Json parse_control(std::string_view body);

/// 4-byte big-endian length followed by the body.
std::string frame(std::string_view body);
std::uint32_t frame_length(const unsigned char* header) noexcept;

}  // namespace cspp::cluster
