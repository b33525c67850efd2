#include "cspp/cluster/wire.hpp"

namespace cspp::cluster {

std::vector<std::string> TypeRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, entry] : by_name_) out.push_back(name);
  return out;
}

Json TypeRegistry::to_json(const Payload& p) const {
  auto it = by_type_.find(p.type());
  if (it == by_type_.end()) {
    throw SerialisationError(std::string("payload type not registered for the wire: ") + p.type().name());
  }
  Json j;
  j["type"] = it->second.name;
  j["data"] = it->second.to(p);
  return j;
}

Payload TypeRegistry::from_json(const std::string& name, const Json& data) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw SerialisationError("unknown wire type '" + name + "'");
  try {
    return it->second.from(data);
  } catch (const nlohmann::json::exception& e) {
    throw SerialisationError("bad '" + name + "' fields: " + e.what());
  }
}

TypeRegistry basic_types() {
  TypeRegistry t;
  t.add_scalar<int>("int");
  t.add_scalar<std::int64_t>("int64");
  t.add_scalar<double>("double");
  t.add_scalar<bool>("bool");
  t.add_scalar<std::string>("string");
  return t;
}

namespace {

void dump_into(const Json& j, std::string& out) {
  if (j.is_object()) {
    out += '{';
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ", ";
      first = false;
      out += Json(k).dump();
      out += ": ";
      dump_into(v, out);
    }
    out += '}';
  } else if (j.is_array()) {
    out += '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      dump_into(j[i], out);
    }
    out += ']';
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

std::string encode(const Message& m, const TypeRegistry& types) {
  if (const auto* d = std::get_if<Data>(&m)) {
    Json j = types.to_json(d->payload);
    if (!d->tag.empty()) j["tag"] = d->tag;
    return canonical_dump(j);
  }
  Json j;
  j["type"] = "UT";
  j["logs"] = Json::array();
  for (const auto& l : std::get<Terminator>(m).logs) {
    Json e;
    e["process"] = l.process;
    e["records"] = l.records;
    j["logs"].push_back(std::move(e));
  }
  return canonical_dump(j);
}

Json parse_control(std::string_view body) {
  Json j;
  try {
    j = Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw SerialisationError(std::string("frame body is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw SerialisationError("frame body lacks a string \"type\"");
  }
  return j;
}

Message decode(std::string_view body, const TypeRegistry& types) {
  const Json j = parse_control(body);
  const auto type = j["type"].get<std::string>();
  if (type == "UT") {
    Terminator t;
    try {
      for (const auto& e : j.at("logs")) {
        t.logs.push_back({e.at("process").get<std::string>(), e.at("records").get<std::uint64_t>()});
      }
    } catch (const nlohmann::json::exception& e) {
      throw SerialisationError(std::string("bad terminator: ") + e.what());
    }
    return t;
  }
  if (!j.contains("data")) throw SerialisationError("data frame without \"data\"");
  Data d{types.from_json(type, j["data"]), ""};
  if (j.contains("tag")) d.tag = j["tag"].get<std::string>();
  return d;
}

std::string frame(std::string_view body) {
  if (body.size() > max_frame_bytes) throw SerialisationError("frame body too large");
  const auto n = static_cast<std::uint32_t>(body.size());
  std::string out;
  out.reserve(4 + body.size());
  out.push_back(static_cast<char>((n >> 24) & 0xFF));
  out.push_back(static_cast<char>((n >> 16) & 0xFF));
  out.push_back(static_cast<char>((n >> 8) & 0xFF));
  out.push_back(static_cast<char>(n & 0xFF));
  out.append(body);
  return out;
}

std::uint32_t frame_length(const unsigned char* h) noexcept {
  return (std::uint32_t{h[0]} << 24) | (std::uint32_t{h[1]} << 16) | (std::uint32_t{h[2]} << 8) |
         std::uint32_t{h[3]};
}

}  // namespace cspp::cluster
