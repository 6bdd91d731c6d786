#include "scigraph/snapshot.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scigraph/error.hpp"

namespace scigraph {

namespace {

using nlohmann::json;

json properties_to_json(const PropertyMap& properties) {
  json obj = json::object();
  for (const auto& [key, value] : properties) {
    std::visit([&, k = key](const auto& v) { obj[k] = v; }, value);
  }
  return obj;
}

PropertyValue property_from_json(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>();
  if (value.is_number_float()) return value.get<double>();
  if (value.is_number_integer() || value.is_number_unsigned()) return value.get<std::int64_t>();
  throw Error(Errc::SnapshotFormat, "unsupported property value type");
}

}  // namespace

std::string snapshot_to_json(const PropertyGraph& graph) {
  json root;
  root["format"] = "scigraph-snapshot";
  root["version"] = kSnapshotVersion;
  root["frozen"] = graph.frozen();
  json nodes = json::array();
  for (const Node& node : graph.nodes()) {
    json n;
    n["id"] = node.id;
    n["label"] = to_string(node.label);
    n["properties"] = properties_to_json(node.properties);
    nodes.push_back(std::move(n));
  }
  root["nodes"] = std::move(nodes);
  json rels = json::array();
  for (const Relationship& rel : graph.relationships()) {
    json r;
    r["id"] = rel.id;
    r["type"] = to_string(rel.type);
    r["source"] = rel.source;
    r["target"] = rel.target;
    rels.push_back(std::move(r));
  }
  root["relationships"] = std::move(rels);
  return root.dump();
}

PropertyGraph snapshot_from_json(std::string_view text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded() || !root.is_object()) {
    throw Error(Errc::SnapshotFormat, "snapshot is not a JSON object");
  }
  if (root.value("format", std::string()) != "scigraph-snapshot") {
    throw Error(Errc::SnapshotFormat, "missing snapshot magic");
  }
  int version = root.value("version", 0);
  if (version <= 0 || version > kSnapshotVersion) {
    throw Error(Errc::SnapshotFormat, "unsupported snapshot version " + std::to_string(version));
  }
  PropertyGraph graph;
  try {
    for (const json& n : root.at("nodes")) {
      NodeLabel label = parse_node_label(n.at("label").get<std::string>());
      PropertyMap properties;
      for (const auto& [key, value] : n.at("properties").items()) {
        properties.emplace(key, property_from_json(value));
      }
      NodeId id = graph.create_node(label, std::move(properties));
      if (id != n.at("id").get<NodeId>()) {
        throw Error(Errc::SnapshotFormat, "node ids are not dense and sequential");
      }
    }
    for (const json& r : root.at("relationships")) {
      RelType type = parse_rel_type(r.at("type").get<std::string>());
      RelId id = graph.create_relationship(type, r.at("source").get<NodeId>(),
                                           r.at("target").get<NodeId>());
      if (id != r.at("id").get<RelId>()) {
        throw Error(Errc::SnapshotFormat, "relationship ids are not dense and sequential");
      }
    }
  } catch (const Error& e) {
    if (e.code() == Errc::SnapshotFormat) throw;
    throw Error(Errc::SnapshotFormat, e.what());
  } catch (const json::exception& e) {
    throw Error(Errc::SnapshotFormat, e.what());
  }
  if (root.value("frozen", true)) graph.freeze();
  return graph;
}

void save_snapshot(const PropertyGraph& graph, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open '" + path.string() + "' for writing");
  std::string payload = snapshot_to_json(graph);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  out.put('\n');
  if (!out) throw Error(Errc::IoError, "failed writing '" + path.string() + "'");
}

PropertyGraph load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoError, "failed reading '" + path.string() + "'");
  return snapshot_from_json(buffer.str());
}

}  // namespace scigraph
