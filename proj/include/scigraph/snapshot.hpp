#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "scigraph/graph.hpp"

namespace scigraph {

// Snapshot container: a single JSON object
//   {"format": "scigraph-snapshot", "version": 1, "frozen": bool,
//    "nodes": [{"id", "label", "properties"}, ...],
//    "relationships": [{"id", "type", "source", "target"}, ...]}
// with nodes and relationships in id order. Serialization is byte-stable:
// loading a snapshot and re-serializing it reproduces the file exactly.

inline constexpr int kSnapshotVersion = 1;

std::string snapshot_to_json(const PropertyGraph& graph);

/// Throws SnapshotFormat on malformed input, wrong magic, or a version
/// newer than this build understands.
PropertyGraph snapshot_from_json(std::string_view text);

/// File wrappers; throw IoError on filesystem failures.
void save_snapshot(const PropertyGraph& graph, const std::filesystem::path& path);
PropertyGraph load_snapshot(const std::filesystem::path& path);

}  // namespace scigraph
