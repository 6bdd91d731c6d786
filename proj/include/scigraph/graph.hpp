#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace scigraph {

/// Dense ids, assigned sequentially from 0, never reused.
using NodeId = std::uint32_t;
using RelId = std::uint32_t;

enum class NodeLabel : std::uint8_t { Journal, Article, Author, Institute, Country, Region };
inline constexpr int kNodeLabelCount = 6;

enum class RelType : std::uint8_t { PUBLISHED_IN, AUTHORED, WORKS_FOR, IS_IN, IN_REGION, CITES };
inline constexpr int kRelTypeCount = 6;

const char* to_string(NodeLabel label);
const char* to_string(RelType type);
std::optional<NodeLabel> node_label_from_string(std::string_view s);
std::optional<RelType> rel_type_from_string(std::string_view s);
/// Throwing variants for text boundaries (CLI flags, snapshots).
NodeLabel parse_node_label(std::string_view s);  // InvalidLabel
RelType parse_rel_type(std::string_view s);      // InvalidRelType

/// Scalar property value. Stored doubles are always finite.
using PropertyValue = std::variant<std::string, std::int64_t, double, bool>;
using PropertyMap = std::map<std::string, PropertyValue>;

enum class Comparison { Eq, Ne, Lt, Le, Gt, Ge };

/// Typed three-way comparison: text/text, bool/bool, and numeric
/// (int and float interoperate). Anything else throws TypeMismatch.
/// Returns <0, 0, or >0.
int compare_values(const PropertyValue& a, const PropertyValue& b);

/// Evaluates `a cmp b` via compare_values.
bool compare_with(Comparison cmp, const PropertyValue& a, const PropertyValue& b);

/// Canonical text form (used by chart grouping and CSV cells).
std::string value_to_text(const PropertyValue& v);

struct PropertyPredicate {
  std::string key;
  Comparison cmp;
  PropertyValue value;
};

struct Node {
  NodeId id;
  NodeLabel label;
  PropertyMap properties;

  /// Pointer to the value, or nullptr when the key is absent.
  const PropertyValue* property(std::string_view key) const;
  /// The mandatory "name" property.
  const std::string& name() const;
};

struct Relationship {
  RelId id;
  RelType type;
  NodeId source;
  NodeId target;
};

enum class Direction { Out, In, Both };

/// True iff the schema admits an edge of this type between these labels:
/// PUBLISHED_IN Article->Journal, AUTHORED Author->Article,
/// WORKS_FOR Author->Institute, IS_IN Institute->Country,
/// IN_REGION Country->Region, CITES Article->Article.
bool endpoints_compatible(RelType type, NodeLabel source, NodeLabel target);

/// Embedded in-memory property graph.
///
/// Two-phase lifecycle: a single-writer build phase, then freeze(); once
/// frozen the graph is immutable and safe to share across readers. Mutation
/// after freeze throws GraphFrozen. No deletion.
class PropertyGraph {
 public:
  PropertyGraph() = default;

  PropertyGraph(const PropertyGraph&) = delete;
  PropertyGraph& operator=(const PropertyGraph&) = delete;
  PropertyGraph(PropertyGraph&&) = default;
  PropertyGraph& operator=(PropertyGraph&&) = default;

  /// Requires a "name" property and finite floats. Ids strictly increase.
  NodeId create_node(NodeLabel label, PropertyMap properties);

  /// Endpoints must exist and satisfy the schema; CITES forbids self-loops.
  RelId create_relationship(RelType type, NodeId source, NodeId target);

  /// Inserts or overwrites one property (build phase only).
  void set_property(NodeId node, const std::string& key, PropertyValue value);

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t relationship_count() const { return rels_.size(); }

  const Node& node(NodeId id) const;                // UnknownNode
  const Relationship& relationship(RelId id) const; // UnknownNode

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Relationship>& relationships() const { return rels_; }

  /// Node ids carrying this label, ascending.
  const std::vector<NodeId>& nodes_with_label(NodeLabel label) const;

  /// Outgoing / incoming relationship ids of a node, ascending.
  const std::vector<RelId>& outgoing(NodeId node) const;  // UnknownNode
  const std::vector<RelId>& incoming(NodeId node) const;  // UnknownNode

  /// Adjacency entries matching the filter, as (relationship, neighbor)
  /// pairs in relationship-id order.
  std::vector<std::pair<RelId, NodeId>> neighbors(NodeId node, std::optional<RelType> type,
                                                  Direction direction) const;

  /// Label scan with an optional typed predicate; ascending NodeId order.
  /// Nodes missing the predicate key are excluded.
  std::vector<NodeId> find_nodes(NodeLabel label,
                                 const std::optional<PropertyPredicate>& predicate = {}) const;

 private:
  void require_node(NodeId id) const;
  void require_mutable() const;

  std::vector<Node> nodes_;
  std::vector<Relationship> rels_;
  std::vector<std::vector<RelId>> out_;
  std::vector<std::vector<RelId>> in_;
  std::array<std::vector<NodeId>, kNodeLabelCount> by_label_;
  bool frozen_ = false;
};

}  // namespace scigraph
