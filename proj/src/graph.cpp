#include "scigraph/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "scigraph/error.hpp"

namespace scigraph {

namespace {

constexpr const char* kLabelNames[kNodeLabelCount] = {"Journal",   "Article", "Author",
                                                      "Institute", "Country", "Region"};
constexpr const char* kRelNames[kRelTypeCount] = {"PUBLISHED_IN", "AUTHORED",  "WORKS_FOR",
                                                  "IS_IN",        "IN_REGION", "CITES"};

void require_finite_floats(const PropertyMap& properties) {
  for (const auto& [key, value] : properties) {
    if (const double* d = std::get_if<double>(&value); d && !std::isfinite(*d)) {
      throw Error(Errc::NonFiniteFloat, "property '" + key + "' is not finite");
    }
  }
}

}  // namespace

const char* to_string(NodeLabel label) { return kLabelNames[static_cast<int>(label)]; }
const char* to_string(RelType type) { return kRelNames[static_cast<int>(type)]; }

std::optional<NodeLabel> node_label_from_string(std::string_view s) {
  for (int i = 0; i < kNodeLabelCount; ++i) {
    if (s == kLabelNames[i]) return static_cast<NodeLabel>(i);
  }
  return std::nullopt;
}

std::optional<RelType> rel_type_from_string(std::string_view s) {
  for (int i = 0; i < kRelTypeCount; ++i) {
    if (s == kRelNames[i]) return static_cast<RelType>(i);
  }
  return std::nullopt;
}

NodeLabel parse_node_label(std::string_view s) {
  if (auto label = node_label_from_string(s)) return *label;
  throw Error(Errc::InvalidLabel, "'" + std::string(s) + "' is not a node label");
}

RelType parse_rel_type(std::string_view s) {
  if (auto type = rel_type_from_string(s)) return *type;
  throw Error(Errc::InvalidRelType, "'" + std::string(s) + "' is not a relationship type");
}

int compare_values(const PropertyValue& a, const PropertyValue& b) {
  auto three_way = [](auto x, auto y) { return x < y ? -1 : (y < x ? 1 : 0); };
  if (const auto* as = std::get_if<std::string>(&a)) {
    if (const auto* bs = std::get_if<std::string>(&b)) return as->compare(*bs);
    throw Error(Errc::TypeMismatch, "cannot compare text with non-text");
  }
  if (const auto* ab = std::get_if<bool>(&a)) {
    if (const auto* bb = std::get_if<bool>(&b)) return three_way(*ab, *bb);
    throw Error(Errc::TypeMismatch, "cannot compare boolean with non-boolean");
  }
  if (std::holds_alternative<std::string>(b) || std::holds_alternative<bool>(b)) {
    throw Error(Errc::TypeMismatch, "cannot compare number with non-number");
  }
  // Numeric: int/int stays exact, anything involving a double compares as double.
  if (std::holds_alternative<std::int64_t>(a) && std::holds_alternative<std::int64_t>(b)) {
    return three_way(std::get<std::int64_t>(a), std::get<std::int64_t>(b));
  }
  auto as_double = [](const PropertyValue& v) {
    return std::holds_alternative<double>(v) ? std::get<double>(v)
                                             : static_cast<double>(std::get<std::int64_t>(v));
  };
  return three_way(as_double(a), as_double(b));
}

bool compare_with(Comparison cmp, const PropertyValue& a, const PropertyValue& b) {
  int c = compare_values(a, b);
  switch (cmp) {
    case Comparison::Eq: return c == 0;
    case Comparison::Ne: return c != 0;
    case Comparison::Lt: return c < 0;
    case Comparison::Le: return c <= 0;
    case Comparison::Gt: return c > 0;
    case Comparison::Ge: return c >= 0;
  }
  return false;
}

std::string value_to_text(const PropertyValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), std::get<double>(v));
  (void)ec;  // shortest round-trip form always fits
  return std::string(buf, end);
}

const PropertyValue* Node::property(std::string_view key) const {
  auto it = properties.find(std::string(key));
  return it == properties.end() ? nullptr : &it->second;
}

const std::string& Node::name() const {
  return std::get<std::string>(properties.at("name"));
}

bool endpoints_compatible(RelType type, NodeLabel source, NodeLabel target) {
  switch (type) {
    case RelType::PUBLISHED_IN: return source == NodeLabel::Article && target == NodeLabel::Journal;
    case RelType::AUTHORED: return source == NodeLabel::Author && target == NodeLabel::Article;
    case RelType::WORKS_FOR: return source == NodeLabel::Author && target == NodeLabel::Institute;
    case RelType::IS_IN: return source == NodeLabel::Institute && target == NodeLabel::Country;
    case RelType::IN_REGION: return source == NodeLabel::Country && target == NodeLabel::Region;
    case RelType::CITES: return source == NodeLabel::Article && target == NodeLabel::Article;
  }
  return false;
}

void PropertyGraph::require_node(NodeId id) const {
  if (id >= nodes_.size()) {
    throw Error(Errc::UnknownNode, "node " + std::to_string(id) + " does not exist");
  }
}

void PropertyGraph::require_mutable() const {
  if (frozen_) throw Error(Errc::GraphFrozen, "graph is frozen");
}

NodeId PropertyGraph::create_node(NodeLabel label, PropertyMap properties) {
  require_mutable();
  auto name_it = properties.find("name");
  if (name_it == properties.end() || !std::holds_alternative<std::string>(name_it->second)) {
    throw Error(Errc::MissingNameProperty, "every node requires a text 'name' property");
  }
  require_finite_floats(properties);
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{id, label, std::move(properties)});
  out_.emplace_back();
  in_.emplace_back();
  by_label_[static_cast<int>(label)].push_back(id);
  return id;
}

RelId PropertyGraph::create_relationship(RelType type, NodeId source, NodeId target) {
  require_mutable();
  require_node(source);
  require_node(target);
  if (type == RelType::CITES && source == target) {
    throw Error(Errc::CitesSelfLoop, "article " + std::to_string(source) + " cannot cite itself");
  }
  if (!endpoints_compatible(type, nodes_[source].label, nodes_[target].label)) {
    throw Error(Errc::IncompatibleEndpoints,
                std::string(to_string(type)) + " cannot connect " + to_string(nodes_[source].label) +
                    " to " + to_string(nodes_[target].label));
  }
  RelId id = static_cast<RelId>(rels_.size());
  rels_.push_back(Relationship{id, type, source, target});
  out_[source].push_back(id);
  in_[target].push_back(id);
  return id;
}

void PropertyGraph::set_property(NodeId node, const std::string& key, PropertyValue value) {
  require_mutable();
  require_node(node);
  if (const double* d = std::get_if<double>(&value); d && !std::isfinite(*d)) {
    throw Error(Errc::NonFiniteFloat, "property '" + key + "' is not finite");
  }
  nodes_[node].properties[key] = std::move(value);
}

const Node& PropertyGraph::node(NodeId id) const {
  require_node(id);
  return nodes_[id];
}

const Relationship& PropertyGraph::relationship(RelId id) const {
  if (id >= rels_.size()) {
    throw Error(Errc::UnknownNode, "relationship " + std::to_string(id) + " does not exist");
  }
  return rels_[id];
}

const std::vector<NodeId>& PropertyGraph::nodes_with_label(NodeLabel label) const {
  return by_label_[static_cast<int>(label)];
}

const std::vector<RelId>& PropertyGraph::outgoing(NodeId node) const {
  require_node(node);
  return out_[node];
}

const std::vector<RelId>& PropertyGraph::incoming(NodeId node) const {
  require_node(node);
  return in_[node];
}

std::vector<std::pair<RelId, NodeId>> PropertyGraph::neighbors(NodeId node,
                                                               std::optional<RelType> type,
                                                               Direction direction) const {
  require_node(node);
  std::vector<std::pair<RelId, NodeId>> result;
  auto collect = [&](const std::vector<RelId>& ids, bool outgoing_side) {
    for (RelId rid : ids) {
      const Relationship& rel = rels_[rid];
      if (type && rel.type != *type) continue;
      result.emplace_back(rid, outgoing_side ? rel.target : rel.source);
    }
  };
  if (direction == Direction::Out || direction == Direction::Both) collect(out_[node], true);
  if (direction == Direction::In || direction == Direction::Both) collect(in_[node], false);
  if (direction == Direction::Both) {
    std::sort(result.begin(), result.end());
  }
  return result;
}

std::vector<NodeId> PropertyGraph::find_nodes(NodeLabel label,
                                              const std::optional<PropertyPredicate>& predicate) const {
  const std::vector<NodeId>& candidates = by_label_[static_cast<int>(label)];
  if (!predicate) return candidates;
  std::vector<NodeId> result;
  for (NodeId id : candidates) {
    const PropertyValue* value = nodes_[id].property(predicate->key);
    if (!value) continue;
    if (compare_with(predicate->cmp, *value, predicate->value)) result.push_back(id);
  }
  return result;
}

}  // namespace scigraph
