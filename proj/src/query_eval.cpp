#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "scigraph/csv.hpp"
#include "scigraph/error.hpp"
#include "scigraph/query.hpp"

namespace scigraph {

namespace {

enum class Tri { False, Unknown, True };

Tri tri_not(Tri v) {
  if (v == Tri::True) return Tri::False;
  if (v == Tri::False) return Tri::True;
  return Tri::Unknown;
}

struct Matcher {
  const PropertyGraph& graph;
  const QueryAst& ast;
  std::vector<std::optional<NodeLabel>> labels;  // per node position
  std::vector<std::optional<RelType>> types;     // per rel position
  std::unordered_set<std::string> rel_vars;

  std::vector<NodeId> nodes;
  std::vector<RelId> rels;
  std::unordered_map<std::string, NodeId> var_node;
  std::vector<bool> used_rel;

  struct BoundRow {
    std::vector<NodeId> nodes;
    std::vector<RelId> rels;
  };
  std::vector<BoundRow> out;

  explicit Matcher(const PropertyGraph& g, const QueryAst& a)
      : graph(g), ast(a), nodes(a.nodes.size()), rels(a.rels.size()),
        used_rel(g.relationship_count(), false) {}

  void bind_node(std::size_t pos, NodeId candidate) {
    const NodePattern& np = ast.nodes[pos];
    if (labels[pos] && graph.node(candidate).label != *labels[pos]) return;
    auto it = var_node.find(np.variable);
    bool fresh = it == var_node.end();
    if (!fresh && it->second != candidate) return;
    if (fresh) var_node.emplace(np.variable, candidate);
    nodes[pos] = candidate;
    extend(pos);
    if (fresh) var_node.erase(np.variable);
  }

  void extend(std::size_t pos) {
    if (pos + 1 == ast.nodes.size()) {
      complete();
      return;
    }
    const RelPattern& rp = ast.rels[pos];
    Direction dir = rp.direction == PatternDirection::Right  ? Direction::Out
                    : rp.direction == PatternDirection::Left ? Direction::In
                                                             : Direction::Both;
    for (const auto& [rid, neighbor] : graph.neighbors(nodes[pos], types[pos], dir)) {
      if (used_rel[rid]) continue;
      used_rel[rid] = true;
      rels[pos] = rid;
      bind_node(pos + 1, neighbor);
      used_rel[rid] = false;
    }
  }

  void complete() {
    if (!ast.where || eval_expr(*ast.where) == Tri::True) {
      out.push_back(BoundRow{nodes, rels});
    }
  }

  std::optional<PropertyValue> operand_value(const Operand& op) const {
    if (const auto* literal = std::get_if<PropertyValue>(&op)) return *literal;
    const auto& ref = std::get<PropertyRef>(op);
    if (rel_vars.count(ref.variable)) return std::nullopt;  // relationships carry no properties
    auto it = var_node.find(ref.variable);
    if (it == var_node.end()) return std::nullopt;
    const PropertyValue* value = graph.node(it->second).property(ref.property);
    if (!value) return std::nullopt;
    return *value;
  }

  Tri eval_expr(const Expr& expr) const {
    return std::visit(
        [&](const auto& node) -> Tri {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, CmpExpr>) {
            auto lhs = operand_value(node.lhs);
            auto rhs = operand_value(node.rhs);
            if (!lhs || !rhs) return Tri::Unknown;
            return compare_with(node.op, *lhs, *rhs) ? Tri::True : Tri::False;
          } else if constexpr (std::is_same_v<T, InExpr>) {
            auto lhs = operand_value(node.lhs);
            if (!lhs) return Tri::Unknown;
            for (const PropertyValue& candidate : node.list) {
              if (compare_values(*lhs, candidate) == 0) return Tri::True;
            }
            return Tri::False;
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            return tri_not(eval_expr(*node.inner));
          } else if constexpr (std::is_same_v<T, AndExpr>) {
            return std::min(eval_expr(*node.lhs), eval_expr(*node.rhs));
          } else {
            return std::max(eval_expr(*node.lhs), eval_expr(*node.rhs));
          }
        },
        expr.node);
  }
};

}  // namespace

ResultTable evaluate(const PropertyGraph& graph, const QueryAst& ast) {
  ResultTable table;
  for (const PropertyRef& proj : ast.projections) {
    table.columns.push_back(proj.variable + "." + proj.property);
  }

  Matcher matcher(graph, ast);
  bool resolvable = true;
  for (const NodePattern& np : ast.nodes) {
    if (!np.label) {
      matcher.labels.emplace_back();
      continue;
    }
    auto label = node_label_from_string(*np.label);
    if (!label) {
      table.warnings.push_back("unknown label '" + *np.label + "'");
      resolvable = false;
    }
    matcher.labels.push_back(label);
  }
  for (const RelPattern& rp : ast.rels) {
    if (rp.variable) matcher.rel_vars.insert(*rp.variable);
    if (!rp.type) {
      matcher.types.emplace_back();
      continue;
    }
    auto type = rel_type_from_string(*rp.type);
    if (!type) {
      table.warnings.push_back("unknown relationship type '" + *rp.type + "'");
      resolvable = false;
    }
    matcher.types.push_back(type);
  }
  if (!resolvable) return table;

  if (matcher.labels[0]) {
    for (NodeId id : graph.nodes_with_label(*matcher.labels[0])) matcher.bind_node(0, id);
  } else {
    for (NodeId id = 0; id < graph.node_count(); ++id) matcher.bind_node(0, id);
  }

  std::sort(matcher.out.begin(), matcher.out.end(), [](const auto& a, const auto& b) {
    if (a.nodes != b.nodes) return a.nodes < b.nodes;
    return a.rels < b.rels;
  });

  // Project: variable -> bound node (first position that declares it).
  std::unordered_map<std::string, std::size_t> var_pos;
  for (std::size_t i = 0; i < ast.nodes.size(); ++i) {
    var_pos.emplace(ast.nodes[i].variable, i);
  }
  table.rows.reserve(matcher.out.size());
  for (const auto& bound : matcher.out) {
    std::vector<std::optional<PropertyValue>> row;
    row.reserve(ast.projections.size());
    for (const PropertyRef& proj : ast.projections) {
      auto it = var_pos.find(proj.variable);
      if (it == var_pos.end()) {
        row.emplace_back(std::nullopt);  // relationship variable: no properties
        continue;
      }
      const PropertyValue* value = graph.node(bound.nodes[it->second]).property(proj.property);
      if (value) {
        row.emplace_back(*value);
      } else {
        row.emplace_back(std::nullopt);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

ResultTable run(const PropertyGraph& graph, std::string_view text) {
  return evaluate(graph, parse(text));
}

std::string result_to_csv(const ResultTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out.push_back(',');
    out.append(csv_field(table.columns[i]));
  }
  out.push_back('\n');
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      if (row[i]) out.append(csv_field(value_to_text(*row[i])));
    }
    out.push_back('\n');
  }
  return out;
}

std::string result_to_json(const ResultTable& table) {
  nlohmann::json j;
  j["columns"] = table.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : row) {
      if (!cell) {
        cells.push_back(nullptr);
      } else {
        std::visit([&](const auto& v) { cells.push_back(v); }, *cell);
      }
    }
    rows.push_back(std::move(cells));
  }
  j["rows"] = std::move(rows);
  return j.dump();
}

}  // namespace scigraph
