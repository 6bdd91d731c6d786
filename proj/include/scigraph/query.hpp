#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scigraph/graph.hpp"

namespace scigraph {

// Pattern query language: MATCH <path> [WHERE <expr>] RETURN <projections>.
//
//   query    := "MATCH" pattern ["WHERE" expr] "RETURN" proj {"," proj}
//   pattern  := nodepat { relpat nodepat }
//   nodepat  := "(" IDENT [":" IDENT] ")"
//   relpat   := "-" "[" [IDENT] [":" IDENT] "]" "-" [">"]
//             | "<-" "[" [IDENT] [":" IDENT] "]" "-"
//   expr     := term {"OR" term}
//   term     := factor {"AND" factor}
//   factor   := ["NOT"] ( "(" expr ")" | cmp )
//   cmp      := operand (("="|"<>"|"<"|"<="|">"|">=") operand
//             | "IN" "[" literal {"," literal} "]")
//   operand  := IDENT "." IDENT | literal
//   proj     := IDENT "." IDENT
//   literal  := STRING | INT | FLOAT | "true" | "false"
//
// Keywords are case-insensitive, variables case-sensitive. String literals
// are single-quoted and pass through normalize_text, so they compare
// against the normalized names the ingest pipeline stores. A bare node
// variable that equals a label name — "(Journal)" — doubles as a label
// constraint on that variable.

enum class PatternDirection { Right, Left, Undirected };

struct NodePattern {
  std::string variable;
  std::optional<std::string> label;
};

struct RelPattern {
  std::optional<std::string> variable;
  std::optional<std::string> type;
  PatternDirection direction = PatternDirection::Undirected;
};

struct PropertyRef {
  std::string variable;
  std::string property;
};

using Operand = std::variant<PropertyRef, PropertyValue>;

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct CmpExpr {
  Comparison op;
  Operand lhs;
  Operand rhs;
};

struct InExpr {
  Operand lhs;
  std::vector<PropertyValue> list;
};

struct NotExpr {
  ExprPtr inner;
};

struct AndExpr {
  ExprPtr lhs, rhs;
};

struct OrExpr {
  ExprPtr lhs, rhs;
};

struct Expr {
  std::variant<CmpExpr, InExpr, NotExpr, AndExpr, OrExpr> node;
};

struct QueryAst {
  std::vector<NodePattern> nodes;  // one more than rels; alternates with rels
  std::vector<RelPattern> rels;
  ExprPtr where;  // may be null
  std::vector<PropertyRef> projections;
};

/// Parses a query. Throws SyntaxError with a 1-based position, or
/// UndeclaredVariable when WHERE/RETURN references a variable missing from
/// the pattern.
QueryAst parse(std::string_view text);

/// Canonical text form; parsing it back yields a structurally equal AST.
std::string to_text(const QueryAst& ast);

/// Evaluation result. Row cells are null when the projected property is
/// absent. An unknown label or relationship type in the pattern produces a
/// warning and an empty table rather than an error.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<PropertyValue>>> rows;
  std::vector<std::string> warnings;
};

/// Enumerates all pattern bindings over the frozen graph. Relationships
/// within one match are pairwise distinct; a repeated node variable must
/// bind the same node everywhere. Undirected relationship patterns match
/// either orientation. WHERE uses three-valued logic: a comparison against
/// a missing property is unknown and never admits the row. Rows are ordered
/// lexicographically by the bound node ids along the path (relationship ids
/// break ties between parallel edges).
ResultTable evaluate(const PropertyGraph& graph, const QueryAst& ast);

/// parse + evaluate.
ResultTable run(const PropertyGraph& graph, std::string_view text);

/// CSV serialization: header row of column names, null cells empty.
std::string result_to_csv(const ResultTable& table);

/// JSON serialization: {"columns": [...], "rows": [[...], ...]}.
std::string result_to_json(const ResultTable& table);

}  // namespace scigraph
