#include <cctype>
#include <unordered_set>

#include "scigraph/error.hpp"
#include "scigraph/query.hpp"
#include "scigraph/similarity.hpp"

namespace scigraph {

namespace {

enum class TokKind {
  End,
  Ident,
  String,
  Int,
  Float,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Colon,
  Comma,
  Dot,
  Dash,
  Lt,
  Gt,
  Le,
  Ge,
  Ne,
  Eq,
};

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  std::int64_t int_value = 0;
  double float_value = 0.0;
  int line = 1;
  int col = 1;
};

std::string describe(const Token& tok) {
  if (tok.kind == TokKind::End) return "end of input";
  return "'" + tok.text + "'";
}

std::string upper(std::string_view s) {
  std::string u(s);
  for (char& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return u;
}

bool is_keyword(const Token& tok, const char* kw) {
  return tok.kind == TokKind::Ident && upper(tok.text) == kw;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> tokens() {
    std::vector<Token> out;
    for (;;) {
      Token tok = next();
      bool end = tok.kind == TokKind::End;
      out.push_back(std::move(tok));
      if (end) return out;
    }
  }

 private:
  [[noreturn]] void fail(const std::string& message) { throw SyntaxError(line_, col_, message); }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  Token make(TokKind kind, int line, int col, std::string text) {
    Token tok;
    tok.kind = kind;
    tok.text = std::move(text);
    tok.line = line;
    tok.col = col;
    return tok;
  }

  Token next() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return make(TokKind::End, line, col, "");
    char c = advance();
    switch (c) {
      case '(': return make(TokKind::LParen, line, col, "(");
      case ')': return make(TokKind::RParen, line, col, ")");
      case '[': return make(TokKind::LBracket, line, col, "[");
      case ']': return make(TokKind::RBracket, line, col, "]");
      case ':': return make(TokKind::Colon, line, col, ":");
      case ',': return make(TokKind::Comma, line, col, ",");
      case '.': return make(TokKind::Dot, line, col, ".");
      case '-': return make(TokKind::Dash, line, col, "-");
      case '=': return make(TokKind::Eq, line, col, "=");
      case '<':
        if (peek() == '=') {
          advance();
          return make(TokKind::Le, line, col, "<=");
        }
        if (peek() == '>') {
          advance();
          return make(TokKind::Ne, line, col, "<>");
        }
        return make(TokKind::Lt, line, col, "<");
      case '>':
        if (peek() == '=') {
          advance();
          return make(TokKind::Ge, line, col, ">=");
        }
        return make(TokKind::Gt, line, col, ">");
      case '\'': {
        std::string value;
        for (;;) {
          if (pos_ >= text_.size()) {
            throw SyntaxError(line, col, "unterminated string literal");
          }
          char s = advance();
          if (s == '\'') break;
          value.push_back(s);
        }
        Token tok = make(TokKind::String, line, col, std::move(value));
        return tok;
      }
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits(1, c);
      while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(advance());
      bool is_float = false;
      if (peek() == '.' && pos_ + 1 < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        is_float = true;
        digits.push_back(advance());
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(advance());
      }
      if (peek() == 'e' || peek() == 'E') {
        std::size_t mark = pos_;
        std::string exp(1, advance());
        if (peek() == '+' || peek() == '-') exp.push_back(advance());
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          is_float = true;
          while (std::isdigit(static_cast<unsigned char>(peek()))) exp.push_back(advance());
          digits += exp;
        } else {
          // Not an exponent after all; rewind is impossible mid-lex, so reject.
          (void)mark;
          fail("malformed number literal");
        }
      }
      Token tok = make(is_float ? TokKind::Float : TokKind::Int, line, col, digits);
      try {
        if (is_float) {
          tok.float_value = std::stod(digits);
        } else {
          tok.int_value = std::stoll(digits);
        }
      } catch (const std::out_of_range&) {
        throw SyntaxError(line, col, "number literal out of range");
      }
      return tok;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident(1, c);
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        ident.push_back(advance());
      }
      return make(TokKind::Ident, line, col, std::move(ident));
    }
    throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).tokens()) {}

  QueryAst parse_query() {
    QueryAst ast;
    expect_keyword("MATCH");
    ast.nodes.push_back(parse_node_pattern());
    while (peek().kind == TokKind::Dash || peek().kind == TokKind::Lt) {
      ast.rels.push_back(parse_rel_pattern());
      ast.nodes.push_back(parse_node_pattern());
    }
    if (is_keyword(peek(), "WHERE")) {
      advance();
      ast.where = parse_expr();
    }
    expect_keyword("RETURN");
    ast.projections.push_back(parse_projection());
    while (peek().kind == TokKind::Comma) {
      advance();
      ast.projections.push_back(parse_projection());
    }
    if (peek().kind != TokKind::End) {
      fail(peek(), "expected end of query");
    }
    check_declared(ast);
    return ast;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& tok, const std::string& expected) {
    throw SyntaxError(tok.line, tok.col, expected + ", found " + describe(tok));
  }

  const Token& expect(TokKind kind, const char* what) {
    if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
    return advance();
  }

  void expect_keyword(const char* kw) {
    if (!is_keyword(peek(), kw)) fail(peek(), std::string("expected ") + kw);
    advance();
  }

  NodePattern parse_node_pattern() {
    expect(TokKind::LParen, "'('");
    const Token& name = expect(TokKind::Ident, "a variable name");
    NodePattern np;
    np.variable = name.text;
    if (peek().kind == TokKind::Colon) {
      advance();
      np.label = expect(TokKind::Ident, "a label name").text;
    } else if (node_label_from_string(np.variable)) {
      np.label = np.variable;  // "(Journal)" doubles as a label constraint
    }
    if (rel_vars_.count(np.variable)) {
      fail(name, "variable '" + np.variable + "' already names a relationship");
    }
    node_vars_.insert(np.variable);
    expect(TokKind::RParen, "')'");
    return np;
  }

  RelPattern parse_rel_pattern() {
    RelPattern rp;
    bool left = peek().kind == TokKind::Lt;
    if (left) advance();
    expect(TokKind::Dash, "'-'");
    expect(TokKind::LBracket, "'['");
    if (peek().kind == TokKind::Ident) {
      const Token& name = advance();
      if (node_vars_.count(name.text)) {
        fail(name, "variable '" + name.text + "' already names a node");
      }
      if (!rel_vars_.insert(name.text).second) {
        fail(name, "relationship variable '" + name.text + "' is already in use");
      }
      rp.variable = name.text;
    }
    if (peek().kind == TokKind::Colon) {
      advance();
      rp.type = expect(TokKind::Ident, "a relationship type").text;
    }
    expect(TokKind::RBracket, "']'");
    expect(TokKind::Dash, "'-'");
    if (left) {
      rp.direction = PatternDirection::Left;
    } else if (peek().kind == TokKind::Gt) {
      advance();
      rp.direction = PatternDirection::Right;
    } else {
      rp.direction = PatternDirection::Undirected;
    }
    return rp;
  }

  PropertyRef parse_projection() {
    const Token& var = expect(TokKind::Ident, "a variable name");
    expect(TokKind::Dot, "'.'");
    const Token& prop = expect(TokKind::Ident, "a property name");
    return PropertyRef{var.text, prop.text};
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (is_keyword(peek(), "OR")) {
      advance();
      ExprPtr rhs = parse_term();
      auto node = std::make_unique<Expr>();
      node->node = OrExpr{std::move(lhs), std::move(rhs)};
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    while (is_keyword(peek(), "AND")) {
      advance();
      ExprPtr rhs = parse_factor();
      auto node = std::make_unique<Expr>();
      node->node = AndExpr{std::move(lhs), std::move(rhs)};
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprPtr parse_factor() {
    if (is_keyword(peek(), "NOT")) {
      advance();
      auto node = std::make_unique<Expr>();
      node->node = NotExpr{parse_factor_body()};
      return node;
    }
    return parse_factor_body();
  }

  ExprPtr parse_factor_body() {
    if (peek().kind == TokKind::LParen) {
      advance();
      ExprPtr inner = parse_expr();
      expect(TokKind::RParen, "')'");
      return inner;
    }
    return parse_comparison();
  }

  ExprPtr parse_comparison() {
    Operand lhs = parse_operand();
    auto node = std::make_unique<Expr>();
    if (is_keyword(peek(), "IN")) {
      advance();
      expect(TokKind::LBracket, "'['");
      InExpr in;
      in.lhs = std::move(lhs);
      in.list.push_back(parse_literal());
      while (peek().kind == TokKind::Comma) {
        advance();
        in.list.push_back(parse_literal());
      }
      expect(TokKind::RBracket, "']'");
      node->node = std::move(in);
      return node;
    }
    Comparison op;
    switch (peek().kind) {
      case TokKind::Eq: op = Comparison::Eq; break;
      case TokKind::Ne: op = Comparison::Ne; break;
      case TokKind::Lt: op = Comparison::Lt; break;
      case TokKind::Le: op = Comparison::Le; break;
      case TokKind::Gt: op = Comparison::Gt; break;
      case TokKind::Ge: op = Comparison::Ge; break;
      default: fail(peek(), "expected a comparison operator or IN");
    }
    advance();
    node->node = CmpExpr{op, std::move(lhs), parse_operand()};
    return node;
  }

  Operand parse_operand() {
    const Token& tok = peek();
    if (tok.kind == TokKind::Ident && !is_keyword(tok, "TRUE") && !is_keyword(tok, "FALSE")) {
      return parse_projection();  // same IDENT '.' IDENT shape
    }
    return parse_literal();
  }

  PropertyValue parse_literal() {
    const Token& tok = peek();
    switch (tok.kind) {
      case TokKind::String:
        advance();
        // Literals are compared against normalized stored names.
        return PropertyValue{normalize_text(tok.text)};
      case TokKind::Int:
        advance();
        return PropertyValue{tok.int_value};
      case TokKind::Float:
        advance();
        return PropertyValue{tok.float_value};
      case TokKind::Dash: {
        advance();
        const Token& num = peek();
        if (num.kind == TokKind::Int) {
          advance();
          return PropertyValue{-num.int_value};
        }
        if (num.kind == TokKind::Float) {
          advance();
          return PropertyValue{-num.float_value};
        }
        fail(num, "expected a number after '-'");
      }
      case TokKind::Ident:
        if (is_keyword(tok, "TRUE")) {
          advance();
          return PropertyValue{true};
        }
        if (is_keyword(tok, "FALSE")) {
          advance();
          return PropertyValue{false};
        }
        [[fallthrough]];
      default: fail(tok, "expected a literal");
    }
  }

  void check_declared(const QueryAst& ast) const {
    auto check = [&](const PropertyRef& ref) {
      if (!node_vars_.count(ref.variable) && !rel_vars_.count(ref.variable)) {
        throw Error(Errc::UndeclaredVariable,
                    "variable '" + ref.variable + "' is not declared in the pattern");
      }
    };
    for (const PropertyRef& proj : ast.projections) check(proj);
    if (ast.where) check_expr(*ast.where, check);
  }

  template <typename Check>
  void check_expr(const Expr& expr, const Check& check) const {
    auto check_operand = [&](const Operand& op) {
      if (const auto* ref = std::get_if<PropertyRef>(&op)) check(*ref);
    };
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, CmpExpr>) {
            check_operand(node.lhs);
            check_operand(node.rhs);
          } else if constexpr (std::is_same_v<T, InExpr>) {
            check_operand(node.lhs);
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            check_expr(*node.inner, check);
          } else {
            check_expr(*node.lhs, check);
            check_expr(*node.rhs, check);
          }
        },
        expr.node);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::unordered_set<std::string> node_vars_;
  std::unordered_set<std::string> rel_vars_;
};

}  // namespace

QueryAst parse(std::string_view text) { return Parser(text).parse_query(); }

namespace {

void print_literal(std::string& out, const PropertyValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) {
    out.push_back('\'');
    out.append(*s);
    out.push_back('\'');
    return;
  }
  if (std::holds_alternative<double>(value)) {
    std::string text = value_to_text(value);
    // Keep float literals re-lexable as floats.
    if (text.find_first_of(".e") == std::string::npos) text += ".0";
    out.append(text);
    return;
  }
  out.append(value_to_text(value));
}

void print_operand(std::string& out, const Operand& op) {
  if (const auto* ref = std::get_if<PropertyRef>(&op)) {
    out.append(ref->variable);
    out.push_back('.');
    out.append(ref->property);
  } else {
    print_literal(out, std::get<PropertyValue>(op));
  }
}

const char* comparison_symbol(Comparison op) {
  switch (op) {
    case Comparison::Eq: return "=";
    case Comparison::Ne: return "<>";
    case Comparison::Lt: return "<";
    case Comparison::Le: return "<=";
    case Comparison::Gt: return ">";
    case Comparison::Ge: return ">=";
  }
  return "=";
}

void print_expr(std::string& out, const Expr& expr) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, CmpExpr>) {
          print_operand(out, node.lhs);
          out.push_back(' ');
          out.append(comparison_symbol(node.op));
          out.push_back(' ');
          print_operand(out, node.rhs);
        } else if constexpr (std::is_same_v<T, InExpr>) {
          print_operand(out, node.lhs);
          out.append(" IN [");
          for (std::size_t i = 0; i < node.list.size(); ++i) {
            if (i) out.append(", ");
            print_literal(out, node.list[i]);
          }
          out.push_back(']');
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          out.append("NOT ");
          bool atom = std::holds_alternative<CmpExpr>(node.inner->node) ||
                      std::holds_alternative<InExpr>(node.inner->node);
          if (!atom) out.push_back('(');
          print_expr(out, *node.inner);
          if (!atom) out.push_back(')');
        } else if constexpr (std::is_same_v<T, AndExpr>) {
          out.push_back('(');
          print_expr(out, *node.lhs);
          out.append(" AND ");
          print_expr(out, *node.rhs);
          out.push_back(')');
        } else {
          out.push_back('(');
          print_expr(out, *node.lhs);
          out.append(" OR ");
          print_expr(out, *node.rhs);
          out.push_back(')');
        }
      },
      expr.node);
}

}  // namespace

std::string to_text(const QueryAst& ast) {
  std::string out = "MATCH ";
  for (std::size_t i = 0; i < ast.nodes.size(); ++i) {
    if (i > 0) {
      const RelPattern& rp = ast.rels[i - 1];
      out.append(rp.direction == PatternDirection::Left ? "<-[" : "-[");
      if (rp.variable) out.append(*rp.variable);
      if (rp.type) {
        out.push_back(':');
        out.append(*rp.type);
      }
      out.append(rp.direction == PatternDirection::Right ? "]->" : "]-");
    }
    const NodePattern& np = ast.nodes[i];
    out.push_back('(');
    out.append(np.variable);
    if (np.label && *np.label != np.variable) {
      out.push_back(':');
      out.append(*np.label);
    }
    out.push_back(')');
  }
  if (ast.where) {
    out.append(" WHERE ");
    print_expr(out, *ast.where);
  }
  out.append(" RETURN ");
  for (std::size_t i = 0; i < ast.projections.size(); ++i) {
    if (i) out.append(", ");
    out.append(ast.projections[i].variable);
    out.push_back('.');
    out.append(ast.projections[i].property);
  }
  return out;
}

}  // namespace scigraph
