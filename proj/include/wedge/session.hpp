#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wedge/element.hpp"
#include "wedge/field.hpp"
#include "wedge/ring.hpp"

namespace wedge {

// ---------------------------------------------------------------------------
// Session files: a tiny declarative language for rings, ideals and elements.
//
//   ring exterior QQ [e1,e2,f1,f2];
//   ideal I = (e1*f1 + e2*f2);
//   element h = e1*f1 - 2*e2*f2;
//   # comments run to end of line
//
// Modes: exterior | squarezero.  Fields: QQ | F<p> (p prime, < 2^32).
// Expressions: integer literals, variable names, unary +/-, infix + - * /,
// parentheses.  The right operand of '/' must evaluate to a nonzero scalar.
// Statements end with ';'.
// ---------------------------------------------------------------------------

struct SrcPos {
  int line = 1;
  int col = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SrcPos pos, const std::string& msg)
      : std::runtime_error("line " + std::to_string(pos.line) + ", column " +
                           std::to_string(pos.col) + ": " + msg),
        pos_(pos) {}
  SrcPos pos() const { return pos_; }

 private:
  SrcPos pos_;
};

namespace detail {

enum class TokKind { Ident, Int, Punct, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  SrcPos pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_space();
    tok_.pos = pos_;
    if (i_ >= src_.size()) {
      tok_ = Token{TokKind::End, "", pos_};
      return;
    }
    char c = src_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) ||
              src_[j] == '_'))
        ++j;
      tok_ = Token{TokKind::Ident, src_.substr(i_, j - i_), pos_};
      bump(j - i_);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[j])))
        ++j;
      tok_ = Token{TokKind::Int, src_.substr(i_, j - i_), pos_};
      bump(j - i_);
      return;
    }
    const std::string punct = ";,=()[]+-*/";
    if (punct.find(c) != std::string::npos) {
      tok_ = Token{TokKind::Punct, std::string(1, c), pos_};
      bump(1);
      return;
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  void skip_space() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') bump(1);
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump(1);
      } else {
        break;
      }
    }
  }

  void bump(size_t k) {
    for (size_t t = 0; t < k; ++t) {
      if (src_[i_] == '\n') {
        ++pos_.line;
        pos_.col = 1;
      } else {
        ++pos_.col;
      }
      ++i_;
    }
  }

  const std::string& src_;
  size_t i_ = 0;
  SrcPos pos_;
  Token tok_;
};

}  // namespace detail

struct Expr {
  enum class Kind { Int, Var, Neg, Add, Sub, Mul, Div };
  Kind kind = Kind::Int;
  std::string text;  // digits for Int, name for Var
  std::vector<Expr> kids;
  SrcPos pos;
};

inline bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.text != b.text ||
      a.kids.size() != b.kids.size())
    return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!expr_equal(a.kids[i], b.kids[i])) return false;
  return true;
}

struct RingDecl {
  std::string mode;   // "exterior" | "squarezero"
  std::string field;  // "QQ" | "F<p>"
  std::vector<std::string> names;
  SrcPos pos;
};

struct IdealDecl {
  std::string name;
  std::vector<Expr> gens;
  SrcPos pos;
};

struct ElemDecl {
  std::string name;
  Expr value;
  SrcPos pos;
};

struct SessionAst {
  RingDecl ring;
  std::vector<std::variant<IdealDecl, ElemDecl>> decls;
};

namespace detail {

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  SessionAst parse() {
    SessionAst ast;
    Token first = expect_ident();
    if (first.text != "ring")
      throw ParseError(first.pos, "session must begin with a ring declaration");
    ast.ring = parse_ring(first.pos);
    while (lex_.peek().kind != TokKind::End) {
      Token head = expect_ident();
      if (head.text == "ring")
        throw ParseError(head.pos, "duplicate ring declaration");
      if (head.text == "ideal")
        ast.decls.push_back(parse_ideal(head.pos));
      else if (head.text == "element")
        ast.decls.push_back(parse_element(head.pos));
      else
        throw ParseError(head.pos, "expected 'ideal' or 'element', got '" +
                                       head.text + "'");
    }
    return ast;
  }

  // public so the CLI can parse loose expressions (e.g. --pool entries)
  Expr parse_expr_all() {
    Expr e = parse_expr();
    const Token& t = lex_.peek();
    if (t.kind != TokKind::End)
      throw ParseError(t.pos, "unexpected trailing input '" + t.text + "'");
    return e;
  }

 private:
  RingDecl parse_ring(SrcPos pos) {
    RingDecl r;
    r.pos = pos;
    Token mode = expect_ident();
    if (mode.text != "exterior" && mode.text != "squarezero")
      throw ParseError(mode.pos,
                       "ring mode must be 'exterior' or 'squarezero'");
    r.mode = mode.text;
    Token fld = expect_ident();
    if (fld.text != "QQ") {
      bool ok = fld.text.size() >= 2 && fld.text[0] == 'F';
      for (size_t i = 1; ok && i < fld.text.size(); ++i)
        ok = std::isdigit(static_cast<unsigned char>(fld.text[i])) != 0;
      if (!ok)
        throw ParseError(fld.pos, "field must be 'QQ' or 'F<p>', got '" +
                                      fld.text + "'");
    }
    r.field = fld.text;
    expect_punct("[");
    for (;;) {
      Token name = expect_ident();
      r.names.push_back(name.text);
      Token sep = expect_any_punct();
      if (sep.text == "]") break;
      if (sep.text != ",")
        throw ParseError(sep.pos, "expected ',' or ']' in variable list");
    }
    expect_punct(";");
    return r;
  }

  IdealDecl parse_ideal(SrcPos pos) {
    IdealDecl d;
    d.pos = pos;
    d.name = expect_ident().text;
    expect_punct("=");
    expect_punct("(");
    for (;;) {
      d.gens.push_back(parse_expr());
      Token sep = expect_any_punct();
      if (sep.text == ")") break;
      if (sep.text != ",")
        throw ParseError(sep.pos, "expected ',' or ')' in generator list");
    }
    expect_punct(";");
    return d;
  }

  ElemDecl parse_element(SrcPos pos) {
    ElemDecl d;
    d.pos = pos;
    d.name = expect_ident().text;
    expect_punct("=");
    d.value = parse_expr();
    expect_punct(";");
    return d;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (is_punct("+") || is_punct("-")) {
      Token op = lex_.take();
      Expr rhs = parse_term();
      Expr node;
      node.kind = op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
      node.pos = op.pos;
      node.kids = {std::move(lhs), std::move(rhs)};
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    while (is_punct("*") || is_punct("/")) {
      Token op = lex_.take();
      Expr rhs = parse_factor();
      Expr node;
      node.kind = op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div;
      node.pos = op.pos;
      node.kids = {std::move(lhs), std::move(rhs)};
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_factor() {
    const Token& t = lex_.peek();
    if (t.kind == TokKind::Int) {
      Token tok = lex_.take();
      Expr e;
      e.kind = Expr::Kind::Int;
      e.text = tok.text;
      e.pos = tok.pos;
      return e;
    }
    if (t.kind == TokKind::Ident) {
      Token tok = lex_.take();
      Expr e;
      e.kind = Expr::Kind::Var;
      e.text = tok.text;
      e.pos = tok.pos;
      return e;
    }
    if (t.kind == TokKind::Punct && t.text == "(") {
      lex_.take();
      Expr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (t.kind == TokKind::Punct && (t.text == "-" || t.text == "+")) {
      Token op = lex_.take();
      Expr inner = parse_factor();
      if (op.text == "+") return inner;
      Expr e;
      e.kind = Expr::Kind::Neg;
      e.pos = op.pos;
      e.kids = {std::move(inner)};
      return e;
    }
    throw ParseError(t.pos, "expected a number, name, or '('");
  }

  bool is_punct(const std::string& s) {
    return lex_.peek().kind == TokKind::Punct && lex_.peek().text == s;
  }
  Token expect_ident() {
    Token t = lex_.take();
    if (t.kind != TokKind::Ident)
      throw ParseError(t.pos, "expected an identifier");
    return t;
  }
  Token expect_any_punct() {
    Token t = lex_.take();
    if (t.kind != TokKind::Punct)
      throw ParseError(t.pos, "expected punctuation");
    return t;
  }
  void expect_punct(const std::string& s) {
    Token t = lex_.take();
    if (t.kind != TokKind::Punct || t.text != s)
      throw ParseError(t.pos, "expected '" + s + "'");
  }

  Lexer lex_;
};

}  // namespace detail

inline SessionAst parse_session(const std::string& text) {
  return detail::Parser(text).parse();
}

inline Expr parse_expression(const std::string& text) {
  return detail::Parser(text).parse_expr_all();
}

// --- canonical printing ----------------------------------------------------

namespace detail {

// precedence: additive 1, multiplicative 2, atoms 3
inline int expr_prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Neg:
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    default:
      return 3;
  }
}

inline void print_expr_to(const Expr& e, std::string& out, int parent_prec) {
  int prec = expr_prec(e);
  bool paren = prec < parent_prec;
  if (paren) out += '(';
  switch (e.kind) {
    case Expr::Kind::Int:
    case Expr::Kind::Var:
      out += e.text;
      break;
    case Expr::Kind::Neg:
      out += '-';
      print_expr_to(e.kids[0], out, 3);
      break;
    case Expr::Kind::Add:
      print_expr_to(e.kids[0], out, 1);
      out += " + ";
      print_expr_to(e.kids[1], out, 2);
      break;
    case Expr::Kind::Sub:
      print_expr_to(e.kids[0], out, 1);
      out += " - ";
      print_expr_to(e.kids[1], out, 2);
      break;
    case Expr::Kind::Mul:
      print_expr_to(e.kids[0], out, 2);
      out += '*';
      print_expr_to(e.kids[1], out, 3);
      break;
    case Expr::Kind::Div:
      print_expr_to(e.kids[0], out, 2);
      out += '/';
      print_expr_to(e.kids[1], out, 3);
      break;
  }
  if (paren) out += ')';
}

}  // namespace detail

inline std::string print_expression(const Expr& e) {
  std::string s;
  detail::print_expr_to(e, s, 0);
  return s;
}

inline std::string print_session(const SessionAst& ast) {
  std::string out = "ring " + ast.ring.mode + " " + ast.ring.field + " [";
  for (size_t i = 0; i < ast.ring.names.size(); ++i) {
    if (i) out += ",";
    out += ast.ring.names[i];
  }
  out += "];\n";
  for (const auto& decl : ast.decls) {
    if (std::holds_alternative<IdealDecl>(decl)) {
      const auto& d = std::get<IdealDecl>(decl);
      out += "ideal " + d.name + " = (";
      for (size_t i = 0; i < d.gens.size(); ++i) {
        if (i) out += ", ";
        out += print_expression(d.gens[i]);
      }
      out += ");\n";
    } else {
      const auto& d = std::get<ElemDecl>(decl);
      out += "element " + d.name + " = " + print_expression(d.value) + ";\n";
    }
  }
  return out;
}

inline bool session_equal(const SessionAst& a, const SessionAst& b) {
  if (a.ring.mode != b.ring.mode || a.ring.field != b.ring.field ||
      a.ring.names != b.ring.names || a.decls.size() != b.decls.size())
    return false;
  for (size_t i = 0; i < a.decls.size(); ++i) {
    if (a.decls[i].index() != b.decls[i].index()) return false;
    if (std::holds_alternative<IdealDecl>(a.decls[i])) {
      const auto& x = std::get<IdealDecl>(a.decls[i]);
      const auto& y = std::get<IdealDecl>(b.decls[i]);
      if (x.name != y.name || x.gens.size() != y.gens.size()) return false;
      for (size_t g = 0; g < x.gens.size(); ++g)
        if (!expr_equal(x.gens[g], y.gens[g])) return false;
    } else {
      const auto& x = std::get<ElemDecl>(a.decls[i]);
      const auto& y = std::get<ElemDecl>(b.decls[i]);
      if (x.name != y.name || !expr_equal(x.value, y.value)) return false;
    }
  }
  return true;
}

// --- binding to a concrete ring --------------------------------------------

class SemanticError : public std::runtime_error {
 public:
  SemanticError(SrcPos pos, const std::string& msg)
      : std::runtime_error("line " + std::to_string(pos.line) + ", column " +
                           std::to_string(pos.col) + ": " + msg),
        pos_(pos) {}
  SrcPos pos() const { return pos_; }

 private:
  SrcPos pos_;
};

template <class K>
Element<K> eval_expression(const Expr& e, const Ring<K>& ring) {
  switch (e.kind) {
    case Expr::Kind::Int: {
      if (e.text.size() > 18)
        throw SemanticError(e.pos, "integer literal too large");
      long long v = std::stoll(e.text);
      return scale(ring.field().from_int(v), ring_one(ring));
    }
    case Expr::Kind::Var: {
      int idx = ring.var_index(e.text);
      if (idx < 0)
        throw SemanticError(e.pos, "unknown variable '" + e.text + "'");
      return ring_var(ring, idx);
    }
    case Expr::Kind::Neg:
      return -eval_expression(e.kids[0], ring);
    case Expr::Kind::Add:
      return eval_expression(e.kids[0], ring) +
             eval_expression(e.kids[1], ring);
    case Expr::Kind::Sub:
      return eval_expression(e.kids[0], ring) -
             eval_expression(e.kids[1], ring);
    case Expr::Kind::Mul:
      return eval_expression(e.kids[0], ring) *
             eval_expression(e.kids[1], ring);
    case Expr::Kind::Div: {
      Element<K> num = eval_expression(e.kids[0], ring);
      Element<K> den = eval_expression(e.kids[1], ring);
      if (den.is_zero())
        throw SemanticError(e.pos, "division by zero");
      if (den.terms().size() != 1 || den.terms()[0].first != Mono(0))
        throw SemanticError(e.pos, "division by a non-scalar");
      return scale(ring.field().inv(den.terms()[0].second), num);
    }
  }
  throw SemanticError(e.pos, "malformed expression");
}

/// A session bound to a concrete field: the ring lives behind a stable
/// pointer so elements can reference it across moves of the session.
template <class K>
struct BoundSession {
  std::shared_ptr<Ring<K>> ring;
  std::vector<std::pair<std::string, std::vector<Element<K>>>> ideals;
  std::vector<std::pair<std::string, Element<K>>> elements;

  const std::vector<Element<K>>* find_ideal(const std::string& name) const {
    for (const auto& [n, gens] : ideals)
      if (n == name) return &gens;
    return nullptr;
  }
  const Element<K>* find_element(const std::string& name) const {
    for (const auto& [n, e] : elements)
      if (n == name) return &e;
    return nullptr;
  }
};

using AnySession = std::variant<BoundSession<Rationals>, BoundSession<PrimeField>>;

namespace detail {

template <class K>
BoundSession<K> bind_with_field(const SessionAst& ast, K field) {
  BoundSession<K> s;
  RingMode mode = ast.ring.mode == "exterior"
                      ? RingMode::Exterior
                      : RingMode::SquareZeroCommutative;
  try {
    s.ring = std::make_shared<Ring<K>>(mode, ast.ring.names, std::move(field));
  } catch (const std::invalid_argument& ex) {
    throw SemanticError(ast.ring.pos, ex.what());
  }
  for (const auto& decl : ast.decls) {
    if (std::holds_alternative<IdealDecl>(decl)) {
      const auto& d = std::get<IdealDecl>(decl);
      if (s.find_ideal(d.name) || s.find_element(d.name))
        throw SemanticError(d.pos, "duplicate name '" + d.name + "'");
      std::vector<Element<K>> gens;
      for (const auto& g : d.gens) {
        Element<K> e = eval_expression(g, *s.ring);
        if (e.is_zero())
          throw SemanticError(g.pos, "ideal generator reduces to zero");
        if (!e.is_homogeneous())
          throw SemanticError(g.pos, "ideal generator is not homogeneous");
        gens.push_back(std::move(e));
      }
      s.ideals.emplace_back(d.name, std::move(gens));
    } else {
      const auto& d = std::get<ElemDecl>(decl);
      if (s.find_ideal(d.name) || s.find_element(d.name))
        throw SemanticError(d.pos, "duplicate name '" + d.name + "'");
      s.elements.emplace_back(d.name, eval_expression(d.value, *s.ring));
    }
  }
  return s;
}

}  // namespace detail

inline AnySession bind_session(const SessionAst& ast) {
  if (ast.ring.field == "QQ")
    return detail::bind_with_field(ast, Rationals{});
  // F<p>
  const std::string digits = ast.ring.field.substr(1);
  if (digits.size() > 10)
    throw SemanticError(ast.ring.pos, "modulus too large");
  unsigned long long p = std::stoull(digits);
  try {
    return detail::bind_with_field(ast, PrimeField(static_cast<std::uint64_t>(p)));
  } catch (const std::invalid_argument& ex) {
    throw SemanticError(ast.ring.pos, ex.what());
  }
}

}  // namespace wedge
