#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "symstab/expr.hpp"
#include "symstab/pauli.hpp"

namespace symstab {

struct SourcePos {
  int line = 0;
  int col = 0;
};

struct ParseError : std::runtime_error {
  SourcePos pos;
  ParseError(SourcePos p, const std::string &msg)
      : std::runtime_error("line " + std::to_string(p.line) + ":" +
                           std::to_string(p.col) + ": " + msg),
        pos(p) {}
};

enum class StmtKind : uint8_t {
  Assign,   // x := e
  ExtCall,  // y1,..,yk := F(x1,..,xm)
  Unitary,  // G q...
  SymPauli, // tau[e] q
  Measure,  // measure q -> x
  Seq,      // { s1; s2; ... }
  If        // if (b) {..} else {..}
};

struct Stmt {
  StmtKind kind;
  SourcePos pos;

  std::string var;  // Assign / Measure target
  BoolExpr expr;    // Assign rhs, SymPauli guard, If condition

  std::vector<std::string> outs; // ExtCall
  std::string fname;
  std::vector<std::string> ins;

  Gate gate = Gate::I;             // Unitary
  std::vector<std::size_t> qubits; // Unitary targets / [0] for SymPauli,Measure

  char tau = 'X'; // SymPauli

  std::vector<Stmt> body;      // Seq / If-then
  std::vector<Stmt> else_body; // If-else
};

inline Stmt stmt_assign(std::string var, BoolExpr e) {
  Stmt s;
  s.kind = StmtKind::Assign;
  s.var = std::move(var);
  s.expr = std::move(e);
  return s;
}

inline Stmt stmt_extcall(std::vector<std::string> outs, std::string fname,
                         std::vector<std::string> ins) {
  Stmt s;
  s.kind = StmtKind::ExtCall;
  s.outs = std::move(outs);
  s.fname = std::move(fname);
  s.ins = std::move(ins);
  return s;
}

inline Stmt stmt_unitary(Gate g, std::vector<std::size_t> qubits) {
  Stmt s;
  s.kind = StmtKind::Unitary;
  s.gate = g;
  s.qubits = std::move(qubits);
  return s;
}

inline Stmt stmt_sym_pauli(char tau, BoolExpr guard, std::size_t q) {
  Stmt s;
  s.kind = StmtKind::SymPauli;
  s.tau = tau;
  s.expr = std::move(guard);
  s.qubits = {q};
  return s;
}

inline Stmt stmt_measure(std::size_t q, std::string var) {
  Stmt s;
  s.kind = StmtKind::Measure;
  s.qubits = {q};
  s.var = std::move(var);
  return s;
}

inline Stmt stmt_if(BoolExpr cond, std::vector<Stmt> then_body,
                    std::vector<Stmt> else_body = {}) {
  Stmt s;
  s.kind = StmtKind::If;
  s.expr = std::move(cond);
  s.body = std::move(then_body);
  s.else_body = std::move(else_body);
  return s;
}

struct Program {
  std::size_t n_qubits = 0;
  std::vector<std::string> inputs; // pre-bound symbolic variables
  std::vector<Stmt> body;

  std::size_t statement_count() const {
    std::function<std::size_t(const std::vector<Stmt> &)> count =
        [&](const std::vector<Stmt> &stmts) {
          std::size_t c = 0;
          for (const auto &s : stmts) {
            ++c;
            c += count(s.body);
            c += count(s.else_body);
          }
          return c;
        };
    return count(body);
  }
};

// Condition builder plus optional concrete implementation for an external
// classical function. The condition C_F takes the symbolic inputs and the
// fresh output symbols.
struct ExternalFnSpec {
  std::string name;
  std::size_t in_arity = 0;
  std::size_t out_arity = 0;
  std::function<Formula(const std::vector<BoolExpr> &,
                        const std::vector<BoolExpr> &)>
      condition;
  std::function<std::vector<bool>(const std::vector<bool> &)> concrete;
};

using ExternalRegistry = std::map<std::string, ExternalFnSpec>;

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
  enum class Type { Ident, Int, Punct, End };
  Type type;
  std::string text;
  long value = 0;
  SourcePos pos;
};

class Lexer {
public:
  explicit Lexer(const std::string &src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      SourcePos pos{line_, col_};
      if (i_ >= src_.size()) {
        out.push_back({Token::Type::End, "", 0, pos});
        return out;
      }
      char c = src_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string text;
        while (i_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[i_])) ||
                src_[i_] == '_'))
          text.push_back(advance());
        out.push_back({Token::Type::Ident, text, 0, pos});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string text;
        while (i_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[i_])))
          text.push_back(advance());
        out.push_back({Token::Type::Int, text, std::stol(text), pos});
      } else {
        static const char *two[] = {":=", "->", "==", "!=", "&&",
                                    "||", "..", nullptr};
        std::string text(1, c);
        for (int t = 0; two[t]; ++t) {
          if (src_.compare(i_, 2, two[t]) == 0) {
            text = two[t];
            break;
          }
        }
        for (std::size_t k = 0; k < text.size(); ++k)
          advance();
        out.push_back({Token::Type::Punct, text, 0, pos});
      }
    }
  }

private:
  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '/' && i_ + 1 < src_.size() && src_[i_ + 1] == '/') {
        while (i_ < src_.size() && src_[i_] != '\n')
          advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  const std::string &src_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

inline bool is_gate_name(const std::string &s) {
  return s == "I" || s == "X" || s == "Y" || s == "Z" || s == "H" ||
         s == "S" || s == "CNOT" || s == "CX";
}

class Parser {
public:
  Parser(std::vector<Token> tokens, bool fuse_pauli)
      : toks_(std::move(tokens)), fuse_pauli_(fuse_pauli) {}

  Program parse_program() {
    Program p;
    expect_ident("qubits");
    Token n = expect(Token::Type::Int, "qubit count");
    if (n.value <= 0)
      throw ParseError(n.pos, "qubit count must be positive");
    p.n_qubits = static_cast<std::size_t>(n.value);
    expect_punct(";");
    while (peek().type == Token::Type::Ident && peek().text == "input") {
      next();
      p.inputs.push_back(expect(Token::Type::Ident, "input name").text);
      while (peek_punct(","))
        p.inputs.push_back(expect(Token::Type::Ident, "input name").text);
      expect_punct(";");
    }
    while (peek().type != Token::Type::End)
      p.body.push_back(parse_stmt());
    return p;
  }

private:
  const Token &peek(std::size_t ahead = 0) const {
    std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[k];
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  bool peek_punct(const std::string &s) {
    if (peek().type == Token::Type::Punct && peek().text == s) {
      next();
      return true;
    }
    return false;
  }

  Token expect(Token::Type t, const std::string &what) {
    Token tok = next();
    if (tok.type != t)
      throw ParseError(tok.pos, "expected " + what + ", got \"" + tok.text +
                                    "\"");
    return tok;
  }

  void expect_punct(const std::string &s) {
    Token tok = next();
    if (tok.type != Token::Type::Punct || tok.text != s)
      throw ParseError(tok.pos,
                       "expected \"" + s + "\", got \"" + tok.text + "\"");
  }

  void expect_ident(const std::string &s) {
    Token tok = next();
    if (tok.type != Token::Type::Ident || tok.text != s)
      throw ParseError(tok.pos,
                       "expected \"" + s + "\", got \"" + tok.text + "\"");
  }

  std::string subst_ident(const std::string &name) const {
    if (loop_vars_.empty())
      return name;
    // a bare loop variable or a "_i" segment is replaced by its value
    auto it = loop_vars_.find(name);
    if (it != loop_vars_.end())
      return std::to_string(it->second);
    std::string out;
    std::size_t start = 0;
    while (start < name.size()) {
      std::size_t us = name.find('_', start);
      std::string seg = name.substr(start, us - start);
      if (start == 0) {
        out = seg;
      } else {
        auto sub = loop_vars_.find(seg);
        if (sub != loop_vars_.end())
          out += std::to_string(sub->second);
        else
          out += "_" + seg;
      }
      if (us == std::string::npos)
        break;
      start = us + 1;
    }
    return out;
  }

  std::size_t parse_qubit() {
    Token tok = expect(Token::Type::Ident, "qubit");
    std::string name = subst_ident(tok.text);
    if (name.size() < 2 || name[0] != 'q')
      throw ParseError(tok.pos, "expected qubit like q1, got \"" + name +
                                    "\"");
    std::size_t digits = 1;
    if (name[1] == '_')
      digits = 2;
    for (std::size_t k = digits; k < name.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(name[k])))
        throw ParseError(tok.pos, "expected qubit like q1, got \"" + name +
                                      "\"");
    long idx = std::stol(name.substr(digits));
    if (idx <= 0)
      throw ParseError(tok.pos, "qubit indices are 1-based");
    return static_cast<std::size_t>(idx - 1);
  }

  // expression grammar, loosest to tightest: | ; & ; == != ; ^ ; * ; ! atom
  BoolExpr parse_expr() { return parse_or(); }

  BoolExpr parse_or() {
    BoolExpr e = parse_and();
    while (peek().type == Token::Type::Punct &&
           (peek().text == "|" || peek().text == "||")) {
      next();
      e = bor(e, parse_and());
    }
    return e;
  }

  BoolExpr parse_and() {
    BoolExpr e = parse_equality();
    while (peek().type == Token::Type::Punct &&
           (peek().text == "&" || peek().text == "&&")) {
      next();
      e = band(e, parse_equality());
    }
    return e;
  }

  BoolExpr parse_equality() {
    BoolExpr e = parse_xor();
    while (peek().type == Token::Type::Punct &&
           (peek().text == "==" || peek().text == "!=")) {
      bool neq = next().text == "!=";
      BoolExpr rhs = parse_xor();
      e = neq ? bxor(e, rhs) : biff(e, rhs);
    }
    return e;
  }

  BoolExpr parse_xor() {
    BoolExpr e = parse_product();
    while (peek().type == Token::Type::Punct && peek().text == "^") {
      next();
      e = bxor(e, parse_product());
    }
    return e;
  }

  BoolExpr parse_product() {
    BoolExpr e = parse_unary();
    while (peek().type == Token::Type::Punct && peek().text == "*") {
      next();
      e = band(e, parse_unary());
    }
    return e;
  }

  BoolExpr parse_unary() {
    if (peek().type == Token::Type::Punct && peek().text == "!") {
      next();
      return bnot(parse_unary());
    }
    if (peek_punct("(")) {
      BoolExpr e = parse_expr();
      expect_punct(")");
      return e;
    }
    Token tok = next();
    if (tok.type == Token::Type::Int) {
      if (tok.value == 0)
        return bfalse();
      if (tok.value == 1)
        return btrue();
      throw ParseError(tok.pos, "only bits 0/1 appear in expressions");
    }
    if (tok.type == Token::Type::Ident) {
      std::string name = subst_ident(tok.text);
      if (std::isdigit(static_cast<unsigned char>(name[0]))) {
        // loop variable used as a literal
        long v = std::stol(name);
        if (v == 0)
          return bfalse();
        if (v == 1)
          return btrue();
        throw ParseError(tok.pos, "only bits 0/1 appear in expressions");
      }
      return bvar(name);
    }
    throw ParseError(tok.pos, "expected expression, got \"" + tok.text +
                                  "\"");
  }

  std::vector<Stmt> parse_block() {
    expect_punct("{");
    std::vector<Stmt> out;
    while (!peek_punct("}"))
      out.push_back(parse_stmt());
    return out;
  }

  Stmt parse_stmt() {
    Token tok = peek();
    if (tok.type != Token::Type::Ident)
      throw ParseError(tok.pos, "expected statement, got \"" + tok.text +
                                    "\"");

    if (tok.text == "measure") {
      next();
      std::size_t q = parse_qubit();
      expect_punct("->");
      std::string var =
          subst_ident(expect(Token::Type::Ident, "variable").text);
      expect_punct(";");
      Stmt s = stmt_measure(q, var);
      s.pos = tok.pos;
      return s;
    }

    if (tok.text == "if") {
      next();
      expect_punct("(");
      BoolExpr cond = parse_expr();
      expect_punct(")");
      std::vector<Stmt> then_body = parse_block();
      std::vector<Stmt> else_body;
      if (peek().type == Token::Type::Ident && peek().text == "else") {
        next();
        else_body = parse_block();
      }
      // if (e) { tau q; } with a single-qubit Pauli body and no else is the
      // symbolic Pauli gate tau[e] q
      if (fuse_pauli_ && else_body.empty() && then_body.size() == 1 &&
          then_body[0].kind == StmtKind::Unitary &&
          (then_body[0].gate == Gate::X || then_body[0].gate == Gate::Y ||
           then_body[0].gate == Gate::Z)) {
        Stmt s = stmt_sym_pauli(gate_name(then_body[0].gate)[0], cond,
                                then_body[0].qubits[0]);
        s.pos = tok.pos;
        return s;
      }
      Stmt s = stmt_if(cond, std::move(then_body), std::move(else_body));
      s.pos = tok.pos;
      return s;
    }

    if (tok.text == "for") {
      next();
      std::string var = expect(Token::Type::Ident, "loop variable").text;
      expect_ident("in");
      long lo = parse_loop_bound();
      expect_punct("..");
      long hi = parse_loop_bound();
      // remember the body token range, then replay it per iteration
      std::size_t body_start = pos_;
      skip_block();
      std::size_t body_end = pos_;
      Stmt seq;
      seq.kind = StmtKind::Seq;
      seq.pos = tok.pos;
      for (long i = lo; i < hi; ++i) {
        loop_vars_[var] = i;
        std::size_t save = pos_;
        pos_ = body_start;
        std::vector<Stmt> body = parse_block();
        if (pos_ != body_end)
          throw ParseError(tok.pos, "loop body token mismatch");
        pos_ = save;
        for (auto &s : body)
          seq.body.push_back(std::move(s));
      }
      loop_vars_.erase(var);
      return seq;
    }

    // gate statements and assignments start with a plain identifier
    next();
    std::string first = tok.text;

    if (peek().type == Token::Type::Punct && peek().text == "[") {
      if (!(first == "X" || first == "Y" || first == "Z"))
        throw ParseError(tok.pos, "only X/Y/Z take a condition");
      next();
      BoolExpr guard = parse_expr();
      expect_punct("]");
      std::size_t q = parse_qubit();
      expect_punct(";");
      Stmt s = stmt_sym_pauli(first[0], guard, q);
      s.pos = tok.pos;
      return s;
    }

    if (is_gate_name(first) && peek().type == Token::Type::Ident &&
        peek().text != "") {
      Gate g = gate_from_name(first);
      std::vector<std::size_t> qubits{parse_qubit()};
      while (peek_punct(","))
        qubits.push_back(parse_qubit());
      expect_punct(";");
      if (qubits.size() != gate_arity(g))
        throw ParseError(tok.pos, std::string("gate ") + first + " expects " +
                                      std::to_string(gate_arity(g)) +
                                      " qubit(s)");
      Stmt s = stmt_unitary(g, std::move(qubits));
      s.pos = tok.pos;
      return s;
    }

    std::vector<std::string> lhs{subst_ident(first)};
    while (peek_punct(","))
      lhs.push_back(subst_ident(expect(Token::Type::Ident, "variable").text));
    expect_punct(":=");

    if (peek().type == Token::Type::Ident && peek(1).type == Token::Type::Punct &&
        peek(1).text == "(") {
      std::string fname = next().text;
      next(); // (
      std::vector<std::string> ins;
      if (!peek_punct(")")) {
        ins.push_back(subst_ident(expect(Token::Type::Ident, "variable").text));
        while (peek_punct(","))
          ins.push_back(
              subst_ident(expect(Token::Type::Ident, "variable").text));
        expect_punct(")");
      }
      expect_punct(";");
      Stmt s = stmt_extcall(std::move(lhs), fname, std::move(ins));
      s.pos = tok.pos;
      return s;
    }

    if (lhs.size() != 1)
      throw ParseError(tok.pos, "tuple assignment is only for external calls");
    BoolExpr rhs = parse_expr();
    expect_punct(";");
    Stmt s = stmt_assign(lhs[0], rhs);
    s.pos = tok.pos;
    return s;
  }

  long parse_loop_bound() {
    Token tok = next();
    if (tok.type == Token::Type::Int)
      return tok.value;
    if (tok.type == Token::Type::Ident) {
      auto it = loop_vars_.find(tok.text);
      if (it != loop_vars_.end())
        return it->second;
      throw ParseError(tok.pos, "loop bound must be a constant");
    }
    throw ParseError(tok.pos, "loop bound must be a constant");
  }

  void skip_block() {
    expect_punct("{");
    int depth = 1;
    while (depth > 0) {
      Token tok = next();
      if (tok.type == Token::Type::End)
        throw ParseError(tok.pos, "unterminated block");
      if (tok.type == Token::Type::Punct && tok.text == "{")
        ++depth;
      if (tok.type == Token::Type::Punct && tok.text == "}")
        --depth;
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool fuse_pauli_;
  std::map<std::string, long> loop_vars_;
};

} // namespace detail

struct ParseOptions {
  // When false, `if (e) { tau q; }` stays a conditional instead of being
  // recognized as a symbolic Pauli gate.
  bool fuse_pauli = true;
};

inline Program parse_program(const std::string &text,
                             ParseOptions opts = {}) {
  detail::Lexer lex(text);
  detail::Parser parser(lex.run(), opts.fuse_pauli);
  return parser.parse_program();
}

// ---------------------------------------------------------------------------
// Pretty printer; parse(print(p)) reproduces p
// ---------------------------------------------------------------------------

namespace detail {

inline void print_stmts(const std::vector<Stmt> &stmts, std::string &out,
                        int indent);

inline void print_stmt(const Stmt &s, std::string &out, int indent) {
  std::string pad(2 * indent, ' ');
  switch (s.kind) {
  case StmtKind::Assign:
    out += pad + s.var + " := " + to_string(s.expr) + ";\n";
    break;
  case StmtKind::ExtCall: {
    out += pad;
    for (std::size_t i = 0; i < s.outs.size(); ++i)
      out += (i ? ", " : "") + s.outs[i];
    out += " := " + s.fname + "(";
    for (std::size_t i = 0; i < s.ins.size(); ++i)
      out += (i ? ", " : "") + s.ins[i];
    out += ");\n";
    break;
  }
  case StmtKind::Unitary: {
    out += pad + gate_name(s.gate) + " ";
    for (std::size_t i = 0; i < s.qubits.size(); ++i)
      out += (i ? ", q" : "q") + std::to_string(s.qubits[i] + 1);
    out += ";\n";
    break;
  }
  case StmtKind::SymPauli:
    out += pad + std::string(1, s.tau) + "[" + to_string(s.expr) + "] q" +
           std::to_string(s.qubits[0] + 1) + ";\n";
    break;
  case StmtKind::Measure:
    out += pad + "measure q" + std::to_string(s.qubits[0] + 1) + " -> " +
           s.var + ";\n";
    break;
  case StmtKind::Seq:
    print_stmts(s.body, out, indent);
    break;
  case StmtKind::If:
    out += pad + "if (" + to_string(s.expr) + ") {\n";
    print_stmts(s.body, out, indent + 1);
    out += pad + "}";
    if (!s.else_body.empty()) {
      out += " else {\n";
      print_stmts(s.else_body, out, indent + 1);
      out += pad + "}";
    }
    out += "\n";
    break;
  }
}

inline void print_stmts(const std::vector<Stmt> &stmts, std::string &out,
                        int indent) {
  for (const auto &s : stmts)
    print_stmt(s, out, indent);
}

} // namespace detail

inline std::string print_program(const Program &p) {
  std::string out = "qubits " + std::to_string(p.n_qubits) + ";\n";
  if (!p.inputs.empty()) {
    out += "input ";
    for (std::size_t i = 0; i < p.inputs.size(); ++i)
      out += (i ? ", " : "") + p.inputs[i];
    out += ";\n";
  }
  detail::print_stmts(p.body, out, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Static validation
// ---------------------------------------------------------------------------

struct Diagnostic {
  SourcePos pos;
  std::string message;
};

namespace detail {

inline void validate_expr(const BoolExpr &e, const SourcePos &pos,
                          const std::set<std::string> &live,
                          std::vector<Diagnostic> &out) {
  for (const auto &v : vars_of(e))
    if (!live.count(v))
      out.push_back({pos, "use of unassigned variable \"" + v + "\""});
}

inline void validate_stmts(const std::vector<Stmt> &stmts, const Program &p,
                           const ExternalRegistry *externals,
                           std::set<std::string> &live,
                           std::vector<Diagnostic> &out) {
  for (const auto &s : stmts) {
    for (std::size_t q : s.qubits)
      if (q >= p.n_qubits)
        out.push_back({s.pos, "qubit q" + std::to_string(q + 1) +
                                  " out of range (program has " +
                                  std::to_string(p.n_qubits) + ")"});
    switch (s.kind) {
    case StmtKind::Assign:
      validate_expr(s.expr, s.pos, live, out);
      live.insert(s.var);
      break;
    case StmtKind::ExtCall: {
      for (const auto &x : s.ins)
        if (!live.count(x))
          out.push_back({s.pos, "use of unassigned variable \"" + x + "\""});
      if (externals) {
        auto it = externals->find(s.fname);
        if (it == externals->end()) {
          out.push_back({s.pos, "unknown external function \"" + s.fname +
                                    "\""});
        } else {
          if (it->second.in_arity != s.ins.size())
            out.push_back({s.pos, "external \"" + s.fname + "\" takes " +
                                      std::to_string(it->second.in_arity) +
                                      " inputs"});
          if (it->second.out_arity != s.outs.size())
            out.push_back({s.pos, "external \"" + s.fname + "\" returns " +
                                      std::to_string(it->second.out_arity) +
                                      " outputs"});
        }
      }
      for (const auto &y : s.outs)
        live.insert(y);
      break;
    }
    case StmtKind::Unitary:
      break;
    case StmtKind::SymPauli:
      validate_expr(s.expr, s.pos, live, out);
      break;
    case StmtKind::Measure:
      live.insert(s.var);
      break;
    case StmtKind::Seq:
      validate_stmts(s.body, p, externals, live, out);
      break;
    case StmtKind::If: {
      validate_expr(s.expr, s.pos, live, out);
      std::set<std::string> then_live = live, else_live = live;
      validate_stmts(s.body, p, externals, then_live, out);
      validate_stmts(s.else_body, p, externals, else_live, out);
      // a variable survives the conditional only if both arms assign it
      for (const auto &v : then_live)
        if (else_live.count(v))
          live.insert(v);
      break;
    }
    }
  }
}

} // namespace detail

inline std::vector<Diagnostic>
validate(const Program &p, const ExternalRegistry *externals = nullptr) {
  std::vector<Diagnostic> out;
  std::set<std::string> live(p.inputs.begin(), p.inputs.end());
  detail::validate_stmts(p.body, p, externals, live, out);
  return out;
}

} // namespace symstab
