#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace symstab {

// ---------------------------------------------------------------------------
// Boolean expressions
//
// Nodes are immutable and shared. The factory functions normalize on
// construction: xor nodes are flat, carry their constant parity in
// `parity`, never contain Not/Const children, and cancel duplicate
// children pairwise. Not never wraps Not, Const or Xor.
// ---------------------------------------------------------------------------

enum class BoolOp : uint8_t { Const, Var, Not, And, Or, Xor };

class BoolExprNode;
using BoolExpr = std::shared_ptr<const BoolExprNode>;

class BoolExprNode {
public:
  BoolOp op;
  bool value = false; // Const value, or parity bit of an Xor
  std::string name;   // Var
  std::vector<BoolExpr> kids;
  std::size_t hash = 0;

  BoolExprNode(BoolOp op_, bool value_, std::string name_,
               std::vector<BoolExpr> kids_)
      : op(op_), value(value_), name(std::move(name_)), kids(std::move(kids_)) {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(static_cast<std::size_t>(op));
    mix(value ? 0x9e3779b9u : 0x85ebca6bu);
    for (char c : name)
      mix(static_cast<unsigned char>(c));
    for (const auto &k : kids)
      mix(k->hash);
    hash = h;
  }
};

// Numeric-aware name order so e2 sorts before e10.
inline int compare_names(const std::string &a, const std::string &b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) &&
        std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2])))
        ++i2;
      while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2])))
        ++j2;
      std::size_t la = i2 - i, lb = j2 - j;
      // skip leading zeros
      std::size_t si = i, sj = j;
      while (si < i2 - 1 && a[si] == '0')
        ++si;
      while (sj < j2 - 1 && b[sj] == '0')
        ++sj;
      std::size_t da = i2 - si, db = j2 - sj;
      if (da != db)
        return da < db ? -1 : 1;
      int c = a.compare(si, da, b, sj, db);
      if (c != 0)
        return c < 0 ? -1 : 1;
      // same numeric value: distinguish e.g. "01" from "1"
      if (la != lb)
        return la < lb ? -1 : 1;
      i = i2;
      j = j2;
    } else {
      if (a[i] != b[j])
        return a[i] < b[j] ? -1 : 1;
      ++i;
      ++j;
    }
  }
  if (i < a.size())
    return 1;
  if (j < b.size())
    return -1;
  return 0;
}

inline int compare_expr(const BoolExpr &a, const BoolExpr &b) {
  if (a.get() == b.get())
    return 0;
  if (a->op != b->op)
    return a->op < b->op ? -1 : 1;
  switch (a->op) {
  case BoolOp::Const:
    if (a->value != b->value)
      return a->value < b->value ? -1 : 1;
    return 0;
  case BoolOp::Var:
    return compare_names(a->name, b->name);
  default:
    break;
  }
  if (a->value != b->value)
    return a->value < b->value ? -1 : 1;
  if (a->kids.size() != b->kids.size())
    return a->kids.size() < b->kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    int c = compare_expr(a->kids[i], b->kids[i]);
    if (c != 0)
      return c;
  }
  return 0;
}

inline bool equal_expr(const BoolExpr &a, const BoolExpr &b) {
  if (a.get() == b.get())
    return true;
  if (a->hash != b->hash)
    return false;
  return compare_expr(a, b) == 0;
}

inline BoolExpr bconst(bool v) {
  static const BoolExpr f = std::make_shared<BoolExprNode>(
      BoolOp::Const, false, "", std::vector<BoolExpr>{});
  static const BoolExpr t = std::make_shared<BoolExprNode>(
      BoolOp::Const, true, "", std::vector<BoolExpr>{});
  return v ? t : f;
}
inline BoolExpr btrue() { return bconst(true); }
inline BoolExpr bfalse() { return bconst(false); }

inline BoolExpr bvar(const std::string &name) {
  return std::make_shared<BoolExprNode>(BoolOp::Var, false, name,
                                        std::vector<BoolExpr>{});
}

inline bool is_const(const BoolExpr &e, bool v) {
  return e->op == BoolOp::Const && e->value == v;
}

BoolExpr bxor(std::vector<BoolExpr> kids);

inline BoolExpr bnot(const BoolExpr &e) {
  switch (e->op) {
  case BoolOp::Const:
    return bconst(!e->value);
  case BoolOp::Not:
    return e->kids[0];
  case BoolOp::Xor: {
    std::vector<BoolExpr> kids = e->kids;
    if (!e->value)
      kids.push_back(btrue()); // toggle the parity carried by the node
    return bxor(std::move(kids));
  }
  default:
    return std::make_shared<BoolExprNode>(BoolOp::Not, false, "",
                                          std::vector<BoolExpr>{e});
  }
}

inline BoolExpr bxor(std::vector<BoolExpr> kids) {
  bool parity = false;
  std::vector<BoolExpr> atoms;
  atoms.reserve(kids.size());
  for (auto &k : kids) {
    switch (k->op) {
    case BoolOp::Const:
      parity ^= k->value;
      break;
    case BoolOp::Xor:
      parity ^= k->value;
      for (const auto &g : k->kids)
        atoms.push_back(g);
      break;
    case BoolOp::Not:
      parity = !parity;
      atoms.push_back(k->kids[0]);
      break;
    default:
      atoms.push_back(k);
    }
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const BoolExpr &a, const BoolExpr &b) {
              return compare_expr(a, b) < 0;
            });
  std::vector<BoolExpr> out;
  out.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size();) {
    if (i + 1 < atoms.size() && equal_expr(atoms[i], atoms[i + 1])) {
      i += 2; // pairwise cancellation
    } else {
      out.push_back(atoms[i]);
      ++i;
    }
  }
  if (out.empty())
    return bconst(parity);
  if (out.size() == 1)
    return parity ? bnot(out[0]) : out[0];
  return std::make_shared<BoolExprNode>(BoolOp::Xor, parity, "",
                                        std::move(out));
}

inline BoolExpr bxor(const BoolExpr &a, const BoolExpr &b) {
  return bxor(std::vector<BoolExpr>{a, b});
}

inline BoolExpr band(std::vector<BoolExpr> kids) {
  std::vector<BoolExpr> atoms;
  for (auto &k : kids) {
    if (k->op == BoolOp::Const) {
      if (!k->value)
        return bfalse();
      continue;
    }
    if (k->op == BoolOp::And) {
      for (const auto &g : k->kids)
        atoms.push_back(g);
    } else {
      atoms.push_back(k);
    }
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const BoolExpr &a, const BoolExpr &b) {
              return compare_expr(a, b) < 0;
            });
  atoms.erase(std::unique(atoms.begin(), atoms.end(),
                          [](const BoolExpr &a, const BoolExpr &b) {
                            return equal_expr(a, b);
                          }),
              atoms.end());
  if (atoms.empty())
    return btrue();
  if (atoms.size() == 1)
    return atoms[0];
  return std::make_shared<BoolExprNode>(BoolOp::And, false, "",
                                        std::move(atoms));
}

inline BoolExpr band(const BoolExpr &a, const BoolExpr &b) {
  return band(std::vector<BoolExpr>{a, b});
}

inline BoolExpr bor(std::vector<BoolExpr> kids) {
  std::vector<BoolExpr> atoms;
  for (auto &k : kids) {
    if (k->op == BoolOp::Const) {
      if (k->value)
        return btrue();
      continue;
    }
    if (k->op == BoolOp::Or) {
      for (const auto &g : k->kids)
        atoms.push_back(g);
    } else {
      atoms.push_back(k);
    }
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const BoolExpr &a, const BoolExpr &b) {
              return compare_expr(a, b) < 0;
            });
  atoms.erase(std::unique(atoms.begin(), atoms.end(),
                          [](const BoolExpr &a, const BoolExpr &b) {
                            return equal_expr(a, b);
                          }),
              atoms.end());
  if (atoms.empty())
    return bfalse();
  if (atoms.size() == 1)
    return atoms[0];
  return std::make_shared<BoolExprNode>(BoolOp::Or, false, "",
                                        std::move(atoms));
}

inline BoolExpr bor(const BoolExpr &a, const BoolExpr &b) {
  return bor(std::vector<BoolExpr>{a, b});
}

// x == y over bits.
inline BoolExpr biff(const BoolExpr &a, const BoolExpr &b) {
  return bnot(bxor(a, b));
}

// Bottom-up reapplication of the normalizing constructors.
inline BoolExpr simplify(const BoolExpr &e) {
  switch (e->op) {
  case BoolOp::Const:
  case BoolOp::Var:
    return e;
  case BoolOp::Not:
    return bnot(simplify(e->kids[0]));
  case BoolOp::And:
  case BoolOp::Or:
  case BoolOp::Xor: {
    std::vector<BoolExpr> kids;
    kids.reserve(e->kids.size() + 1);
    for (const auto &k : e->kids)
      kids.push_back(simplify(k));
    if (e->op == BoolOp::Xor) {
      if (e->value)
        kids.push_back(btrue());
      return bxor(std::move(kids));
    }
    return e->op == BoolOp::And ? band(std::move(kids)) : bor(std::move(kids));
  }
  }
  return e;
}

using Valuation = std::map<std::string, bool>;

inline bool eval(const BoolExpr &e, const Valuation &v) {
  switch (e->op) {
  case BoolOp::Const:
    return e->value;
  case BoolOp::Var: {
    auto it = v.find(e->name);
    if (it == v.end())
      throw std::out_of_range("unbound variable " + e->name);
    return it->second;
  }
  case BoolOp::Not:
    return !eval(e->kids[0], v);
  case BoolOp::And:
    for (const auto &k : e->kids)
      if (!eval(k, v))
        return false;
    return true;
  case BoolOp::Or:
    for (const auto &k : e->kids)
      if (eval(k, v))
        return true;
    return false;
  case BoolOp::Xor: {
    bool acc = e->value;
    for (const auto &k : e->kids)
      acc ^= eval(k, v);
    return acc;
  }
  }
  throw std::logic_error("bad expr");
}

// Replaces every variable through the lookup and renormalizes.
inline BoolExpr
substitute(const BoolExpr &e,
           const std::function<BoolExpr(const std::string &)> &lookup) {
  switch (e->op) {
  case BoolOp::Const:
    return e;
  case BoolOp::Var:
    return lookup(e->name);
  case BoolOp::Not:
    return bnot(substitute(e->kids[0], lookup));
  case BoolOp::And:
  case BoolOp::Or:
  case BoolOp::Xor: {
    std::vector<BoolExpr> kids;
    kids.reserve(e->kids.size() + 1);
    for (const auto &k : e->kids)
      kids.push_back(substitute(k, lookup));
    if (e->op == BoolOp::Xor) {
      if (e->value)
        kids.push_back(btrue());
      return bxor(std::move(kids));
    }
    return e->op == BoolOp::And ? band(std::move(kids)) : bor(std::move(kids));
  }
  }
  throw std::logic_error("bad expr");
}

inline void collect_vars(const BoolExpr &e, std::set<std::string> &out) {
  if (e->op == BoolOp::Var) {
    out.insert(e->name);
    return;
  }
  for (const auto &k : e->kids)
    collect_vars(k, out);
}

inline std::set<std::string> vars_of(const BoolExpr &e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

inline std::string to_string(const BoolExpr &e, bool parens = false) {
  switch (e->op) {
  case BoolOp::Const:
    return e->value ? "1" : "0";
  case BoolOp::Var:
    return e->name;
  case BoolOp::Not:
    return "!" + to_string(e->kids[0], true);
  case BoolOp::And:
  case BoolOp::Or:
  case BoolOp::Xor: {
    const char *sep = e->op == BoolOp::And ? " & "
                      : e->op == BoolOp::Or ? " | "
                                            : " ^ ";
    std::string out;
    if (e->op == BoolOp::Xor && e->value)
      out = "1";
    for (const auto &k : e->kids) {
      if (!out.empty())
        out += sep;
      out += to_string(k, true);
    }
    return parens ? "(" + out + ")" : out;
  }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Bit-vector expressions for counting constraints
// ---------------------------------------------------------------------------

enum class BvOp : uint8_t { Const, Var, ZeroExt, Add, FromBool };

class BvExprNode;
using BvExpr = std::shared_ptr<const BvExprNode>;

class BvExprNode {
public:
  BvOp op;
  unsigned width;
  uint64_t value = 0;        // Const
  std::string name;          // Var
  std::vector<BvExpr> kids;  // ZeroExt (1), Add (>=2)
  BoolExpr guard;            // FromBool

  BvExprNode(BvOp op_, unsigned width_) : op(op_), width(width_) {}
};

inline uint64_t width_mask(unsigned w) {
  return w >= 64 ? ~uint64_t(0) : ((uint64_t(1) << w) - 1);
}

inline BvExpr bv_const(unsigned width, uint64_t value) {
  if (width == 0 || width > 64)
    throw std::invalid_argument("bad bit-vector width");
  auto n = std::make_shared<BvExprNode>(BvOp::Const, width);
  n->value = value & width_mask(width);
  return n;
}

inline BvExpr bv_var(const std::string &name, unsigned width) {
  auto n = std::make_shared<BvExprNode>(BvOp::Var, width);
  n->name = name;
  return n;
}

inline BvExpr bv_zero_extend(const BvExpr &e, unsigned extra) {
  if (extra == 0)
    return e;
  auto n = std::make_shared<BvExprNode>(BvOp::ZeroExt, e->width + extra);
  n->kids = {e};
  return n;
}

inline BvExpr bv_from_bool(const BoolExpr &g) {
  auto n = std::make_shared<BvExprNode>(BvOp::FromBool, 1);
  n->guard = g;
  return n;
}

inline BvExpr bv_add(std::vector<BvExpr> kids) {
  if (kids.empty())
    throw std::invalid_argument("empty bvadd");
  unsigned w = kids[0]->width;
  for (const auto &k : kids)
    if (k->width != w)
      throw std::invalid_argument("bvadd width mismatch");
  if (kids.size() == 1)
    return kids[0];
  auto n = std::make_shared<BvExprNode>(BvOp::Add, w);
  n->kids = std::move(kids);
  return n;
}

inline uint64_t eval(const BvExpr &e, const Valuation &v,
                     const std::map<std::string, uint64_t> *words = nullptr) {
  switch (e->op) {
  case BvOp::Const:
    return e->value;
  case BvOp::Var: {
    if (words) {
      auto it = words->find(e->name);
      if (it != words->end())
        return it->second & width_mask(e->width);
    }
    auto it = v.find(e->name);
    if (it == v.end())
      throw std::out_of_range("unbound variable " + e->name);
    return it->second ? 1 : 0;
  }
  case BvOp::ZeroExt:
    return eval(e->kids[0], v, words);
  case BvOp::Add: {
    uint64_t acc = 0;
    for (const auto &k : e->kids)
      acc += eval(k, v, words);
    return acc & width_mask(e->width);
  }
  case BvOp::FromBool:
    return eval(e->guard, v) ? 1 : 0;
  }
  throw std::logic_error("bad bv expr");
}

// ---------------------------------------------------------------------------
// Formulas: Boolean combinations of Bool atoms and bit-vector comparisons
// ---------------------------------------------------------------------------

enum class FormulaOp : uint8_t { Atom, BvUle, BvEq, And, Or, Not };

class FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

class FormulaNode {
public:
  FormulaOp op;
  BoolExpr atom;      // Atom
  BvExpr lhs, rhs;    // BvUle / BvEq
  std::vector<Formula> kids;

  explicit FormulaNode(FormulaOp op_) : op(op_) {}
};

inline Formula f_atom(const BoolExpr &e) {
  auto n = std::make_shared<FormulaNode>(FormulaOp::Atom);
  n->atom = e;
  return n;
}
inline Formula f_true() { return f_atom(btrue()); }
inline Formula f_false() { return f_atom(bfalse()); }

inline bool is_const_formula(const Formula &f, bool v) {
  return f->op == FormulaOp::Atom && is_const(f->atom, v);
}

inline Formula f_ule(const BvExpr &a, const BvExpr &b) {
  if (a->width != b->width)
    throw std::invalid_argument("bvule width mismatch");
  auto n = std::make_shared<FormulaNode>(FormulaOp::BvUle);
  n->lhs = a;
  n->rhs = b;
  return n;
}

inline Formula f_eq(const BvExpr &a, const BvExpr &b) {
  if (a->width != b->width)
    throw std::invalid_argument("= width mismatch");
  auto n = std::make_shared<FormulaNode>(FormulaOp::BvEq);
  n->lhs = a;
  n->rhs = b;
  return n;
}

inline Formula f_and(std::vector<Formula> kids) {
  std::vector<Formula> out;
  for (auto &k : kids) {
    if (is_const_formula(k, true))
      continue;
    if (is_const_formula(k, false))
      return f_false();
    if (k->op == FormulaOp::And) {
      for (const auto &g : k->kids)
        out.push_back(g);
    } else {
      out.push_back(k);
    }
  }
  if (out.empty())
    return f_true();
  if (out.size() == 1)
    return out[0];
  auto n = std::make_shared<FormulaNode>(FormulaOp::And);
  n->kids = std::move(out);
  return n;
}

inline Formula f_and(const Formula &a, const Formula &b) {
  return f_and(std::vector<Formula>{a, b});
}

inline Formula f_or(std::vector<Formula> kids) {
  std::vector<Formula> out;
  for (auto &k : kids) {
    if (is_const_formula(k, false))
      continue;
    if (is_const_formula(k, true))
      return f_true();
    if (k->op == FormulaOp::Or) {
      for (const auto &g : k->kids)
        out.push_back(g);
    } else {
      out.push_back(k);
    }
  }
  if (out.empty())
    return f_false();
  if (out.size() == 1)
    return out[0];
  auto n = std::make_shared<FormulaNode>(FormulaOp::Or);
  n->kids = std::move(out);
  return n;
}

inline Formula f_not(const Formula &f) {
  if (f->op == FormulaOp::Atom)
    return f_atom(bnot(f->atom));
  if (f->op == FormulaOp::Not)
    return f->kids[0];
  auto n = std::make_shared<FormulaNode>(FormulaOp::Not);
  n->kids = {f};
  return n;
}

inline bool eval(const Formula &f, const Valuation &v,
                 const std::map<std::string, uint64_t> *words = nullptr) {
  switch (f->op) {
  case FormulaOp::Atom:
    return eval(f->atom, v);
  case FormulaOp::BvUle:
    return eval(f->lhs, v, words) <= eval(f->rhs, v, words);
  case FormulaOp::BvEq:
    return eval(f->lhs, v, words) == eval(f->rhs, v, words);
  case FormulaOp::And:
    for (const auto &k : f->kids)
      if (!eval(k, v, words))
        return false;
    return true;
  case FormulaOp::Or:
    for (const auto &k : f->kids)
      if (eval(k, v, words))
        return true;
    return false;
  case FormulaOp::Not:
    return !eval(f->kids[0], v, words);
  }
  throw std::logic_error("bad formula");
}

struct DeclaredVar {
  std::string name;
  unsigned width; // 0 means Bool
  bool operator<(const DeclaredVar &o) const {
    if (int c = compare_names(name, o.name))
      return c < 0;
    return width < o.width;
  }
};

inline void collect_vars(const BvExpr &e, std::set<DeclaredVar> &out) {
  switch (e->op) {
  case BvOp::Var:
    out.insert({e->name, e->width});
    return;
  case BvOp::FromBool: {
    std::set<std::string> bs;
    collect_vars(e->guard, bs);
    for (const auto &b : bs)
      out.insert({b, 0});
    return;
  }
  default:
    for (const auto &k : e->kids)
      collect_vars(k, out);
  }
}

inline void collect_vars(const Formula &f, std::set<DeclaredVar> &out) {
  switch (f->op) {
  case FormulaOp::Atom: {
    std::set<std::string> bs;
    collect_vars(f->atom, bs);
    for (const auto &b : bs)
      out.insert({b, 0});
    return;
  }
  case FormulaOp::BvUle:
  case FormulaOp::BvEq:
    collect_vars(f->lhs, out);
    collect_vars(f->rhs, out);
    return;
  default:
    for (const auto &k : f->kids)
      collect_vars(k, out);
  }
}

// ---------------------------------------------------------------------------
// SMT-LIB term rendering
// ---------------------------------------------------------------------------

inline std::string to_smt(const BoolExpr &e) {
  switch (e->op) {
  case BoolOp::Const:
    return e->value ? "true" : "false";
  case BoolOp::Var:
    return e->name;
  case BoolOp::Not:
    return "(not " + to_smt(e->kids[0]) + ")";
  case BoolOp::And:
  case BoolOp::Or:
  case BoolOp::Xor: {
    std::string out = "(";
    out += e->op == BoolOp::And ? "and" : e->op == BoolOp::Or ? "or" : "xor";
    if (e->op == BoolOp::Xor && e->value)
      out += " true";
    for (const auto &k : e->kids)
      out += " " + to_smt(k);
    out += ")";
    return out;
  }
  }
  return "?";
}

inline std::string to_smt(const BvExpr &e) {
  switch (e->op) {
  case BvOp::Const: {
    std::string bits;
    for (unsigned i = e->width; i-- > 0;)
      bits.push_back((e->value >> i) & 1 ? '1' : '0');
    return "#b" + bits;
  }
  case BvOp::Var:
    return e->name;
  case BvOp::ZeroExt:
    return "((_ zero_extend " +
           std::to_string(e->width - e->kids[0]->width) + ") " +
           to_smt(e->kids[0]) + ")";
  case BvOp::Add: {
    std::string out = to_smt(e->kids[0]);
    for (std::size_t i = 1; i < e->kids.size(); ++i)
      out = "(bvadd " + out + " " + to_smt(e->kids[i]) + ")";
    return out;
  }
  case BvOp::FromBool:
    return "(ite " + to_smt(e->guard) + " #b1 #b0)";
  }
  return "?";
}

inline std::string to_smt(const Formula &f) {
  switch (f->op) {
  case FormulaOp::Atom:
    return to_smt(f->atom);
  case FormulaOp::BvUle:
    return "(bvule " + to_smt(f->lhs) + " " + to_smt(f->rhs) + ")";
  case FormulaOp::BvEq:
    return "(= " + to_smt(f->lhs) + " " + to_smt(f->rhs) + ")";
  case FormulaOp::And:
  case FormulaOp::Or: {
    std::string out = f->op == FormulaOp::And ? "(and" : "(or";
    for (const auto &k : f->kids)
      out += " " + to_smt(k);
    out += ")";
    return out;
  }
  case FormulaOp::Not:
    return "(not " + to_smt(f->kids[0]) + ")";
  }
  return "?";
}

inline std::string to_string(const Formula &f) {
  switch (f->op) {
  case FormulaOp::Atom:
    return to_string(f->atom);
  case FormulaOp::BvUle:
    return to_smt(f); // SMT form is readable enough for dumps
  case FormulaOp::BvEq:
    return to_smt(f);
  case FormulaOp::And:
  case FormulaOp::Or: {
    std::string out;
    const char *sep = f->op == FormulaOp::And ? " && " : " || ";
    for (const auto &k : f->kids) {
      if (!out.empty())
        out += sep;
      out += "(" + to_string(k) + ")";
    }
    return out;
  }
  case FormulaOp::Not:
    return "!(" + to_string(f->kids[0]) + ")";
  }
  return "?";
}

// Count constraint sum(bits) <= bound using the smallest sound width.
inline Formula count_at_most(const std::vector<BoolExpr> &bits,
                             uint64_t bound) {
  if (bits.empty())
    return f_true();
  unsigned width = 1;
  while ((uint64_t(1) << width) < bits.size() + 1)
    ++width;
  std::vector<BvExpr> terms;
  terms.reserve(bits.size());
  for (const auto &b : bits)
    terms.push_back(bv_zero_extend(bv_from_bool(b), width - 1));
  return f_ule(bv_add(std::move(terms)), bv_const(width, bound));
}

// ---------------------------------------------------------------------------
// Fresh symbol generation
// ---------------------------------------------------------------------------

class FreshGen {
public:
  BoolExpr fresh(const std::string &prefix) {
    return bvar(fresh_name(prefix));
  }

  std::string fresh_name(const std::string &prefix) {
    uint64_t k = counters_[prefix]++;
    return prefix + "_" + std::to_string(k);
  }

  // Makes sure future fresh names never collide with an external name.
  void avoid(const std::string &name) {
    auto pos = name.rfind('_');
    if (pos == std::string::npos || pos + 1 >= name.size())
      return;
    std::string digits = name.substr(pos + 1);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }))
      return;
    uint64_t k = std::stoull(digits);
    auto &ctr = counters_[name.substr(0, pos)];
    ctr = std::max(ctr, k + 1);
  }

private:
  std::map<std::string, uint64_t> counters_;
};

} // namespace symstab
