// minismt: a small single-file SMT-LIB 2 solver for the QF_BV fragment
// used by this project (Bool connectives, bvadd, unsigned comparisons,
// zero_extend, ite). Terms are bit-blasted to CNF and decided by a CDCL
// SAT solver with watched literals, VSIDS and Luby restarts.
//
// Usage: minismt [file.smt2]   (reads stdin when no file is given)

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

// ---------------------------------------------------------------------------
// CDCL SAT solver. Literal encoding: variable v -> 2v (positive), 2v+1
// (negated).
// ---------------------------------------------------------------------------

inline int neg(int lit) { return lit ^ 1; }
inline int var_of(int lit) { return lit >> 1; }

class Sat {
public:
  static constexpr int8_t kUndef = -1;

  int new_var() {
    int v = static_cast<int>(assign_.size());
    assign_.push_back(kUndef);
    level_.push_back(0);
    reason_.push_back(-1);
    activity_.push_back(0.0);
    phase_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    order_.push({0.0, v});
    return v;
  }

  int num_vars() const { return static_cast<int>(assign_.size()); }

  bool add_clause(std::vector<int> lits) {
    if (!ok_)
      return false;
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::vector<int> out;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (i + 1 < lits.size() && lits[i + 1] == neg(lits[i]))
        return true; // tautology
      int8_t v = value(lits[i]);
      if (v == 1)
        return true;
      if (v == kUndef)
        out.push_back(lits[i]);
    }
    if (out.empty()) {
      ok_ = false;
      return false;
    }
    if (out.size() == 1) {
      enqueue(out[0], -1);
      ok_ = propagate() == -1;
      return ok_;
    }
    int ci = static_cast<int>(clauses_.size());
    clauses_.push_back({std::move(out), false, 0.0});
    attach_watches(ci);
    return true;
  }

  bool solve() {
    if (!ok_)
      return false;
    seen_.assign(assign_.size(), 0);
    max_learnts_ = 4000 + 2 * static_cast<int64_t>(clauses_.size());
    int curr_restarts = 0;
    for (;;) {
      int64_t budget = 100 * luby(curr_restarts++);
      int res = search(budget);
      if (res != 0)
        return res > 0;
    }
  }

  bool model_value(int v) const { return assign_[v] == 1; }

private:
  struct Clause {
    std::vector<int> lits;
    bool learnt;
    double act;
  };
  struct Watcher {
    int clause;
    int blocker;
  };

  int8_t value(int lit) const {
    int8_t a = assign_[var_of(lit)];
    if (a == kUndef)
      return kUndef;
    return static_cast<int8_t>(a ^ (lit & 1));
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(int lit, int reason) {
    int v = var_of(lit);
    assign_[v] = static_cast<int8_t>(1 ^ (lit & 1));
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(lit);
  }

  void attach_watches(int ci) {
    Clause &c = clauses_[ci];
    watches_[neg(c.lits[0])].push_back({ci, c.lits[1]});
    watches_[neg(c.lits[1])].push_back({ci, c.lits[0]});
  }

  int propagate() {
    while (qhead_ < trail_.size()) {
      int p = trail_[qhead_++];
      std::vector<Watcher> &ws = watches_[p];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        Watcher w = ws[i++];
        if (value(w.blocker) == 1) {
          ws[j++] = w;
          continue;
        }
        Clause &c = clauses_[w.clause];
        int false_lit = neg(p);
        if (c.lits[0] == false_lit)
          std::swap(c.lits[0], c.lits[1]);
        int first = c.lits[0];
        if (value(first) == 1) {
          ws[j++] = {w.clause, first};
          continue;
        }
        bool found = false;
        for (std::size_t k = 2; k < c.lits.size(); ++k) {
          if (value(c.lits[k]) != 0) {
            std::swap(c.lits[1], c.lits[k]);
            watches_[neg(c.lits[1])].push_back({w.clause, first});
            found = true;
            break;
          }
        }
        if (found)
          continue;
        ws[j++] = {w.clause, first};
        if (value(first) == 0) {
          // conflict
          while (i < ws.size())
            ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return w.clause;
        }
        enqueue(first, w.clause);
      }
      ws.resize(j);
    }
    return -1;
  }

  void bump_var(int v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100)
      rescale_activity();
    order_.push({activity_[v], v});
  }

  void rescale_activity() {
    for (double &a : activity_)
      a *= 1e-100;
    var_inc_ *= 1e-100;
  }

  void analyze(int confl, std::vector<int> &out_learnt, int &out_btlevel) {
    out_learnt.assign(1, 0);
    if (seen_.size() < assign_.size())
      seen_.resize(assign_.size(), 0);
    int path = 0;
    int p = -1;
    std::size_t index = trail_.size();

    for (;;) {
      Clause &c = clauses_[confl];
      if (c.learnt)
        c.act += cla_inc_;
      for (std::size_t k = (p == -1 ? 0 : 1); k < c.lits.size(); ++k) {
        int q = c.lits[k];
        int v = var_of(q);
        if (!seen_[v] && level_[v] > 0) {
          seen_[v] = 1;
          bump_var(v);
          if (level_[v] >= decision_level())
            ++path;
          else
            out_learnt.push_back(q);
        }
      }
      while (!seen_[var_of(trail_[index - 1])])
        --index;
      p = trail_[--index];
      confl = reason_[var_of(p)];
      seen_[var_of(p)] = 0;
      --path;
      if (path == 0)
        break;
    }
    out_learnt[0] = neg(p);

    if (out_learnt.size() == 1) {
      out_btlevel = 0;
    } else {
      std::size_t max_i = 1;
      for (std::size_t k = 2; k < out_learnt.size(); ++k)
        if (level_[var_of(out_learnt[k])] >
            level_[var_of(out_learnt[max_i])])
          max_i = k;
      std::swap(out_learnt[1], out_learnt[max_i]);
      out_btlevel = level_[var_of(out_learnt[1])];
    }
    for (int q : out_learnt)
      seen_[var_of(q)] = 0;
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl)
      return;
    std::size_t bound = trail_lim_[lvl];
    for (std::size_t k = trail_.size(); k-- > bound;) {
      int v = var_of(trail_[k]);
      phase_[v] = static_cast<uint8_t>(assign_[v]);
      assign_[v] = kUndef;
      order_.push({activity_[v], v});
    }
    trail_.resize(bound);
    trail_lim_.resize(lvl);
    qhead_ = trail_.size();
  }

  int pick_branch() {
    while (!order_.empty()) {
      auto [act, v] = order_.top();
      if (assign_[v] != kUndef || act != activity_[v]) {
        order_.pop();
        continue;
      }
      order_.pop();
      return v;
    }
    for (int v = 0; v < num_vars(); ++v)
      if (assign_[v] == kUndef)
        return v;
    return -1;
  }

  void reduce_db() {
    std::vector<int> learnts;
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci)
      if (clauses_[ci].learnt && !locked(static_cast<int>(ci)) &&
          clauses_[ci].lits.size() > 2)
        learnts.push_back(static_cast<int>(ci));
    std::sort(learnts.begin(), learnts.end(), [&](int a, int b) {
      return clauses_[a].act < clauses_[b].act;
    });
    std::vector<char> remove(clauses_.size(), 0);
    for (std::size_t k = 0; k < learnts.size() / 2; ++k)
      remove[learnts[k]] = 1;
    if (learnts.empty())
      return;
    // rebuild watches without the removed clauses
    std::vector<int> remap(clauses_.size(), -1);
    std::vector<Clause> kept;
    kept.reserve(clauses_.size());
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      if (!remove[ci]) {
        remap[ci] = static_cast<int>(kept.size());
        kept.push_back(std::move(clauses_[ci]));
      }
    }
    clauses_ = std::move(kept);
    for (auto &r : reason_)
      if (r >= 0)
        r = remap[r];
    for (auto &ws : watches_)
      ws.clear();
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci)
      attach_watches(static_cast<int>(ci));
    num_learnts_ = 0;
    for (const auto &c : clauses_)
      if (c.learnt)
        ++num_learnts_;
  }

  bool locked(int ci) const {
    const Clause &c = clauses_[ci];
    return value(c.lits[0]) == 1 && reason_[var_of(c.lits[0])] == ci;
  }

  // returns +1 sat, -1 unsat, 0 restart
  int search(int64_t budget) {
    int64_t conflicts = 0;
    std::vector<int> learnt;
    for (;;) {
      int confl = propagate();
      if (confl != -1) {
        ++conflicts;
        if (decision_level() == 0) {
          ok_ = false;
          return -1;
        }
        int btlevel = 0;
        analyze(confl, learnt, btlevel);
        cancel_until(btlevel);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          int ci = static_cast<int>(clauses_.size());
          clauses_.push_back({learnt, true, cla_inc_});
          attach_watches(ci);
          ++num_learnts_;
          enqueue(learnt[0], ci);
        }
        var_inc_ /= 0.95;
        cla_inc_ /= 0.999;
        if (num_learnts_ > max_learnts_) {
          reduce_db();
          max_learnts_ = max_learnts_ * 11 / 10;
        }
      } else {
        if (conflicts >= budget) {
          cancel_until(0);
          return 0;
        }
        int v = pick_branch();
        if (v == -1)
          return 1;
        trail_lim_.push_back(trail_.size());
        enqueue(2 * v + (phase_[v] == 0 ? 1 : 0), -1);
      }
    }
  }

  // Luby sequence 1 1 2 1 1 2 4 ... as in MiniSat.
  static int64_t luby(int x) {
    int64_t size = 1;
    int seq = 0;
    while (size < x + 1) {
      ++seq;
      size = 2 * size + 1;
    }
    while (size - 1 != x) {
      size = (size - 1) >> 1;
      --seq;
      x = x % static_cast<int>(size);
    }
    return int64_t(1) << seq;
  }

  std::vector<int8_t> assign_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<double> activity_;
  std::vector<uint8_t> phase_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<Clause> clauses_;
  std::vector<int> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::priority_queue<std::pair<double, int>> order_;
  std::vector<char> seen_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  int64_t num_learnts_ = 0;
  int64_t max_learnts_ = 4000;
  bool ok_ = true;
};

// ---------------------------------------------------------------------------
// S-expressions
// ---------------------------------------------------------------------------

struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_atom = false;

  const SExpr &operator[](std::size_t i) const { return list[i]; }
  std::size_t size() const { return list.size(); }
};

class Reader {
public:
  explicit Reader(std::string text) : text_(std::move(text)) {}

  bool next(SExpr &out) {
    skip();
    if (i_ >= text_.size())
      return false;
    out = parse();
    return true;
  }

private:
  void skip() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == ';') {
        while (i_ < text_.size() && text_[i_] != '\n')
          ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else {
        return;
      }
    }
  }

  SExpr parse() {
    skip();
    if (i_ >= text_.size())
      throw std::runtime_error("unexpected end of input");
    SExpr node;
    if (text_[i_] == '(') {
      ++i_;
      for (;;) {
        skip();
        if (i_ >= text_.size())
          throw std::runtime_error("unbalanced parenthesis");
        if (text_[i_] == ')') {
          ++i_;
          return node;
        }
        node.list.push_back(parse());
      }
    }
    if (text_[i_] == '|') { // quoted symbol
      ++i_;
      node.is_atom = true;
      while (i_ < text_.size() && text_[i_] != '|')
        node.atom.push_back(text_[i_++]);
      ++i_;
      return node;
    }
    node.is_atom = true;
    while (i_ < text_.size() && !std::isspace(static_cast<unsigned char>(
                                    text_[i_])) &&
           text_[i_] != '(' && text_[i_] != ')' && text_[i_] != ';')
      node.atom.push_back(text_[i_++]);
    return node;
  }

  std::string text_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Bit blasting
// ---------------------------------------------------------------------------

struct Term {
  bool boolean = false;
  std::vector<int> bits; // LSB first for bit-vectors; single entry for Bool
};

class Blaster {
public:
  Blaster() {
    true_lit_ = 2 * sat_.new_var();
    sat_.add_clause({true_lit_});
  }

  Sat &sat() { return sat_; }
  int lit_true() const { return true_lit_; }
  int lit_false() const { return neg(true_lit_); }

  bool is_true(int l) const { return l == true_lit_; }
  bool is_false(int l) const { return l == neg(true_lit_); }
  bool is_const(int l) const { return is_true(l) || is_false(l); }

  int fresh() { return 2 * sat_.new_var(); }

  int mk_and(int a, int b) {
    if (is_false(a) || is_false(b))
      return lit_false();
    if (is_true(a))
      return b;
    if (is_true(b))
      return a;
    if (a == b)
      return a;
    if (a == neg(b))
      return lit_false();
    int g = fresh();
    sat_.add_clause({neg(g), a});
    sat_.add_clause({neg(g), b});
    sat_.add_clause({g, neg(a), neg(b)});
    return g;
  }

  int mk_or(int a, int b) { return neg(mk_and(neg(a), neg(b))); }

  int mk_xor(int a, int b) {
    if (is_false(a))
      return b;
    if (is_false(b))
      return a;
    if (is_true(a))
      return neg(b);
    if (is_true(b))
      return neg(a);
    if (a == b)
      return lit_false();
    if (a == neg(b))
      return lit_true();
    int g = fresh();
    sat_.add_clause({neg(g), a, b});
    sat_.add_clause({neg(g), neg(a), neg(b)});
    sat_.add_clause({g, neg(a), b});
    sat_.add_clause({g, a, neg(b)});
    return g;
  }

  int mk_ite(int c, int a, int b) {
    if (is_true(c))
      return a;
    if (is_false(c))
      return b;
    if (a == b)
      return a;
    int g = fresh();
    sat_.add_clause({neg(c), neg(a), g});
    sat_.add_clause({neg(c), a, neg(g)});
    sat_.add_clause({c, neg(b), g});
    sat_.add_clause({c, b, neg(g)});
    return g;
  }

  int mk_eq(int a, int b) { return neg(mk_xor(a, b)); }

  std::vector<int> add_bv(const std::vector<int> &a,
                          const std::vector<int> &b) {
    std::vector<int> sum(a.size());
    int carry = lit_false();
    for (std::size_t i = 0; i < a.size(); ++i) {
      int axb = mk_xor(a[i], b[i]);
      sum[i] = mk_xor(axb, carry);
      carry = mk_or(mk_and(a[i], b[i]), mk_and(axb, carry));
    }
    return sum;
  }

  int ule_bv(const std::vector<int> &a, const std::vector<int> &b) {
    // a <= b scanned from MSB down
    int res = lit_true(); // equal-so-far tail: <= holds
    for (std::size_t i = 0; i < a.size(); ++i) {
      int ai = a[i], bi = b[i];
      // lower than at this bit, or equal and result below
      res = mk_or(mk_and(neg(ai), bi), mk_and(mk_eq(ai, bi), res));
    }
    return res;
  }

  int eq_bv(const std::vector<int> &a, const std::vector<int> &b) {
    int res = lit_true();
    for (std::size_t i = 0; i < a.size(); ++i)
      res = mk_and(res, mk_eq(a[i], b[i]));
    return res;
  }

private:
  Sat sat_;
  int true_lit_;
};

// ---------------------------------------------------------------------------
// SMT-LIB command interpreter
// ---------------------------------------------------------------------------

class Interpreter {
public:
  int run(const std::string &text) {
    Reader reader(text);
    SExpr cmd;
    while (reader.next(cmd)) {
      if (!cmd.is_atom && !cmd.list.empty() && cmd[0].is_atom) {
        if (!dispatch(cmd))
          return 0; // (exit)
      }
    }
    return 0;
  }

private:
  bool dispatch(const SExpr &cmd) {
    const std::string &op = cmd[0].atom;
    if (op == "set-logic" || op == "set-option" || op == "set-info" ||
        op == "push" || op == "pop")
      return true;
    if (op == "exit")
      return false;
    if (op == "declare-const") {
      declare(cmd[1].atom, cmd[2]);
      return true;
    }
    if (op == "declare-fun") {
      if (!cmd[2].list.empty())
        throw std::runtime_error("only 0-ary functions are supported");
      declare(cmd[1].atom, cmd[3]);
      return true;
    }
    if (op == "assert") {
      Term t = eval(cmd[1]);
      if (!t.boolean)
        throw std::runtime_error("assert expects a Bool term");
      blaster_.sat().add_clause({t.bits[0]});
      return true;
    }
    if (op == "check-sat") {
      sat_result_ = blaster_.sat().solve() ? 1 : 0;
      std::cout << (sat_result_ == 1 ? "sat" : "unsat") << "\n"
                << std::flush;
      return true;
    }
    if (op == "get-value" || op == "get-model") {
      if (sat_result_ != 1) {
        std::cout << "(error \"model is not available\")\n" << std::flush;
        return true;
      }
      std::cout << "(";
      bool first = true;
      if (op == "get-value") {
        for (const auto &sym : cmd[1].list) {
          print_value(sym.atom, first);
          first = false;
        }
      } else {
        for (const auto &[name, t] : symbols_) {
          print_value(name, first);
          first = false;
        }
      }
      std::cout << ")\n" << std::flush;
      return true;
    }
    throw std::runtime_error("unsupported command " + op);
  }

  void declare(const std::string &name, const SExpr &sort) {
    Term t;
    if (sort.is_atom && sort.atom == "Bool") {
      t.boolean = true;
      t.bits = {blaster_.fresh()};
    } else if (!sort.is_atom && sort.size() == 3 && sort[1].atom == "BitVec") {
      t.boolean = false;
      unsigned w = static_cast<unsigned>(std::stoul(sort[2].atom));
      for (unsigned i = 0; i < w; ++i)
        t.bits.push_back(blaster_.fresh());
    } else {
      throw std::runtime_error("unsupported sort for " + name);
    }
    symbols_[name] = t;
  }

  void print_value(const std::string &name, bool first) {
    auto it = symbols_.find(name);
    if (it == symbols_.end())
      throw std::runtime_error("get-value of undeclared symbol " + name);
    const Term &t = it->second;
    if (!first)
      std::cout << "\n ";
    std::cout << "(" << name << " ";
    if (t.boolean) {
      std::cout << (lit_model(t.bits[0]) ? "true" : "false");
    } else {
      std::cout << "#b";
      for (std::size_t i = t.bits.size(); i-- > 0;)
        std::cout << (lit_model(t.bits[i]) ? '1' : '0');
    }
    std::cout << ")";
  }

  bool lit_model(int lit) const {
    if (blaster_.is_true(lit))
      return true;
    if (blaster_.is_false(lit))
      return false;
    bool v = const_cast<Blaster &>(blaster_).sat().model_value(var_of(lit));
    return (lit & 1) ? !v : v;
  }

  Term eval_bool_nary(const SExpr &e, const std::string &op) {
    std::vector<int> lits;
    for (std::size_t i = 1; i < e.size(); ++i) {
      Term t = eval(e[i]);
      require_bool(t, op);
      lits.push_back(t.bits[0]);
    }
    int acc;
    if (op == "and") {
      acc = blaster_.lit_true();
      for (int l : lits)
        acc = blaster_.mk_and(acc, l);
    } else if (op == "or") {
      acc = blaster_.lit_false();
      for (int l : lits)
        acc = blaster_.mk_or(acc, l);
    } else { // xor
      acc = blaster_.lit_false();
      for (int l : lits)
        acc = blaster_.mk_xor(acc, l);
    }
    return make_bool(acc);
  }

  static void require_bool(const Term &t, const std::string &where) {
    if (!t.boolean)
      throw std::runtime_error(where + " expects Bool arguments");
  }

  static Term make_bool(int lit) {
    Term t;
    t.boolean = true;
    t.bits = {lit};
    return t;
  }

  Term eval(const SExpr &e) {
    if (e.is_atom)
      return eval_atom(e.atom);

    if (e.list.empty())
      throw std::runtime_error("empty term");

    // ((_ zero_extend k) t) and (_ bvN w)
    if (!e[0].is_atom) {
      if (e[0].size() == 3 && e[0][1].atom == "zero_extend") {
        Term t = eval(e[1]);
        unsigned k = static_cast<unsigned>(std::stoul(e[0][2].atom));
        for (unsigned i = 0; i < k; ++i)
          t.bits.push_back(blaster_.lit_false());
        return t;
      }
      throw std::runtime_error("unsupported indexed operator");
    }

    const std::string &op = e[0].atom;
    if (op == "and" || op == "or" || op == "xor")
      return eval_bool_nary(e, op);
    if (op == "not") {
      Term t = eval(e[1]);
      require_bool(t, "not");
      return make_bool(neg(t.bits[0]));
    }
    if (op == "=>") {
      Term a = eval(e[1]), b = eval(e[2]);
      require_bool(a, "=>");
      require_bool(b, "=>");
      return make_bool(blaster_.mk_or(neg(a.bits[0]), b.bits[0]));
    }
    if (op == "=") {
      Term a = eval(e[1]);
      int acc = blaster_.lit_true();
      for (std::size_t i = 2; i < e.size(); ++i) {
        Term b = eval(e[i]);
        if (a.boolean != b.boolean || a.bits.size() != b.bits.size())
          throw std::runtime_error("= applied to mismatched sorts");
        int eq = a.boolean ? blaster_.mk_eq(a.bits[0], b.bits[0])
                           : blaster_.eq_bv(a.bits, b.bits);
        acc = blaster_.mk_and(acc, eq);
        a = b;
      }
      return make_bool(acc);
    }
    if (op == "distinct") {
      Term a = eval(e[1]), b = eval(e[2]);
      int eq = a.boolean ? blaster_.mk_eq(a.bits[0], b.bits[0])
                         : blaster_.eq_bv(a.bits, b.bits);
      return make_bool(neg(eq));
    }
    if (op == "ite") {
      Term c = eval(e[1]), a = eval(e[2]), b = eval(e[3]);
      require_bool(c, "ite condition");
      if (a.bits.size() != b.bits.size() || a.boolean != b.boolean)
        throw std::runtime_error("ite branches have mismatched sorts");
      Term out;
      out.boolean = a.boolean;
      for (std::size_t i = 0; i < a.bits.size(); ++i)
        out.bits.push_back(blaster_.mk_ite(c.bits[0], a.bits[i], b.bits[i]));
      return out;
    }
    if (op == "bvadd") {
      Term acc = eval(e[1]);
      for (std::size_t i = 2; i < e.size(); ++i) {
        Term b = eval(e[i]);
        if (b.bits.size() != acc.bits.size())
          throw std::runtime_error("bvadd width mismatch");
        acc.bits = blaster_.add_bv(acc.bits, b.bits);
      }
      return acc;
    }
    if (op == "bvule" || op == "bvult" || op == "bvuge" || op == "bvugt") {
      Term a = eval(e[1]), b = eval(e[2]);
      if (a.bits.size() != b.bits.size())
        throw std::runtime_error("comparison width mismatch");
      int le_ab = blaster_.ule_bv(a.bits, b.bits);
      int le_ba = blaster_.ule_bv(b.bits, a.bits);
      if (op == "bvule")
        return make_bool(le_ab);
      if (op == "bvuge")
        return make_bool(le_ba);
      if (op == "bvult")
        return make_bool(neg(le_ba));
      return make_bool(neg(le_ab));
    }
    if (op == "bvand" || op == "bvor" || op == "bvxor") {
      Term a = eval(e[1]), b = eval(e[2]);
      Term out;
      out.boolean = false;
      for (std::size_t i = 0; i < a.bits.size(); ++i) {
        int bit = op == "bvand" ? blaster_.mk_and(a.bits[i], b.bits[i])
                  : op == "bvor" ? blaster_.mk_or(a.bits[i], b.bits[i])
                                 : blaster_.mk_xor(a.bits[i], b.bits[i]);
        out.bits.push_back(bit);
      }
      return out;
    }
    if (op == "bvnot") {
      Term a = eval(e[1]);
      for (int &b : a.bits)
        b = neg(b);
      return a;
    }
    throw std::runtime_error("unsupported operator " + op);
  }

  Term eval_atom(const std::string &atom) {
    if (atom == "true")
      return make_bool(blaster_.lit_true());
    if (atom == "false")
      return make_bool(blaster_.lit_false());
    if (atom.rfind("#b", 0) == 0) {
      Term t;
      t.boolean = false;
      for (std::size_t i = atom.size(); i-- > 2;)
        t.bits.push_back(atom[i] == '1' ? blaster_.lit_true()
                                        : blaster_.lit_false());
      return t;
    }
    if (atom.rfind("#x", 0) == 0) {
      Term t;
      t.boolean = false;
      for (std::size_t i = atom.size(); i-- > 2;) {
        int v = std::stoi(atom.substr(i, 1), nullptr, 16);
        for (int b = 0; b < 4; ++b)
          t.bits.push_back((v >> b) & 1 ? blaster_.lit_true()
                                        : blaster_.lit_false());
      }
      return t;
    }
    auto it = symbols_.find(atom);
    if (it == symbols_.end())
      throw std::runtime_error("undeclared symbol " + atom);
    return it->second;
  }

  Blaster blaster_;
  std::map<std::string, Term> symbols_;
  int sat_result_ = -1;
};

} // namespace

int main(int argc, char **argv) {
  std::ios::sync_with_stdio(false);
  std::string text;
  if (argc > 1) {
    std::ifstream in(argv[1]);
    if (!in.good()) {
      std::cerr << "minismt: cannot open " << argv[1] << "\n";
      return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  }
  try {
    Interpreter interp;
    return interp.run(text);
  } catch (const std::exception &ex) {
    std::cout << "(error \"" << ex.what() << "\")\n";
    return 1;
  }
}
