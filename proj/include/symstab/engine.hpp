#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "symstab/expr.hpp"
#include "symstab/program.hpp"
#include "symstab/tableau.hpp"

namespace symstab {

using ClassicalStore = std::map<std::string, BoolExpr>;

struct RecordedProb {
  std::string symbol; // coin-flip symbol, probability exactly 1/2
};

// Symbolic configuration <S, store, state, P, phi>. The continuation is a
// stack of statement pointers into the (externally owned) program.
struct Config {
  std::vector<const Stmt *> cont;
  ClassicalStore store;
  SymTableau state;
  std::vector<RecordedProb> probs;
  std::vector<Formula> pc; // conjunction of assumptions
  std::vector<std::pair<std::string, BoolExpr>> measurements;

  bool terminal() const { return cont.empty(); }

  Formula path_condition() const { return f_and(pc); }

  // A conjunct that already folded to false marks the path infeasible
  // without any solver help.
  bool pc_syntactically_false() const {
    for (const auto &f : pc)
      if (is_const_formula(f, false))
        return true;
    return false;
  }
};

using Terminal = Config;

struct EngineOptions {
  std::size_t fork_budget = std::size_t(1) << 16;
  bool drop_false_branches = true;
};

struct ForkBudgetError : std::runtime_error {
  SourcePos pos;
  ForkBudgetError(SourcePos p, const std::string &msg)
      : std::runtime_error(msg), pos(p) {}
};

class Engine {
public:
  Engine(const Program &program, ExternalRegistry externals = {},
         EngineOptions opts = {})
      : program_(program), externals_(std::move(externals)), opts_(opts) {}

  FreshGen &fresh() { return fresh_; }

  // Initial configuration: inputs pre-bound to symbols of their own name,
  // quantum state as given (defaults to |0...0>).
  Config initial_config(std::optional<SymTableau> state = std::nullopt,
                        std::vector<Formula> pc = {}) {
    Config c;
    c.state = state ? std::move(*state) : SymTableau(program_.n_qubits);
    if (c.state.num_qubits() != program_.n_qubits)
      throw std::invalid_argument("state size does not match program");
    for (const auto &v : program_.inputs) {
      c.store[v] = bvar(v);
      fresh_.avoid(v);
    }
    c.pc = std::move(pc);
    push_seq(c, program_.body);
    return c;
  }

  // One transition of the symbolic rules; yields one successor, or two for
  // a conditional.
  std::vector<Config> step(Config c) {
    if (c.terminal())
      throw std::logic_error("step on a terminal configuration");
    const Stmt *s = c.cont.back();
    c.cont.pop_back();
    switch (s->kind) {
    case StmtKind::Assign: {
      BoolExpr val = eval_classical(s->expr, c.store, s->pos);
      c.store[s->var] = val;
      return one(std::move(c));
    }
    case StmtKind::ExtCall: {
      auto it = externals_.find(s->fname);
      if (it == externals_.end())
        throw std::runtime_error("unknown external function \"" + s->fname +
                                 "\"");
      const ExternalFnSpec &spec = it->second;
      if (spec.in_arity != s->ins.size() || spec.out_arity != s->outs.size())
        throw std::runtime_error("external arity mismatch for \"" + s->fname +
                                 "\"");
      std::vector<BoolExpr> inputs;
      for (const auto &x : s->ins)
        inputs.push_back(lookup(x, c.store, s->pos));
      std::vector<BoolExpr> out_syms;
      for (const auto &y : s->outs)
        out_syms.push_back(fresh_.fresh(y));
      c.pc.push_back(spec.condition(inputs, out_syms));
      for (std::size_t i = 0; i < s->outs.size(); ++i)
        c.store[s->outs[i]] = out_syms[i];
      return one(std::move(c));
    }
    case StmtKind::Unitary: {
      c.state.apply_gate(s->gate, s->qubits);
      return one(std::move(c));
    }
    case StmtKind::SymPauli: {
      BoolExpr guard = eval_classical(s->expr, c.store, s->pos);
      c.state.apply_sym_pauli(s->tau, guard, s->qubits[0]);
      return one(std::move(c));
    }
    case StmtKind::Measure: {
      MeasResult r = c.state.measure(s->qubits[0], fresh_);
      c.store[s->var] = r.outcome;
      c.measurements.push_back({s->var, r.outcome});
      if (r.kind == MeasResult::Kind::Random)
        c.probs.push_back({r.outcome->name});
      return one(std::move(c));
    }
    case StmtKind::Seq: {
      push_seq(c, s->body);
      return one(std::move(c));
    }
    case StmtKind::If: {
      BoolExpr cond = eval_classical(s->expr, c.store, s->pos);
      Config then_c = c;
      then_c.pc.push_back(f_atom(cond));
      push_seq(then_c, s->body);
      Config else_c = std::move(c);
      else_c.pc.push_back(f_atom(bnot(cond)));
      push_seq(else_c, s->else_body);
      return {std::move(then_c), std::move(else_c)};
    }
    }
    throw std::logic_error("bad statement");
  }

  // Depth-first closure of step; children explored then-branch first.
  std::vector<Terminal> explore(Config init) {
    std::vector<Terminal> out;
    std::vector<Config> stack;
    stack.push_back(std::move(init));
    std::size_t created = 1;
    while (!stack.empty()) {
      Config c = std::move(stack.back());
      stack.pop_back();
      if (c.terminal()) {
        out.push_back(std::move(c));
        continue;
      }
      SourcePos pos = c.cont.back()->pos;
      std::vector<Config> next = step(std::move(c));
      created += next.size() - 1;
      if (created > opts_.fork_budget)
        throw ForkBudgetError(pos, "fork budget exceeded at line " +
                                       std::to_string(pos.line));
      // reversed so the then-branch is on top of the stack
      for (auto it = next.rbegin(); it != next.rend(); ++it) {
        if (opts_.drop_false_branches && it->pc_syntactically_false())
          continue;
        stack.push_back(std::move(*it));
      }
    }
    return out;
  }

  std::vector<Terminal> explore() { return explore(initial_config()); }

private:
  static std::vector<Config> one(Config c) {
    std::vector<Config> v;
    v.push_back(std::move(c));
    return v;
  }

  static void push_seq(Config &c, const std::vector<Stmt> &body) {
    for (auto it = body.rbegin(); it != body.rend(); ++it)
      c.cont.push_back(&*it);
  }

  static BoolExpr lookup(const std::string &name, const ClassicalStore &store,
                         SourcePos pos) {
    auto it = store.find(name);
    if (it == store.end())
      throw std::runtime_error("line " + std::to_string(pos.line) +
                               ": unassigned variable \"" + name + "\"");
    return it->second;
  }

  static BoolExpr eval_classical(const BoolExpr &e, const ClassicalStore &store,
                                 SourcePos pos) {
    return substitute(
        e, [&](const std::string &name) { return lookup(name, store, pos); });
  }

  const Program &program_;
  ExternalRegistry externals_;
  EngineOptions opts_;
  FreshGen fresh_;
};

// ---------------------------------------------------------------------------
// Concrete reference executor (operational semantics)
// ---------------------------------------------------------------------------

struct ConcreteResult {
  std::map<std::string, bool> store;
  ConcreteTableau state;
  double probability = 1.0;
  std::size_t coin_flips = 0;
  std::vector<std::pair<std::string, bool>> measurements;
};

// Answers external calls during a concrete run. Returning nullopt defers
// to the registered concrete implementation.
using ExternalResolver = std::function<std::optional<std::vector<bool>>(
    const std::string &, const std::vector<bool> &)>;

template <typename Rng>
ConcreteResult concrete_run(const Program &program,
                            const std::map<std::string, bool> &inputs,
                            ConcreteTableau state, Rng &rng,
                            const ExternalRegistry &externals = {},
                            const ExternalResolver &resolver = nullptr) {
  if (state.num_qubits() != program.n_qubits)
    throw std::invalid_argument("state size does not match program");
  ConcreteResult r;
  r.store = inputs;
  r.state = std::move(state);

  auto lookup = [&](const std::string &name) {
    auto it = r.store.find(name);
    if (it == r.store.end())
      throw std::runtime_error("unassigned variable \"" + name + "\"");
    return it->second;
  };

  std::function<void(const std::vector<Stmt> &)> run_seq =
      [&](const std::vector<Stmt> &body) {
        for (const auto &s : body) {
          switch (s.kind) {
          case StmtKind::Assign:
            r.store[s.var] = eval(s.expr, r.store);
            break;
          case StmtKind::ExtCall: {
            std::vector<bool> ins;
            for (const auto &x : s.ins)
              ins.push_back(lookup(x));
            std::optional<std::vector<bool>> outs;
            if (resolver)
              outs = resolver(s.fname, ins);
            if (!outs) {
              auto it = externals.find(s.fname);
              if (it == externals.end() || !it->second.concrete)
                throw std::runtime_error(
                    "no concrete implementation for external \"" + s.fname +
                    "\"");
              outs = it->second.concrete(ins);
            }
            if (outs->size() != s.outs.size())
              throw std::runtime_error("external output arity mismatch");
            for (std::size_t i = 0; i < s.outs.size(); ++i)
              r.store[s.outs[i]] = (*outs)[i];
            break;
          }
          case StmtKind::Unitary:
            r.state.apply_gate(s.gate, s.qubits);
            break;
          case StmtKind::SymPauli:
            r.state.apply_pauli_if(s.tau, eval(s.expr, r.store), s.qubits[0]);
            break;
          case StmtKind::Measure: {
            auto oc = r.state.measure(s.qubits[0], rng);
            if (oc.random) {
              r.probability *= 0.5;
              ++r.coin_flips;
            }
            r.store[s.var] = oc.bit;
            r.measurements.push_back({s.var, oc.bit});
            break;
          }
          case StmtKind::Seq:
            run_seq(s.body);
            break;
          case StmtKind::If:
            run_seq(eval(s.expr, r.store) ? s.body : s.else_body);
            break;
          }
        }
      };
  run_seq(program.body);
  return r;
}

// ---------------------------------------------------------------------------
// Instrumented co-execution: runs the concrete semantics and drives the
// symbolic rules down the matching path, building the witnessing valuation
// as it goes. Returns the matching terminal plus the concrete result.
// ---------------------------------------------------------------------------

struct CoExecution {
  Terminal terminal;
  ConcreteResult concrete;
  Valuation valuation;
};

template <typename Rng>
CoExecution co_execute(Engine &engine, const ExternalRegistry &externals,
                       Config init, ConcreteTableau concrete_state,
                       const std::map<std::string, bool> &inputs,
                       Valuation valuation, Rng &rng) {
  ConcreteResult conc;
  conc.store = inputs;
  conc.state = std::move(concrete_state);

  Config cur = std::move(init);
  while (!cur.terminal()) {
    const Stmt *s = cur.cont.back();
    std::size_t probs_before = cur.probs.size();
    std::size_t pc_before = cur.pc.size();
    std::vector<Config> next = engine.step(std::move(cur));

    switch (s->kind) {
    case StmtKind::Measure: {
      Config &c = next[0];
      if (c.probs.size() > probs_before) {
        // random branch: the concrete coin decides the fresh symbol
        auto oc = conc.state.measure(s->qubits[0], rng);
        if (!oc.random)
          throw std::logic_error("symbolic/concrete measurement disagree");
        conc.probability *= 0.5;
        ++conc.coin_flips;
        conc.store[s->var] = oc.bit;
        conc.measurements.push_back({s->var, oc.bit});
        valuation[c.probs.back().symbol] = oc.bit;
      } else {
        auto oc = conc.state.measure(s->qubits[0], rng);
        if (oc.random)
          throw std::logic_error("symbolic/concrete measurement disagree");
        conc.store[s->var] = oc.bit;
        conc.measurements.push_back({s->var, oc.bit});
        if (eval(c.store.at(s->var), valuation) != oc.bit)
          throw std::logic_error("deterministic outcome mismatch");
      }
      cur = std::move(next[0]);
      break;
    }
    case StmtKind::ExtCall: {
      Config &c = next[0];
      std::vector<bool> ins;
      for (const auto &x : s->ins)
        ins.push_back(conc.store.at(x));
      auto it = externals.find(s->fname);
      if (it == externals.end() || !it->second.concrete)
        throw std::runtime_error("no concrete implementation for external \"" +
                                 s->fname + "\"");
      std::vector<bool> outs = it->second.concrete(ins);
      for (std::size_t i = 0; i < s->outs.size(); ++i) {
        conc.store[s->outs[i]] = outs[i];
        valuation[c.store.at(s->outs[i])->name] = outs[i];
      }
      if (!eval(c.pc.back(), valuation))
        throw std::logic_error("external condition failed on concrete run");
      cur = std::move(next[0]);
      break;
    }
    case StmtKind::If: {
      bool taken = eval(s->expr, conc.store);
      Config &chosen = next[taken ? 0 : 1];
      if (!eval(chosen.pc[pc_before], valuation))
        throw std::logic_error("path condition conjunct false on chosen path");
      cur = std::move(chosen);
      break;
    }
    case StmtKind::Assign:
      conc.store[s->var] = eval(s->expr, conc.store);
      cur = std::move(next[0]);
      break;
    case StmtKind::SymPauli:
      conc.state.apply_pauli_if(s->tau, eval(s->expr, conc.store),
                                s->qubits[0]);
      cur = std::move(next[0]);
      break;
    case StmtKind::Unitary:
      conc.state.apply_gate(s->gate, s->qubits);
      cur = std::move(next[0]);
      break;
    case StmtKind::Seq:
      cur = std::move(next[0]);
      break;
    }
  }
  return {std::move(cur), std::move(conc), std::move(valuation)};
}

} // namespace symstab
