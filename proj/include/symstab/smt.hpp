#pragma once

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <optional>
#include <poll.h>
#include <signal.h>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "symstab/expr.hpp"

namespace symstab {

// ---------------------------------------------------------------------------
// Script emission
// ---------------------------------------------------------------------------

struct SmtScript {
  std::string text;
  std::vector<DeclaredVar> decls; // in first-use order
};

namespace detail {

inline void first_use_order(const Formula &f, std::vector<DeclaredVar> &out,
                            std::set<std::string> &seen);

inline void first_use_order(const BoolExpr &e, std::vector<DeclaredVar> &out,
                            std::set<std::string> &seen) {
  if (e->op == BoolOp::Var) {
    if (seen.insert(e->name).second)
      out.push_back({e->name, 0});
    return;
  }
  for (const auto &k : e->kids)
    first_use_order(k, out, seen);
}

inline void first_use_order(const BvExpr &e, std::vector<DeclaredVar> &out,
                            std::set<std::string> &seen) {
  switch (e->op) {
  case BvOp::Var:
    if (seen.insert(e->name).second)
      out.push_back({e->name, e->width});
    return;
  case BvOp::FromBool:
    first_use_order(e->guard, out, seen);
    return;
  default:
    for (const auto &k : e->kids)
      first_use_order(k, out, seen);
  }
}

inline void first_use_order(const Formula &f, std::vector<DeclaredVar> &out,
                            std::set<std::string> &seen) {
  switch (f->op) {
  case FormulaOp::Atom:
    first_use_order(f->atom, out, seen);
    return;
  case FormulaOp::BvUle:
  case FormulaOp::BvEq:
    first_use_order(f->lhs, out, seen);
    first_use_order(f->rhs, out, seen);
    return;
  default:
    for (const auto &k : f->kids)
      first_use_order(k, out, seen);
  }
}

} // namespace detail

// Assumptions are asserted first, then the goal as-is; a caller checking
// validity negates the goal itself.
inline SmtScript emit_script(const Formula &goal,
                             const std::vector<Formula> &assumptions = {},
                             bool produce_models = true) {
  SmtScript script;
  std::set<std::string> seen;
  for (const auto &a : assumptions)
    detail::first_use_order(a, script.decls, seen);
  detail::first_use_order(goal, script.decls, seen);

  std::string &out = script.text;
  out += "(set-logic QF_BV)\n";
  if (produce_models)
    out += "(set-option :produce-models true)\n";
  for (const auto &d : script.decls) {
    out += "(declare-const " + d.name;
    out += d.width == 0 ? " Bool)\n"
                        : " (_ BitVec " + std::to_string(d.width) + "))\n";
  }
  for (const auto &a : assumptions)
    out += "(assert " + to_smt(a) + ")\n";
  out += "(assert " + to_smt(goal) + ")\n";
  out += "(check-sat)\n";
  if (produce_models && !script.decls.empty()) {
    out += "(get-value (";
    for (std::size_t i = 0; i < script.decls.size(); ++i)
      out += (i ? " " : "") + script.decls[i].name;
    out += "))\n";
  }
  return script;
}

// ---------------------------------------------------------------------------
// Solver process driver
// ---------------------------------------------------------------------------

struct SolverModel {
  Valuation bools;
  std::map<std::string, uint64_t> words;
};

struct SolverVerdict {
  enum class Kind { Sat, Unsat, Unknown };
  Kind kind;
  SolverModel model;       // Sat only
  std::string reason;      // Unknown only
  std::string raw_output;  // verbatim solver stdout for diagnostics

  bool sat() const { return kind == Kind::Sat; }
  bool unsat() const { return kind == Kind::Unsat; }
};

struct SolverConfig {
  std::string command;            // executable
  std::vector<std::string> args;  // extra args; script path is appended
  int timeout_ms = 0;             // 0 means no limit
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct RunResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string out;
};

// Runs `argv` capturing stdout+stderr, killing the child on timeout.
inline RunResult run_process(const std::vector<std::string> &argv,
                             int timeout_ms) {
  int fds[2];
  if (pipe(fds) != 0)
    throw SolverError("pipe failed");
  pid_t pid = fork();
  if (pid < 0)
    throw SolverError("fork failed");
  if (pid == 0) {
    dup2(fds[1], STDOUT_FILENO);
    dup2(fds[1], STDERR_FILENO);
    close(fds[0]);
    close(fds[1]);
    std::vector<char *> cargv;
    for (const auto &a : argv)
      cargv.push_back(const_cast<char *>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    std::perror("exec");
    _exit(127);
  }
  close(fds[1]);

  RunResult r;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(timeout_ms);
  char buf[4096];
  while (true) {
    int wait_ms = -1;
    if (timeout_ms > 0) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                      deadline - std::chrono::steady_clock::now())
                      .count();
      if (left <= 0) {
        kill(pid, SIGKILL);
        r.timed_out = true;
        wait_ms = -1;
      } else {
        wait_ms = static_cast<int>(left);
      }
    }
    struct pollfd pfd {
      fds[0], POLLIN, 0
    };
    int pr = poll(&pfd, 1, r.timed_out ? -1 : wait_ms);
    if (pr == 0) {
      kill(pid, SIGKILL);
      r.timed_out = true;
      continue;
    }
    ssize_t got = read(fds[0], buf, sizeof buf);
    if (got < 0) {
      if (errno == EINTR)
        continue;
      break;
    }
    if (got == 0)
      break;
    r.out.append(buf, static_cast<std::size_t>(got));
  }
  close(fds[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Minimal s-expression reader for get-value responses.
struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_atom = false;
};

inline SExpr parse_sexpr(const std::string &s, std::size_t &i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
    ++i;
  SExpr node;
  if (i >= s.size())
    return node;
  if (s[i] == '(') {
    ++i;
    while (true) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
        ++i;
      if (i >= s.size() || s[i] == ')') {
        ++i;
        return node;
      }
      node.list.push_back(parse_sexpr(s, i));
    }
  }
  node.is_atom = true;
  while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) &&
         s[i] != '(' && s[i] != ')')
    node.atom.push_back(s[i++]);
  return node;
}

inline bool parse_value_atom(const std::string &atom, uint64_t &value) {
  if (atom == "true") {
    value = 1;
    return true;
  }
  if (atom == "false") {
    value = 0;
    return true;
  }
  if (atom.rfind("#b", 0) == 0) {
    value = 0;
    for (std::size_t k = 2; k < atom.size(); ++k)
      value = (value << 1) | (atom[k] == '1' ? 1 : 0);
    return true;
  }
  if (atom.rfind("#x", 0) == 0) {
    value = std::stoull(atom.substr(2), nullptr, 16);
    return true;
  }
  return false;
}

} // namespace detail

// Writes the script to a temporary file and runs the solver on it.
inline SolverVerdict check(const SmtScript &script,
                           const SolverConfig &config) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path();
  fs::path path =
      dir / ("symstab-query-" + std::to_string(getpid()) + "-" +
             std::to_string(
                 std::chrono::steady_clock::now().time_since_epoch().count()) +
             ".smt2");
  {
    std::ofstream out(path);
    out << script.text;
  }
  std::vector<std::string> argv{config.command};
  for (const auto &a : config.args)
    argv.push_back(a);
  argv.push_back(path.string());
  detail::RunResult run = detail::run_process(argv, config.timeout_ms);
  fs::remove(path);

  SolverVerdict v;
  v.raw_output = run.out;
  if (run.timed_out) {
    v.kind = SolverVerdict::Kind::Unknown;
    v.reason = "timeout";
    return v;
  }

  std::istringstream lines(run.out);
  std::string first;
  while (std::getline(lines, first)) {
    if (!first.empty())
      break;
  }
  if (first == "unsat") {
    v.kind = SolverVerdict::Kind::Unsat;
    return v;
  }
  if (first == "unknown") {
    v.kind = SolverVerdict::Kind::Unknown;
    v.reason = "solver reported unknown";
    return v;
  }
  if (first != "sat") {
    if (run.exit_code == 127)
      throw SolverError("solver not found: " + config.command);
    throw SolverError("unparsable solver output from " + config.command +
                      ": " + run.out);
  }

  v.kind = SolverVerdict::Kind::Sat;
  std::string rest;
  std::getline(lines, rest, '\0');
  std::size_t i = 0;
  detail::SExpr values = detail::parse_sexpr(rest, i);
  for (const auto &pair : values.list) {
    if (pair.list.size() != 2 || !pair.list[0].is_atom)
      continue;
    const std::string &name = pair.list[0].atom;
    uint64_t value = 0;
    if (!pair.list[1].is_atom ||
        !detail::parse_value_atom(pair.list[1].atom, value))
      continue;
    bool is_bool =
        pair.list[1].atom == "true" || pair.list[1].atom == "false";
    if (is_bool)
      v.model.bools[name] = value != 0;
    else
      v.model.words[name] = value;
  }
  // every declared symbol must be bound in a sat model
  for (const auto &d : script.decls) {
    if (d.width == 0) {
      if (!v.model.bools.count(d.name))
        v.model.bools[d.name] = false;
    } else if (!v.model.words.count(d.name)) {
      v.model.words[d.name] = 0;
    }
  }
  return v;
}

inline SolverVerdict check(const Formula &goal,
                           const std::vector<Formula> &assumptions,
                           const SolverConfig &config) {
  return check(emit_script(goal, assumptions), config);
}

// ---------------------------------------------------------------------------
// Solver discovery: explicit override, well-known solvers, then the
// bundled fallback binary.
// ---------------------------------------------------------------------------

inline bool command_exists(const std::string &cmd) {
  std::string probe = "command -v " + cmd + " >/dev/null 2>&1";
  return std::system(probe.c_str()) == 0;
}

inline std::optional<SolverConfig>
find_solver(const std::string &override_cmd = "",
            const std::string &self_dir = "") {
  auto split = [](const std::string &s) {
    std::vector<std::string> parts;
    std::istringstream ss(s);
    std::string w;
    while (ss >> w)
      parts.push_back(w);
    return parts;
  };
  std::string env;
  if (const char *e = std::getenv("SYMSTAB_SOLVER"))
    env = e;
  for (const std::string &cand : {override_cmd, env}) {
    if (cand.empty())
      continue;
    std::vector<std::string> parts = split(cand);
    SolverConfig cfg{parts[0], {parts.begin() + 1, parts.end()}, 0};
    return cfg;
  }
  if (command_exists("bitwuzla"))
    return SolverConfig{"bitwuzla", {}, 0};
  if (command_exists("z3"))
    return SolverConfig{"z3", {}, 0};
  if (!self_dir.empty()) {
    std::filesystem::path p = std::filesystem::path(self_dir) / "minismt";
    if (std::filesystem::exists(p))
      return SolverConfig{p.string(), {}, 0};
  }
  if (command_exists("minismt"))
    return SolverConfig{"minismt", {}, 0};
  return std::nullopt;
}

} // namespace symstab
