#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "symstab/smt.hpp"

using namespace symstab;

namespace {

SolverConfig bundled_solver(int timeout_ms = 0) {
  return SolverConfig{MINISMT_BIN, {}, timeout_ms};
}

// Pigeonhole principle instance; small but requires genuine search.
Formula pigeonhole(int pigeons, int holes) {
  std::vector<Formula> conj;
  auto var = [](int p, int h) {
    return bvar("x" + std::to_string(p) + "_" + std::to_string(h));
  };
  for (int p = 0; p < pigeons; ++p) {
    std::vector<BoolExpr> row;
    for (int h = 0; h < holes; ++h)
      row.push_back(var(p, h));
    conj.push_back(f_atom(bor(std::move(row))));
  }
  for (int h = 0; h < holes; ++h) {
    std::vector<BoolExpr> col;
    for (int p = 0; p < pigeons; ++p)
      col.push_back(var(p, h));
    conj.push_back(count_at_most(col, 1));
  }
  return f_and(std::move(conj));
}

} // namespace

TEST_CASE("asserting false is unsat", "[smt]") {
  SolverVerdict v = check(f_false(), {}, bundled_solver());
  CHECK(v.unsat());
}

TEST_CASE("xor goal yields a differing model", "[smt]") {
  Formula goal = f_atom(bxor(bvar("a"), bvar("b")));
  SolverVerdict v = check(goal, {}, bundled_solver());
  REQUIRE(v.sat());
  REQUIRE(v.model.bools.count("a"));
  REQUIRE(v.model.bools.count("b"));
  CHECK(v.model.bools["a"] != v.model.bools["b"]);
  CHECK(eval(goal, v.model.bools));
}

TEST_CASE("count bound conflicts with forced bits", "[smt]") {
  std::vector<BoolExpr> bits{bvar("e1"), bvar("e2"), bvar("e3")};
  Formula goal = count_at_most(bits, 1);
  std::vector<Formula> assume{f_atom(bvar("e1")), f_atom(bvar("e2"))};

  // expectation established by enumerating all 8 assignments
  bool any_sat = false;
  for (unsigned m = 0; m < 8; ++m) {
    Valuation v{{"e1", bool(m & 1)}, {"e2", bool(m & 2)}, {"e3", bool(m & 4)}};
    bool all = eval(goal, v);
    for (const auto &a : assume)
      all = all && eval(a, v);
    any_sat = any_sat || all;
  }
  REQUIRE_FALSE(any_sat);

  SolverVerdict v = check(goal, assume, bundled_solver());
  CHECK(v.unsat());
}

TEST_CASE("script text is deterministic with first-use declarations",
          "[smt]") {
  Formula goal =
      f_and(f_atom(bxor(bvar("b"), bvar("a"))), f_atom(bvar("c")));
  SmtScript s1 = emit_script(goal);
  SmtScript s2 = emit_script(goal);
  CHECK(s1.text == s2.text);
  // first use inside the normalized xor is "a" (sorted), then b, then c
  std::size_t pa = s1.text.find("(declare-const a Bool)");
  std::size_t pb = s1.text.find("(declare-const b Bool)");
  std::size_t pc = s1.text.find("(declare-const c Bool)");
  REQUIRE(pa != std::string::npos);
  REQUIRE(pb != std::string::npos);
  REQUIRE(pc != std::string::npos);
  CHECK(pa < pb);
  CHECK(pb < pc);
  CHECK(s1.text.find("(set-logic QF_BV)") == 0);
}

TEST_CASE("sat models satisfy every asserted formula", "[smt]") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::string> names{"p", "q", "r", "s"};
    std::vector<Formula> assumptions;
    for (int k = 0; k < 3; ++k) {
      BoolExpr a = bvar(names[rng() % 4]);
      BoolExpr b = bvar(names[rng() % 4]);
      switch (rng() % 3) {
      case 0:
        assumptions.push_back(f_atom(bor(a, bnot(b))));
        break;
      case 1:
        assumptions.push_back(f_atom(bxor(a, b)));
        break;
      default:
        assumptions.push_back(count_at_most({a, b}, 1));
        break;
      }
    }
    Formula goal = f_atom(bor(bvar("p"), bnot(bvar("q"))));
    SolverVerdict v = check(goal, assumptions, bundled_solver());
    if (v.sat()) {
      CHECK(eval(goal, v.model.bools));
      for (const auto &a : assumptions)
        CHECK(eval(a, v.model.bools));
    } else {
      // verify by enumeration that no assignment works
      bool any = false;
      for (unsigned m = 0; m < 16 && !any; ++m) {
        Valuation val;
        for (int i = 0; i < 4; ++i)
          val[names[i]] = (m >> i) & 1;
        bool all = eval(goal, val);
        for (const auto &a : assumptions)
          all = all && eval(a, val);
        any = all;
      }
      CHECK_FALSE(any);
    }
  }
}

TEST_CASE("tight timeout maps to unknown", "[smt]") {
  SolverVerdict v = check(pigeonhole(10, 9), {}, bundled_solver(1));
  CHECK(v.kind == SolverVerdict::Kind::Unknown);
  CHECK(v.reason == "timeout");
}

TEST_CASE("pigeonhole is unsat with room to search", "[smt]") {
  SolverVerdict v = check(pigeonhole(6, 5), {}, bundled_solver());
  CHECK(v.unsat());
}

TEST_CASE("missing solver binary is reported", "[smt]") {
  SolverConfig cfg{"/nonexistent/solver", {}, 0};
  CHECK_THROWS_AS(check(f_true(), {}, cfg), SolverError);
}

TEST_CASE("verdicts agree across available solvers", "[smt]") {
  std::vector<SolverConfig> solvers{bundled_solver()};
  if (command_exists("bitwuzla"))
    solvers.push_back({"bitwuzla", {}, 0});
  if (command_exists("z3"))
    solvers.push_back({"z3", {}, 0});
  if (solvers.size() < 2) {
    SUCCEED("only one solver available; cross-check skipped");
    return;
  }
  std::vector<Formula> cases{
      f_false(),
      f_atom(bxor(bvar("a"), bvar("b"))),
      pigeonhole(5, 4),
      count_at_most({bvar("a"), bvar("b"), bvar("c")}, 2),
  };
  for (const auto &goal : cases) {
    std::optional<SolverVerdict::Kind> agreed;
    for (const auto &cfg : solvers) {
      SolverVerdict v = check(goal, {}, cfg);
      if (v.kind == SolverVerdict::Kind::Unknown)
        continue;
      if (agreed)
        CHECK(*agreed == v.kind);
      agreed = v.kind;
    }
  }
}
