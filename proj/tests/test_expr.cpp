#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "symstab/expr.hpp"

using namespace symstab;

namespace {

// Random expression tree over the given variables, without the
// normalizing constructors, so simplify() has real work to do.
BoolExpr random_raw_expr(const std::vector<std::string> &vars,
                         std::mt19937_64 &rng, int depth) {
  if (depth == 0 || (rng() % 4) == 0) {
    if (rng() % 5 == 0)
      return std::make_shared<BoolExprNode>(BoolOp::Const, rng() & 1, "",
                                            std::vector<BoolExpr>{});
    return std::make_shared<BoolExprNode>(BoolOp::Var, false,
                                          vars[rng() % vars.size()],
                                          std::vector<BoolExpr>{});
  }
  BoolOp ops[] = {BoolOp::Not, BoolOp::And, BoolOp::Or, BoolOp::Xor};
  BoolOp op = ops[rng() % 4];
  std::size_t arity = op == BoolOp::Not ? 1 : 2 + rng() % 3;
  std::vector<BoolExpr> kids;
  for (std::size_t i = 0; i < arity; ++i)
    kids.push_back(random_raw_expr(vars, rng, depth - 1));
  return std::make_shared<BoolExprNode>(op, false, "", std::move(kids));
}

} // namespace

TEST_CASE("xor normalization examples", "[expr]") {
  BoolExpr a = bvar("a"), b = bvar("b");
  CHECK(is_const(bxor(a, a), false));
  CHECK(equal_expr(bxor({a, btrue(), b, btrue()}), bxor(a, b)));
  BoolExpr e1 = bvar("e1"), e2 = bvar("e2");
  BoolExpr m1 = bxor(e1, e2);
  REQUIRE(m1->op == BoolOp::Xor);
  REQUIRE(m1->kids.size() == 2);
  CHECK(to_string(m1) == "e1 ^ e2");
}

TEST_CASE("xor children stay flat and sorted", "[expr]") {
  BoolExpr e = bxor({bvar("e2"), bxor(bvar("e10"), bvar("e1")), bvar("e3")});
  REQUIRE(e->op == BoolOp::Xor);
  std::vector<std::string> names;
  for (const auto &k : e->kids) {
    REQUIRE(k->op == BoolOp::Var);
    names.push_back(k->name);
  }
  CHECK(names == std::vector<std::string>{"e1", "e2", "e3", "e10"});
}

TEST_CASE("eval basics", "[expr]") {
  BoolExpr e1 = bvar("e1"), e2 = bvar("e2");
  CHECK(eval(bxor(e1, e2), Valuation{{"e1", true}, {"e2", false}}) == true);
  CHECK(eval(bfalse(), Valuation{}) == false);
  CHECK_THROWS_AS(eval(e1, Valuation{}), std::out_of_range);

  Formula f = count_at_most({bvar("e1"), bvar("e2"), bvar("e3")}, 1);
  Valuation all_one{{"e1", true}, {"e2", true}, {"e3", true}};
  CHECK_FALSE(eval(f, all_one));
  Valuation one{{"e1", true}, {"e2", false}, {"e3", false}};
  CHECK(eval(f, one));
}

TEST_CASE("simplify is idempotent and preserves eval", "[expr]") {
  std::vector<std::string> vars;
  for (int i = 1; i <= 6; ++i)
    vars.push_back("v" + std::to_string(i));
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    BoolExpr raw = random_raw_expr(vars, rng, 4);
    BoolExpr simp = simplify(raw);
    REQUIRE(equal_expr(simplify(simp), simp));
    for (unsigned m = 0; m < 64; ++m) {
      Valuation v;
      for (int i = 0; i < 6; ++i)
        v[vars[i]] = (m >> i) & 1;
      REQUIRE(eval(raw, v) == eval(simp, v));
    }
  }
}

TEST_CASE("smt rendering", "[expr]") {
  CHECK(to_smt(bxor(bvar("a"), bvar("b"))) == "(xor a b)");
  CHECK(to_smt(btrue()) == "true");

  Formula f = count_at_most({bvar("e1"), bvar("e2")}, 1);
  CHECK(to_smt(f) ==
        "(bvule (bvadd ((_ zero_extend 1) (ite e1 #b1 #b0)) "
        "((_ zero_extend 1) (ite e2 #b1 #b0))) #b01)");
}

TEST_CASE("declared variables are collected with sorts", "[expr]") {
  Formula f = f_and(f_atom(bxor(bvar("a"), bvar("b"))),
                    f_eq(bv_var("w", 3), bv_const(3, 2)));
  std::set<DeclaredVar> vars;
  collect_vars(f, vars);
  REQUIRE(vars.size() == 3);
  CHECK(vars.count({"a", 0}) == 1);
  CHECK(vars.count({"b", 0}) == 1);
  CHECK(vars.count({"w", 3}) == 1);
}

TEST_CASE("fresh names are unique", "[expr]") {
  FreshGen gen;
  CHECK(gen.fresh("m")->name == "m_0");
  CHECK(gen.fresh("m")->name == "m_1");
  BoolExpr e0 = gen.fresh("e");
  BoolExpr m2 = gen.fresh("m");
  CHECK(e0->name == "e_0");
  CHECK(m2->name == "m_2");

  std::set<std::string> seen;
  FreshGen bulk;
  for (int i = 0; i < 1000000; ++i)
    REQUIRE(seen.insert(bulk.fresh_name("s")).second);
}

TEST_CASE("fresh avoids reserved names", "[expr]") {
  FreshGen gen;
  gen.avoid("s_5");
  CHECK(gen.fresh("s")->name == "s_6");
  gen.avoid("plain");
  CHECK(gen.fresh("plain")->name == "plain_0");
}

TEST_CASE("formula constructors fold constants", "[expr]") {
  CHECK(is_const_formula(f_and(f_true(), f_true()), true));
  CHECK(is_const_formula(f_and(f_true(), f_false()), false));
  CHECK(is_const_formula(f_not(f_false()), true));
  Formula conj = f_and(f_atom(bvar("a")), f_true());
  CHECK(conj->op == FormulaOp::Atom);
}

TEST_CASE("count constraint satisfying assignments, n=4 d=2", "[expr]") {
  std::vector<BoolExpr> bits{bvar("e1"), bvar("e2"), bvar("e3"), bvar("e4")};
  Formula f = count_at_most(bits, 2);
  int sat = 0;
  for (unsigned m = 0; m < 16; ++m) {
    Valuation v;
    for (int i = 0; i < 4; ++i)
      v["e" + std::to_string(i + 1)] = (m >> i) & 1;
    if (eval(f, v))
      ++sat;
  }
  CHECK(sat == 11);
}
