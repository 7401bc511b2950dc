#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/group_oracle.hpp"
#include "symstab/tableau.hpp"

using namespace symstab;

namespace {

using Gens = std::vector<std::pair<PauliString, BoolExpr>>;

SymTableau running_example_state() {
  return SymTableau::from_generators({
      {PauliString::parse("ZII"), bvar("s")},
      {PauliString::parse("ZZI"), bfalse()},
      {PauliString::parse("IZZ"), bfalse()},
  });
}

std::vector<std::pair<PauliString, bool>>
instantiated_stabilizers(const SymTableau &t, const Valuation &v) {
  std::vector<std::pair<PauliString, bool>> out;
  for (std::size_t j = 0; j < t.num_qubits(); ++j)
    out.push_back({t.stabilizer(j), eval(t.stabilizer_phase(j), v)});
  return out;
}

// Random concrete stabilizer tableau reached by a random circuit.
ConcreteTableau random_concrete(std::size_t n, std::mt19937_64 &rng,
                                int gates = 40) {
  ConcreteTableau t(n);
  for (int i = 0; i < gates; ++i) {
    switch (rng() % 3) {
    case 0:
      t.apply_gate(Gate::H, {rng() % n});
      break;
    case 1:
      t.apply_gate(Gate::S, {rng() % n});
      break;
    default:
      if (n >= 2) {
        std::size_t c = rng() % n, tq = rng() % (n - 1);
        t.apply_gate(Gate::CNOT, {c, tq >= c ? tq + 1 : tq});
      }
    }
  }
  return t;
}

BoolExpr random_phase_expr(const std::vector<std::string> &syms,
                           std::mt19937_64 &rng) {
  std::vector<BoolExpr> kids;
  for (const auto &s : syms)
    if (rng() & 1)
      kids.push_back(bvar(s));
  if (rng() & 1)
    kids.push_back(btrue());
  return bxor(std::move(kids));
}

SymTableau random_symbolic_state(std::size_t n,
                                 const std::vector<std::string> &syms,
                                 std::mt19937_64 &rng) {
  ConcreteTableau c = random_concrete(n, rng);
  Gens gens;
  for (std::size_t j = 0; j < n; ++j) {
    BoolExpr ph = random_phase_expr(syms, rng);
    if (c.stabilizer_phase(j))
      ph = bxor(ph, btrue());
    gens.push_back({c.stabilizer(j), ph});
  }
  return SymTableau::from_generators(gens);
}

} // namespace

TEST_CASE("from_generators keeps rows and finds valid destabilizers",
          "[tableau]") {
  SymTableau t = running_example_state();
  REQUIRE(t.num_qubits() == 3);
  CHECK(t.stabilizer(0).str() == "+ZII");
  CHECK(t.stabilizer(1).str() == "+ZZI");
  CHECK(t.stabilizer(2).str() == "+IZZ");
  CHECK(t.stabilizer_phase(0)->name == "s");
  CHECK(is_const(t.stabilizer_phase(1), false));
  CHECK(is_const(t.destabilizer_phase(0), false));
  t.check_invariants();
}

TEST_CASE("from_generators rejects bad inputs", "[tableau]") {
  CHECK_THROWS_AS(SymTableau::from_generators({
                      {PauliString::parse("ZI"), bfalse()},
                      {PauliString::parse("ZI"), btrue()},
                  }),
                  std::invalid_argument);
  CHECK_THROWS_AS(SymTableau::from_generators({
                      {PauliString::parse("XI"), bfalse()},
                      {PauliString::parse("ZI"), bfalse()},
                  }),
                  std::invalid_argument);
  CHECK_THROWS_AS(SymTableau::from_generators({
                      {PauliString::parse("ZI"), bfalse()},
                  }),
                  std::invalid_argument);
  CHECK_THROWS_AS(SymTableau::from_generators({
                      {PauliString::parse("ZZ"), bfalse()},
                      {PauliString::parse("II"), bfalse()},
                  }),
                  std::invalid_argument);
}

TEST_CASE("destabilizer pairing matches a brute-force search", "[tableau]") {
  SymTableau t = SymTableau::from_generators({
      {PauliString::parse("XX"), bvar("a")},
      {PauliString::parse("ZZ"), bvar("b")},
  });
  t.check_invariants();

  // Brute force over all 2-qubit Paulis: some pair must satisfy the
  // pairing relations, and the one the builder picked must be among the
  // valid choices.
  auto all = [] {
    std::vector<PauliString> v;
    for (int i = 0; i < 16; ++i) {
      PauliString p(2);
      p.set_pauli(0, "IXYZ"[i & 3]);
      p.set_pauli(1, "IXYZ"[(i >> 2) & 3]);
      v.push_back(p);
    }
    return v;
  }();
  auto valid_pair = [&](const PauliString &d0, const PauliString &d1) {
    return !commutes(d0, t.stabilizer(0)) && commutes(d0, t.stabilizer(1)) &&
           commutes(d1, t.stabilizer(0)) && !commutes(d1, t.stabilizer(1)) &&
           commutes(d0, d1);
  };
  bool found = false;
  for (const auto &d0 : all)
    for (const auto &d1 : all)
      found = found || valid_pair(d0, d1);
  REQUIRE(found);
  CHECK(valid_pair(t.destabilizer(0), t.destabilizer(1)));
}

TEST_CASE("from_generators on random commuting sets", "[tableau]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 8;
    ConcreteTableau c = random_concrete(n, rng);
    Gens gens;
    for (std::size_t j = 0; j < n; ++j)
      gens.push_back({c.stabilizer(j), (rng() & 1) ? btrue() : bfalse()});
    SymTableau t = SymTableau::from_generators(gens);
    t.check_invariants();
    for (std::size_t j = 0; j < n; ++j)
      REQUIRE(t.stabilizer(j) == c.stabilizer(j));
  }
}

TEST_CASE("clifford evolution of the bell pair generators", "[tableau]") {
  SymTableau t = SymTableau::from_generators({
      {PauliString::parse("ZI"), bfalse()},
      {PauliString::parse("ZZ"), bfalse()},
  });
  t.apply_gate(Gate::H, {0});
  t.apply_gate(Gate::CNOT, {0, 1});
  CHECK(t.stabilizer(0).str() == "+XX");
  CHECK(is_const(t.stabilizer_phase(0), false));
  CHECK(t.stabilizer(1).str() == "+YY");
  CHECK(is_const(t.stabilizer_phase(1), true));
  t.check_invariants();
}

TEST_CASE("identity gate leaves the tableau unchanged", "[tableau]") {
  SymTableau t = running_example_state();
  std::string before = t.dump();
  t.apply_gate(Gate::I, {1});
  CHECK(t.dump() == before);
}

TEST_CASE("symbolic X errors produce the running example phases",
          "[tableau]") {
  SymTableau t = running_example_state();
  t.apply_sym_pauli('X', bvar("e1"), 0);
  t.apply_sym_pauli('X', bvar("e2"), 1);
  t.apply_sym_pauli('X', bvar("e3"), 2);
  CHECK(to_string(t.stabilizer_phase(0)) == "e1 ^ s");
  CHECK(to_string(t.stabilizer_phase(1)) == "e1 ^ e2");
  CHECK(to_string(t.stabilizer_phase(2)) == "e2 ^ e3");
  t.check_invariants();

  SECTION("CNOT then produces the in-frame rows") {
    t.apply_gate(Gate::CNOT, {0, 1});
    CHECK(t.stabilizer(0).str() == "+ZII");
    CHECK(t.stabilizer(1).str() == "+IZI");
    CHECK(t.stabilizer(2).str() == "+ZZZ");
    CHECK(to_string(t.stabilizer_phase(0)) == "e1 ^ s");
    CHECK(to_string(t.stabilizer_phase(1)) == "e1 ^ e2");
    CHECK(to_string(t.stabilizer_phase(2)) == "e2 ^ e3");

    SECTION("measuring the disentangled qubit is deterministic") {
      FreshGen gen;
      std::string before = t.dump();
      MeasResult r = t.measure(1, gen);
      CHECK(r.kind == MeasResult::Kind::Deterministic);
      CHECK(to_string(r.outcome) == "e1 ^ e2");
      CHECK(t.dump() == before);
    }
  }
}

TEST_CASE("commuting symbolic pauli leaves the state alone", "[tableau]") {
  SymTableau t = running_example_state();
  SymTableau before = t;
  t.apply_sym_pauli('Z', bvar("e"), 1);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(t.stabilizer(j) == before.stabilizer(j));
    CHECK(equal_expr(t.stabilizer_phase(j), before.stabilizer_phase(j)));
  }
}

TEST_CASE("guard-1 symbolic pauli equals the pauli gate", "[tableau]") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + rng() % 6;
    std::vector<std::string> syms{"a", "b"};
    SymTableau t = random_symbolic_state(n, syms, rng);
    SymTableau u = t;
    char tau = "XYZ"[rng() % 3];
    std::size_t q = rng() % n;
    t.apply_sym_pauli(tau, btrue(), q);
    u.apply_gate(tau == 'X'   ? Gate::X
                 : tau == 'Y' ? Gate::Y
                              : Gate::Z,
                 {q});
    REQUIRE(t.dump() == u.dump());
  }
}

TEST_CASE("symbolic pauli is an involution on phases", "[tableau]") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + rng() % 6;
    std::vector<std::string> syms{"a", "b", "c"};
    SymTableau t = random_symbolic_state(n, syms, rng);
    std::string before = t.dump();
    BoolExpr guard = band(bvar("a"), bnot(bvar("b")));
    char tau = "XYZ"[rng() % 3];
    std::size_t q = rng() % n;
    t.apply_sym_pauli(tau, guard, q);
    t.apply_sym_pauli(tau, guard, q);
    REQUIRE(t.dump() == before);
  }
}

TEST_CASE("measuring |+> is random, measuring |0> deterministic",
          "[tableau]") {
  FreshGen gen;
  SymTableau plus = SymTableau::from_generators({
      {PauliString::parse("X"), bfalse()},
  });
  MeasResult r = plus.measure(0, gen);
  REQUIRE(r.kind == MeasResult::Kind::Random);
  REQUIRE(r.outcome->op == BoolOp::Var);
  CHECK(plus.stabilizer(0).str() == "+Z");
  CHECK(equal_expr(plus.stabilizer_phase(0), r.outcome));
  plus.check_invariants();

  SymTableau zero = SymTableau::from_generators({
      {PauliString::parse("Z"), bfalse()},
  });
  MeasResult rz = zero.measure(0, gen);
  CHECK(rz.kind == MeasResult::Kind::Deterministic);
  CHECK(is_const(rz.outcome, false));
}

TEST_CASE("instantiation reaches |000> and |111>", "[tableau]") {
  SymTableau t = running_example_state();
  Valuation zero{{"s", false}};
  ConcreteTableau c0 = t.instantiate(zero);
  CHECK(c0.same_state(ConcreteTableau(3)));

  Valuation one{{"s", true}};
  ConcreteTableau c1 = t.instantiate(one);
  ConcreteTableau ones(3);
  for (std::size_t q = 0; q < 3; ++q)
    ones.apply_gate(Gate::X, {q});
  CHECK(c1.same_state(ones));
  CHECK_FALSE(c1.same_state(ConcreteTableau(3)));

  for (std::size_t j = 0; j < 3; ++j)
    CHECK(c0.stabilizer(j) == t.stabilizer(j));

  CHECK_THROWS_AS(t.instantiate(Valuation{}), std::out_of_range);
}

TEST_CASE("canonical form echelonizes with phase bookkeeping", "[tableau]") {
  SymTableau t = SymTableau::from_generators({
      {PauliString::parse("ZI"), bvar("a")},
      {PauliString::parse("ZZ"), bfalse()},
  });
  SymTableau c = t.canonical_form();
  CHECK(c.stabilizer(0).str() == "+ZI");
  CHECK(c.stabilizer(1).str() == "+IZ");
  CHECK(to_string(c.stabilizer_phase(0)) == "a");
  CHECK(to_string(c.stabilizer_phase(1)) == "a");
  c.check_invariants();

  SymTableau t2 = SymTableau::from_generators({
      {PauliString::parse("IZ"), bvar("a")},
      {PauliString::parse("ZZ"), bfalse()},
  });
  SymTableau c2 = t2.canonical_form();
  CHECK(c2.stabilizer(0).str() == "+ZI");
  CHECK(c2.stabilizer(1).str() == "+IZ");
  CHECK(to_string(c2.stabilizer_phase(0)) == "a");
  CHECK(to_string(c2.stabilizer_phase(1)) == "a");

  // idempotence
  CHECK(c.canonical_form().dump() == c.dump());
}

TEST_CASE("canonical form preserves the signed group", "[tableau]") {
  std::mt19937_64 rng(31);
  std::vector<std::string> syms{"a", "b"};
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + rng() % 5;
    SymTableau t = random_symbolic_state(n, syms, rng);
    SymTableau c = t.canonical_form();
    c.check_invariants();
    for (unsigned m = 0; m < 4; ++m) {
      Valuation v{{"a", bool(m & 1)}, {"b", bool(m & 2)}};
      REQUIRE(oracle::signed_group(instantiated_stabilizers(t, v)) ==
              oracle::signed_group(instantiated_stabilizers(c, v)));
    }
  }
}

TEST_CASE("equality formula on simple pairs", "[tableau]") {
  SymTableau t = running_example_state();
  CHECK(is_const_formula(equality_formula(t, t), true));

  SymTableau za = SymTableau::from_generators({
      {PauliString::parse("Z"), bvar("a")},
  });
  SymTableau zb = SymTableau::from_generators({
      {PauliString::parse("Z"), bvar("b")},
  });
  Formula f = equality_formula(za, zb);
  for (unsigned m = 0; m < 4; ++m) {
    Valuation v{{"a", bool(m & 1)}, {"b", bool(m & 2)}};
    REQUIRE(eval(f, v) == (v["a"] == v["b"]));
  }

  SymTableau p = SymTableau::from_generators({
      {PauliString::parse("ZI"), bvar("a")},
      {PauliString::parse("ZZ"), bfalse()},
  });
  SymTableau q = SymTableau::from_generators({
      {PauliString::parse("IZ"), bvar("a")},
      {PauliString::parse("ZZ"), bfalse()},
  });
  CHECK(is_const_formula(equality_formula(p, q), true));

  SymTableau x = SymTableau::from_generators({
      {PauliString::parse("X"), bfalse()},
  });
  CHECK(is_const_formula(equality_formula(za, x), false));
}

TEST_CASE("equality formula matches brute-force state equality",
          "[tableau]") {
  std::mt19937_64 rng(37);
  std::vector<std::string> syms{"a", "b", "c", "d"};
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 6;
    SymTableau t1 = random_symbolic_state(n, syms, rng);
    // Sometimes compare against a scrambled copy of the same state.
    SymTableau t2 = (rng() & 1) ? t1.canonical_form()
                                : random_symbolic_state(n, syms, rng);
    Formula f = equality_formula(t1, t2);
    for (unsigned m = 0; m < 16; ++m) {
      Valuation v{{"a", bool(m & 1)},
                  {"b", bool(m & 2)},
                  {"c", bool(m & 4)},
                  {"d", bool(m & 8)}};
      bool expect = t1.instantiate(v).same_state(t2.instantiate(v));
      REQUIRE(eval(f, v) == expect);
    }
  }
}

TEST_CASE("equality formula is symmetric", "[tableau]") {
  std::mt19937_64 rng(41);
  std::vector<std::string> syms{"a", "b"};
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + rng() % 5;
    SymTableau t1 = random_symbolic_state(n, syms, rng);
    SymTableau t2 = random_symbolic_state(n, syms, rng);
    Formula f12 = equality_formula(t1, t2);
    Formula f21 = equality_formula(t2, t1);
    for (unsigned m = 0; m < 4; ++m) {
      Valuation v{{"a", bool(m & 1)}, {"b", bool(m & 2)}};
      REQUIRE(eval(f12, v) == eval(f21, v));
    }
  }
}

TEST_CASE("ops commute with instantiation", "[tableau][slow]") {
  std::mt19937_64 rng(2025);
  int cases = 0;
  while (cases < 1000) {
    std::size_t n = 1 + rng() % 16;
    std::vector<std::string> syms{"a", "b", "c"};
    SymTableau sym = random_symbolic_state(n, syms, rng);
    Valuation v;
    for (const auto &s : syms)
      v[s] = rng() & 1;
    ConcreteTableau conc = sym.instantiate(v);
    FreshGen gen;

    for (int step = 0; step < 25; ++step) {
      switch (rng() % 5) {
      case 0: {
        std::size_t q = rng() % n;
        Gate g = (rng() & 1) ? Gate::H : Gate::S;
        sym.apply_gate(g, {q});
        conc.apply_gate(g, {q});
        break;
      }
      case 1: {
        if (n < 2)
          break;
        std::size_t c = rng() % n, t = rng() % (n - 1);
        std::vector<std::size_t> targets{c, t >= c ? t + 1 : t};
        sym.apply_gate(Gate::CNOT, targets);
        conc.apply_gate(Gate::CNOT, targets);
        break;
      }
      case 2: {
        char tau = "XYZ"[rng() % 3];
        std::size_t q = rng() % n;
        BoolExpr guard = random_phase_expr(syms, rng);
        sym.apply_sym_pauli(tau, guard, q);
        conc.apply_pauli_if(tau, eval(guard, v), q);
        break;
      }
      default: {
        std::size_t q = rng() % n;
        MeasResult mr = sym.measure(q, gen);
        ConcreteTableau::Outcome oc = conc.measure(q, rng);
        if (mr.kind == MeasResult::Kind::Random) {
          REQUIRE(oc.random);
          v[mr.outcome->name] = oc.bit;
        } else {
          REQUIRE_FALSE(oc.random);
          REQUIRE(eval(mr.outcome, v) == oc.bit);
        }
        break;
      }
      }
    }
    REQUIRE(sym.instantiate(v).same_state(conc));
    ++cases;
  }
}
