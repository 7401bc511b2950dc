#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/dense_oracle.hpp"
#include "symstab/pauli.hpp"

using namespace symstab;

namespace {

PauliString random_pauli(std::size_t n, std::mt19937_64 &rng) {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q)
    p.set_pauli(q, "IXYZ"[rng() & 3]);
  return p;
}

} // namespace

TEST_CASE("commutation via symplectic product", "[pauli]") {
  CHECK_FALSE(commutes(PauliString::parse("X"), PauliString::parse("Z")));
  CHECK(commutes(PauliString::parse("XX"), PauliString::parse("ZZ")));
  CHECK(commutes(PauliString::parse("ZI"), PauliString::parse("ZZ")));
  CHECK_THROWS_AS(commutes(PauliString::parse("X"), PauliString::parse("XX")),
                  std::invalid_argument);
}

TEST_CASE("mul matches dense 2x2 oracle on X*Z", "[pauli]") {
  PhasedPauli a{PauliString::parse("X"), 0};
  PhasedPauli b{PauliString::parse("Z"), 0};
  PhasedPauli prod = mul(a, b);
  CHECK(prod.p.str() == "+Y");
  CHECK(prod.k == 3);
  CHECK(oracle::approx_equal(
      oracle::matmul(oracle::phased_pauli_matrix(a),
                     oracle::phased_pauli_matrix(b)),
      oracle::phased_pauli_matrix(prod)));
}

TEST_CASE("hermitian square is identity", "[pauli]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 64; ++trial) {
    PhasedPauli p{random_pauli(6, rng), (rng() & 1) ? 2 : 0};
    PhasedPauli sq = mul(p, p);
    CHECK(sq.p.is_identity());
    CHECK(sq.k == 0);
  }
}

TEST_CASE("disjoint-in-effect Z products", "[pauli]") {
  PhasedPauli a{PauliString::parse("ZZI"), 0};
  PhasedPauli b{PauliString::parse("IZZ"), 0};
  PhasedPauli prod = mul(a, b);
  CHECK(prod.p.str() == "+ZIZ");
  CHECK(prod.k == 0);
}

TEST_CASE("mul matches dense oracle for all phased pairs, n<=2", "[pauli]") {
  for (std::size_t n = 1; n <= 2; ++n) {
    std::mt19937_64 rng(11 * n);
    for (int trial = 0; trial < 200; ++trial) {
      PhasedPauli a{random_pauli(n, rng), int(rng() & 3)};
      PhasedPauli b{random_pauli(n, rng), int(rng() & 3)};
      PhasedPauli prod = mul(a, b);
      REQUIRE(oracle::approx_equal(
          oracle::matmul(oracle::phased_pauli_matrix(a),
                         oracle::phased_pauli_matrix(b)),
          oracle::phased_pauli_matrix(prod)));
    }
  }
}

TEST_CASE("commutes agrees with mul order sensitivity", "[pauli]") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 1 + rng() % 16;
    PauliString p = random_pauli(n, rng), q = random_pauli(n, rng);
    PhasedPauli ab = mul({p, 0}, {q, 0});
    PhasedPauli ba = mul({q, 0}, {p, 0});
    REQUIRE(ab.p == ba.p);
    if (commutes(p, q)) {
      REQUIRE(ab.k == ba.k);
    } else {
      REQUIRE((ab.k + 2) % 4 == ba.k);
    }
  }
}

TEST_CASE("conjugation chain from the CNOT/H identity", "[pauli]") {
  // Z1 -> X1 under H1, then X1 -> X1X2 under CNOT12.
  auto [p1, f1] = conj_clifford(Gate::H, {0}, PauliString::parse("ZI"));
  CHECK(p1.str() == "+XI");
  CHECK_FALSE(f1);
  auto [p2, f2] = conj_clifford(Gate::CNOT, {0, 1}, p1);
  CHECK(p2.str() == "+XX");
  CHECK_FALSE(f2);

  // Z1Z2 -> -Y1Y2 under the same pair of gates.
  auto [q1, g1] = conj_clifford(Gate::H, {0}, PauliString::parse("ZZ"));
  auto [q2, g2] = conj_clifford(Gate::CNOT, {0, 1}, q1);
  CHECK(q2.str() == "+YY");
  CHECK((g1 ^ g2) == true);
}

TEST_CASE("conjugating Z by X flips the sign", "[pauli]") {
  auto [p, flip] = conj_clifford(Gate::X, {0}, PauliString::parse("Z"));
  CHECK(p.str() == "+Z");
  CHECK(flip);
}

TEST_CASE("conjugation validates targets", "[pauli]") {
  CHECK_THROWS_AS(conj_clifford(Gate::CNOT, {0}, PauliString::parse("XX")),
                  std::invalid_argument);
  CHECK_THROWS_AS(conj_clifford(Gate::CNOT, {1, 1}, PauliString::parse("XX")),
                  std::invalid_argument);
  CHECK_THROWS_AS(conj_clifford(Gate::H, {5}, PauliString::parse("XX")),
                  std::invalid_argument);
}

TEST_CASE("conjugation preserves commutation", "[pauli]") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 2 + rng() % 15;
    PauliString p = random_pauli(n, rng), q = random_pauli(n, rng);
    Gate gates[] = {Gate::H, Gate::S, Gate::CNOT, Gate::X, Gate::Y, Gate::Z};
    Gate g = gates[rng() % 6];
    std::vector<std::size_t> targets{rng() % n};
    if (g == Gate::CNOT) {
      std::size_t t = rng() % (n - 1);
      targets.push_back(t >= targets[0] ? t + 1 : t);
    }
    bool before = commutes(p, q);
    auto [pc, fp] = conj_clifford(g, targets, p);
    auto [qc, fq] = conj_clifford(g, targets, q);
    (void)fp;
    (void)fq;
    REQUIRE(commutes(pc, qc) == before);
  }
}

TEST_CASE("conjugation agrees with dense matrix conjugation", "[pauli]") {
  std::mt19937_64 rng(99);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 60; ++trial) {
      PauliString p = random_pauli(n, rng);
      Gate gates[] = {Gate::H, Gate::S, Gate::CNOT, Gate::X, Gate::Y, Gate::Z,
                      Gate::I};
      Gate g = gates[rng() % 7];
      if (g == Gate::CNOT && n < 2)
        g = Gate::H;
      std::vector<std::size_t> targets{rng() % n};
      if (g == Gate::CNOT) {
        std::size_t t = rng() % (n - 1);
        targets.push_back(t >= targets[0] ? t + 1 : t);
      }
      auto [conj, flip] = conj_clifford(g, targets, p);

      oracle::Matrix v = oracle::gate_matrix(g, targets, n);
      oracle::Matrix expect = oracle::matmul(
          oracle::matmul(v, oracle::pauli_matrix(p)), oracle::dagger(v));
      oracle::Matrix got = oracle::phased_pauli_matrix(
          PhasedPauli{conj, flip ? 2 : 0});
      REQUIRE(oracle::approx_equal(expect, got));
    }
  }
}

TEST_CASE("untouched qubits stay fixed under conjugation", "[pauli]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 3 + rng() % 10;
    PauliString p = random_pauli(n, rng);
    std::size_t q = rng() % n;
    auto [conj, flip] = conj_clifford(Gate::S, {q}, p);
    (void)flip;
    for (std::size_t j = 0; j < n; ++j)
      if (j != q)
        REQUIRE(conj.pauli_at(j) == p.pauli_at(j));
  }
}

TEST_CASE("pauli text rendering round-trips", "[pauli]") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    PauliString p = random_pauli(1 + rng() % 20, rng);
    REQUIRE(PauliString::parse(p.str()) == p);
  }
  CHECK(PauliString::parse("+ZZI").str() == "+ZZI");
  CHECK_THROWS_AS(PauliString::parse("XQ"), std::invalid_argument);
}
