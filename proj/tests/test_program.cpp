#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "symstab/program.hpp"

using namespace symstab;

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<StmtKind> kinds(const Program &p) {
  std::vector<StmtKind> out;
  for (const auto &s : p.body)
    out.push_back(s.kind);
  return out;
}

} // namespace

TEST_CASE("bit-flip decoder parses with pauli fusion", "[program]") {
  Program p = parse_program(read_file(SAMPLES_DIR "/bitflip3.qprog"));
  REQUIRE(p.n_qubits == 3);
  REQUIRE(p.inputs == std::vector<std::string>{"e1", "e2", "e3"});
  std::vector<StmtKind> expect{
      StmtKind::SymPauli, StmtKind::SymPauli, StmtKind::SymPauli,
      StmtKind::Unitary,  StmtKind::Measure,  StmtKind::Unitary,
      StmtKind::Unitary,  StmtKind::Measure,  StmtKind::Unitary,
      StmtKind::SymPauli, StmtKind::SymPauli, StmtKind::SymPauli};
  CHECK(kinds(p) == expect);
  CHECK(validate(p).empty());

  // guards of the recovery stage keep their conjunctive shape
  const Stmt &rec = p.body[9];
  CHECK(rec.tau == 'X');
  CHECK(rec.qubits[0] == 0);
  CHECK(to_string(rec.expr) == "m1 & !m2");
}

TEST_CASE("pauli fusion can be disabled", "[program]") {
  Program p = parse_program(read_file(SAMPLES_DIR "/bitflip3.qprog"),
                            {.fuse_pauli = false});
  std::vector<StmtKind> k = kinds(p);
  CHECK(std::count(k.begin(), k.end(), StmtKind::If) == 3);
  CHECK(std::count(k.begin(), k.end(), StmtKind::SymPauli) == 3);
}

TEST_CASE("for loops unroll at constant bounds", "[program]") {
  Program p = parse_program("qubits 4; input e1, e2, e3;\n"
                            "for i in 1..4 { X[e_i == 1] q_i; }\n");
  REQUIRE(p.body.size() == 1);
  REQUIRE(p.body[0].kind == StmtKind::Seq);
  const auto &body = p.body[0].body;
  REQUIRE(body.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(body[i].kind == StmtKind::SymPauli);
    CHECK(body[i].qubits[0] == i);
    CHECK(body[i].expr->name == "e" + std::to_string(i + 1));
  }
  CHECK(p.statement_count() == 4);
}

TEST_CASE("nested loops expand in closed form", "[program]") {
  Program p = parse_program("qubits 2;\n"
                            "for i in 0..10 { H q1; H q2; }\n");
  CHECK(p.statement_count() == 21); // seq node + 20 gates

  Program q = parse_program("qubits 2;\n"
                            "for i in 0..3 { for j in 0..4 { S q1; } }\n");
  std::size_t gates = 0;
  std::function<void(const std::vector<Stmt> &)> walk =
      [&](const std::vector<Stmt> &stmts) {
        for (const auto &s : stmts) {
          if (s.kind == StmtKind::Unitary)
            ++gates;
          walk(s.body);
          walk(s.else_body);
        }
      };
  walk(q.body);
  CHECK(gates == 12);
}

TEST_CASE("parse errors carry positions", "[program]") {
  try {
    parse_program("qubits 2;\nmeasure q1 + m1;\n");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.pos.line == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_program("qubits 2; for i in 1..n { H q1; }"),
                  ParseError);
  CHECK_THROWS_AS(parse_program("H q1;"), ParseError);
  CHECK_THROWS_AS(parse_program("qubits 2; CNOT q1;"), ParseError);
}

TEST_CASE("validate reports qubit range and unassigned vars", "[program]") {
  Program p = parse_program("qubits 2;\nH q5;\n");
  auto diags = validate(p);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("out of range") != std::string::npos);

  Program q = parse_program("qubits 2;\nmeasure q1 -> m1;\nx := m1 ^ y;\n");
  diags = validate(q);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("unassigned") != std::string::npos);
  CHECK(diags[0].message.find("\"y\"") != std::string::npos);

  // measure/extcall bind their outputs
  Program r = parse_program(
      "qubits 2;\nmeasure q1 -> m1;\nr1, r2 := MWPM(m1);\nX[r1] q1;\n");
  CHECK(validate(r).empty());

  // a variable assigned in only one if-arm stays unassigned afterwards
  Program s = parse_program("qubits 1;\nmeasure q1 -> m;\n"
                            "if (m) { x := 1; } else { y := 1; }\nz := x;\n");
  diags = validate(s);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("\"x\"") != std::string::npos);
}

TEST_CASE("validate checks external arity against the registry",
          "[program]") {
  Program p = parse_program("qubits 1;\nmeasure q1 -> m;\nr := F(m);\n");
  ExternalRegistry reg;
  reg["F"] = ExternalFnSpec{"F", 2, 1, nullptr, nullptr};
  auto diags = validate(p, &reg);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("takes 2 inputs") != std::string::npos);

  ExternalRegistry none;
  diags = validate(p, &none);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("unknown external") != std::string::npos);
}

TEST_CASE("print-parse is a fixed point", "[program]") {
  const char *sources[] = {
      "qubits 3; input e1; X[e1] q1; CNOT q1, q2; measure q2 -> m1;\n"
      "if (m1 == 1) { H q3; S q3; } else { Z q3; }\n",
      "qubits 2; measure q1 -> a; measure q2 -> b; x := a ^ b | !a;\n"
      "r1, r2 := MWPM(a, b); X[r1] q1; X[r2] q2;\n",
      "qubits 4; for i in 1..5 { H q_i; }\n",
  };
  for (const char *src : sources) {
    Program p1 = parse_program(src);
    std::string printed = print_program(p1);
    Program p2 = parse_program(printed);
    CHECK(print_program(p2) == printed);
  }
}
