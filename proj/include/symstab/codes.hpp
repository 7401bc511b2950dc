#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "symstab/engine.hpp"
#include "symstab/expr.hpp"
#include "symstab/gf2.hpp"
#include "symstab/pauli.hpp"
#include "symstab/program.hpp"
#include "symstab/smt.hpp"
#include "symstab/tableau.hpp"

namespace symstab {

// ---------------------------------------------------------------------------
// Stabilizer code descriptions
// ---------------------------------------------------------------------------

struct CodeSpec {
  std::size_t n = 0; // physical qubits
  std::size_t k = 0; // logical qubits
  std::vector<PauliString> x_checks; // independent
  std::vector<PauliString> z_checks; // independent
  std::vector<PauliString> logical_z;
  std::vector<PauliString> logical_x;

  void check_invariants() const {
    if (logical_z.size() != k || logical_x.size() != k)
      throw std::logic_error("logical operator count mismatch");
    if (x_checks.size() + z_checks.size() + k != n)
      throw std::logic_error("check count does not complete the code");
    std::vector<PauliString> checks = x_checks;
    checks.insert(checks.end(), z_checks.begin(), z_checks.end());
    for (std::size_t i = 0; i < checks.size(); ++i)
      for (std::size_t j = i + 1; j < checks.size(); ++j)
        if (!commutes(checks[i], checks[j]))
          throw std::logic_error("checks do not commute");
    for (std::size_t i = 0; i < k; ++i) {
      for (const auto &c : checks) {
        if (!commutes(logical_z[i], c) || !commutes(logical_x[i], c))
          throw std::logic_error("logical operator hits a check");
      }
      for (std::size_t j = 0; j < k; ++j) {
        bool anti = !commutes(logical_z[i], logical_x[j]);
        if (anti != (i == j))
          throw std::logic_error("logical pairing broken");
        if (j > i && (!commutes(logical_z[i], logical_z[j]) ||
                      !commutes(logical_x[i], logical_x[j])))
          throw std::logic_error("logical operators do not commute");
      }
    }
    // CSS orthogonality, with checks as pure X / pure Z strings
    for (const auto &xc : x_checks)
      if (xc.z.any())
        throw std::logic_error("x check carries Z support");
    for (const auto &zc : z_checks)
      if (zc.x.any())
        throw std::logic_error("z check carries X support");
  }

  // The two symbolic initial states of the verification driver: the
  // logical-Z basis family and its logical-Hadamard image, which swaps
  // the roles of the logical operators.
  std::vector<std::pair<PauliString, BoolExpr>>
  initial_generators(bool hadamard_side) const {
    std::vector<std::pair<PauliString, BoolExpr>> gens;
    const auto &logicals = hadamard_side ? logical_x : logical_z;
    for (std::size_t j = 0; j < k; ++j)
      gens.push_back({logicals[j], bvar("s" + std::to_string(j + 1))});
    for (const auto &c : z_checks)
      gens.push_back({c, bfalse()});
    for (const auto &c : x_checks)
      gens.push_back({c, bfalse()});
    return gens;
  }
};

// ---------------------------------------------------------------------------
// Symbolic error injection
// ---------------------------------------------------------------------------

struct ErrorInjection {
  std::vector<Stmt> stmts;
  Formula constraint;
  std::vector<std::string> vars;
};

// Guarded tau errors on every qubit with at most dmax locations set.
inline ErrorInjection inject_errors(std::size_t n, char kind,
                                    std::size_t dmax,
                                    const std::string &prefix = "e") {
  if (dmax > n)
    throw std::invalid_argument("error budget exceeds qubit count");
  ErrorInjection out;
  std::vector<BoolExpr> bits;
  for (std::size_t j = 0; j < n; ++j) {
    std::string name = prefix + std::to_string(j + 1);
    out.vars.push_back(name);
    bits.push_back(bvar(name));
    out.stmts.push_back(stmt_sym_pauli(kind, bvar(name), j));
  }
  out.constraint = count_at_most(bits, dmax);
  return out;
}

// ---------------------------------------------------------------------------
// Code constructions with decoder programs
// ---------------------------------------------------------------------------

struct GeneratedCode {
  CodeSpec code;
  Program decoder; // error detection + recovery; no injection prelude
  ExternalRegistry externals;
};

namespace detail {

// Z-parity measurement of `support` into `var` by CNOTing onto the last
// support qubit; X-type checks are conjugated into the Z basis by H.
inline void emit_check_measurement(std::vector<Stmt> &body,
                                   const std::vector<std::size_t> &support,
                                   bool x_type, const std::string &var) {
  if (support.empty())
    throw std::invalid_argument("empty check support");
  if (x_type)
    for (std::size_t q : support)
      body.push_back(stmt_unitary(Gate::H, {q}));
  std::size_t target = support.back();
  for (std::size_t i = 0; i + 1 < support.size(); ++i)
    body.push_back(stmt_unitary(Gate::CNOT, {support[i], target}));
  body.push_back(stmt_measure(target, var));
  for (std::size_t i = support.size() - 1; i-- > 0;)
    body.push_back(stmt_unitary(Gate::CNOT, {support[i], target}));
  if (x_type)
    for (std::size_t q : support)
      body.push_back(stmt_unitary(Gate::H, {q}));
}

inline std::vector<std::size_t> support_of(const PauliString &p) {
  std::vector<std::size_t> s;
  for (std::size_t q = 0; q < p.n; ++q)
    if (p.x.get(q) || p.z.get(q))
      s.push_back(q);
  return s;
}

} // namespace detail

// Quantum repetition code on n qubits: Z checks between neighbours on a
// ring; the decoder measures all n ring checks and calls MWPM. The buggy
// variant appends a spurious correction guarded by r1*...*r_t.
inline GeneratedCode repetition(std::size_t n, bool buggy) {
  if (n < 3)
    throw std::invalid_argument("repetition code needs n >= 3");
  GeneratedCode out;
  CodeSpec &code = out.code;
  code.n = n;
  code.k = 1;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    PauliString zz(n);
    zz.z.set(j, true);
    zz.z.set(j + 1, true);
    code.z_checks.push_back(std::move(zz));
  }
  PauliString lz(n);
  lz.z.set(0, true);
  code.logical_z.push_back(std::move(lz));
  PauliString lx(n);
  for (std::size_t j = 0; j < n; ++j)
    lx.x.set(j, true);
  code.logical_x.push_back(std::move(lx));

  Program &p = out.decoder;
  p.n_qubits = n;
  std::vector<std::string> syndromes;
  for (std::size_t j = 0; j < n; ++j) {
    std::string var = "m" + std::to_string(j + 1);
    syndromes.push_back(var);
    detail::emit_check_measurement(p.body, {j, (j + 1) % n}, false, var);
  }
  std::vector<std::string> corrections;
  for (std::size_t j = 0; j < n; ++j)
    corrections.push_back("r" + std::to_string(j + 1));
  p.body.push_back(stmt_extcall(corrections, "MWPM", syndromes));
  for (std::size_t j = 0; j < n; ++j)
    p.body.push_back(stmt_sym_pauli('X', bvar(corrections[j]), j));
  std::size_t budget = (n - 1) / 2;
  if (buggy) {
    std::vector<BoolExpr> guard;
    for (std::size_t j = 0; j < budget; ++j)
      guard.push_back(bvar(corrections[j]));
    p.body.push_back(stmt_sym_pauli('X', band(std::move(guard)), 0));
  }

  ExternalFnSpec mwpm;
  mwpm.name = "MWPM";
  mwpm.in_arity = n;
  mwpm.out_arity = n;
  mwpm.condition = [n, budget](const std::vector<BoolExpr> &ins,
                               const std::vector<BoolExpr> &outs) {
    std::vector<Formula> conj;
    for (std::size_t j = 0; j < n; ++j)
      conj.push_back(
          f_atom(biff(bxor(outs[j], outs[(j + 1) % n]), ins[j])));
    conj.push_back(count_at_most(outs, budget));
    return f_and(std::move(conj));
  };
  mwpm.concrete = [n, budget](const std::vector<bool> &ins) {
    // syndromes determine R up to complement; take the lighter side
    std::vector<bool> r(n, false);
    for (std::size_t j = 0; j + 1 < n; ++j)
      r[j + 1] = r[j] ^ ins[j];
    if ((r[n - 1] ^ r[0]) != ins[n - 1])
      throw std::runtime_error("inconsistent repetition syndromes");
    std::size_t weight = 0;
    for (bool b : r)
      weight += b;
    if (2 * weight > n)
      for (std::size_t j = 0; j < n; ++j)
        r[j] = !r[j];
    weight = 0;
    for (bool b : r)
      weight += b;
    if (weight > budget)
      throw std::runtime_error("syndromes exceed the correction budget");
    return r;
  };
  out.externals[mwpm.name] = std::move(mwpm);
  return out;
}

// ---------------------------------------------------------------------------
// Generic CSS decoder: measure every row of both check lists, call a
// decoder oracle constrained by syndrome reproduction plus weight bounds,
// then apply the guarded corrections.
// ---------------------------------------------------------------------------

struct CssMeasuredChecks {
  std::vector<PauliString> z_rows; // detect X errors
  std::vector<PauliString> x_rows; // detect Z errors
};

inline void build_css_decoder(GeneratedCode &out,
                              const CssMeasuredChecks &measured,
                              std::size_t budget_x, std::size_t budget_z,
                              bool buggy, std::size_t bug_guard_len) {
  Program &p = out.decoder;
  std::size_t n = out.code.n;
  p.n_qubits = n;

  std::vector<std::string> syndromes;
  for (std::size_t j = 0; j < measured.z_rows.size(); ++j) {
    std::string var = "mz" + std::to_string(j + 1);
    syndromes.push_back(var);
    detail::emit_check_measurement(
        p.body, detail::support_of(measured.z_rows[j]), false, var);
  }
  for (std::size_t j = 0; j < measured.x_rows.size(); ++j) {
    std::string var = "mx" + std::to_string(j + 1);
    syndromes.push_back(var);
    detail::emit_check_measurement(
        p.body, detail::support_of(measured.x_rows[j]), true, var);
  }

  std::vector<std::string> outs;
  for (std::size_t j = 0; j < n; ++j)
    outs.push_back("rx" + std::to_string(j + 1));
  for (std::size_t j = 0; j < n; ++j)
    outs.push_back("rz" + std::to_string(j + 1));
  p.body.push_back(stmt_extcall(outs, "decode", syndromes));
  for (std::size_t j = 0; j < n; ++j) {
    p.body.push_back(stmt_sym_pauli('X', bvar(outs[j]), j));
    p.body.push_back(stmt_sym_pauli('Z', bvar(outs[n + j]), j));
  }
  if (buggy) {
    std::vector<BoolExpr> guard;
    for (std::size_t j = 0; j < std::max<std::size_t>(bug_guard_len, 1); ++j)
      guard.push_back(bvar(outs[j]));
    p.body.push_back(stmt_sym_pauli('X', band(std::move(guard)), 0));
  }

  // copy supports into the closure; the decoder oracle must reproduce all
  // measured syndromes within the weight budgets
  std::vector<std::vector<std::size_t>> z_supp, x_supp;
  for (const auto &row : measured.z_rows)
    z_supp.push_back(detail::support_of(row));
  for (const auto &row : measured.x_rows)
    x_supp.push_back(detail::support_of(row));

  ExternalFnSpec dec;
  dec.name = "decode";
  dec.in_arity = syndromes.size();
  dec.out_arity = outs.size();
  dec.condition = [n, z_supp, x_supp, budget_x,
                   budget_z](const std::vector<BoolExpr> &ins,
                             const std::vector<BoolExpr> &os) {
    std::vector<Formula> conj;
    for (std::size_t j = 0; j < z_supp.size(); ++j) {
      std::vector<BoolExpr> parity;
      for (std::size_t q : z_supp[j])
        parity.push_back(os[q]);
      conj.push_back(f_atom(biff(bxor(std::move(parity)), ins[j])));
    }
    for (std::size_t j = 0; j < x_supp.size(); ++j) {
      std::vector<BoolExpr> parity;
      for (std::size_t q : x_supp[j])
        parity.push_back(os[n + q]);
      conj.push_back(
          f_atom(biff(bxor(std::move(parity)), ins[z_supp.size() + j])));
    }
    std::vector<BoolExpr> rx(os.begin(), os.begin() + n);
    std::vector<BoolExpr> rz(os.begin() + n, os.end());
    conj.push_back(count_at_most(rx, budget_x));
    conj.push_back(count_at_most(rz, budget_z));
    return f_and(std::move(conj));
  };
  out.externals[dec.name] = std::move(dec);
}

// Kitaev's toric code on a d x d periodic lattice: [[2d^2, 2, d]].
// Horizontal edge (r,c) is qubit r*d+c, vertical edge (r,c) is d^2+r*d+c.
inline GeneratedCode toric(std::size_t d, bool buggy) {
  if (d < 2)
    throw std::invalid_argument("toric code needs d >= 2");
  GeneratedCode out;
  CodeSpec &code = out.code;
  std::size_t n = 2 * d * d;
  code.n = n;
  code.k = 2;
  auto h = [d](std::size_t r, std::size_t c) {
    return (r % d) * d + (c % d);
  };
  auto v = [d](std::size_t r, std::size_t c) {
    return d * d + (r % d) * d + (c % d);
  };

  CssMeasuredChecks measured;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      PauliString face(n);
      face.z.set(h(r, c), true);
      face.z.set(h(r + 1, c), true);
      face.z.set(v(r, c), true);
      face.z.set(v(r, c + 1), true);
      measured.z_rows.push_back(face);
      PauliString vertex(n);
      vertex.x.set(h(r, c), true);
      vertex.x.set(h(r, c + d - 1), true);
      vertex.x.set(v(r, c), true);
      vertex.x.set(v(r + d - 1, c), true);
      measured.x_rows.push_back(vertex);
    }
  }
  // any d^2-1 of each kind are independent; drop the last face/vertex
  code.z_checks.assign(measured.z_rows.begin(), measured.z_rows.end() - 1);
  code.x_checks.assign(measured.x_rows.begin(), measured.x_rows.end() - 1);

  PauliString lz1(n), lz2(n), lx1(n), lx2(n);
  for (std::size_t c = 0; c < d; ++c) {
    lz1.z.set(h(0, c), true); // horizontal cycle
    lx2.x.set(v(0, c), true);
  }
  for (std::size_t r = 0; r < d; ++r) {
    lz2.z.set(v(r, 0), true); // vertical cycle
    lx1.x.set(h(r, 0), true);
  }
  code.logical_z = {lz1, lz2};
  code.logical_x = {lx1, lx2};

  std::size_t budget = (d - 1) / 2;
  build_css_decoder(out, measured, budget, budget, buggy,
                    std::max<std::size_t>(budget, 1));
  return out;
}

// ---------------------------------------------------------------------------
// Quantum Tanner code from a left-right Cayley complex over Z_{k 7^m}
// with the [7,4,3] Hamming code and its dual.
// ---------------------------------------------------------------------------

struct TannerMatrices {
  std::size_t n = 0;
  gf2::Matrix h_x; // X-check rows
  gf2::Matrix h_z; // Z-check rows
};

namespace detail {

// rows span the [7,4,3] Hamming code
inline std::vector<std::array<int, 7>> hamming_generator() {
  return {{
      {1, 0, 0, 0, 0, 1, 1},
      {0, 1, 0, 0, 1, 0, 1},
      {0, 0, 1, 0, 1, 1, 0},
      {0, 0, 0, 1, 1, 1, 1},
  }};
}

// rows span the dual [7,3,3] code (the Hamming parity checks)
inline std::vector<std::array<int, 7>> hamming_dual_generator() {
  return {{
      {0, 0, 0, 1, 1, 1, 1},
      {0, 1, 1, 0, 0, 1, 1},
      {1, 0, 1, 0, 1, 0, 1},
  }};
}

} // namespace detail

inline TannerMatrices tanner_matrices(std::size_t m, std::size_t k) {
  if (m < 1 || k < 1)
    throw std::invalid_argument("tanner parameters must be positive");
  const std::size_t delta = 7;
  std::size_t group = k;
  for (std::size_t i = 0; i < m; ++i)
    group *= 7;
  std::size_t n = delta * delta * group;

  auto gen_a = detail::hamming_generator();      // spans C_A, 4 rows
  auto gen_b = detail::hamming_dual_generator(); // spans C_B, 3 rows
  auto gen_a_perp = detail::hamming_dual_generator(); // spans C_A^perp
  auto gen_b_perp = detail::hamming_generator();      // spans C_B^perp
  std::size_t m_a = gen_a.size(), m_b = gen_b.size();

  // qubit (g, a, b) -> g*49 + a*7 + b;  a^-1 has index (7-a)%7
  auto qubit = [&](std::size_t g, std::size_t a, std::size_t b) {
    return (g * delta + a) * delta + b;
  };
  auto inv = [&](std::size_t a) { return (delta - a) % delta; };

  TannerMatrices out;
  out.n = n;
  // X rows: (i, j, vertex) with vertex in V_00 (first) then V_11
  std::size_t x_rows = m_a * m_b * 2 * group;
  std::size_t z_rows = (delta - m_a) * (delta - m_b) * 2 * group;
  out.h_x.assign(x_rows, BitRow(n));
  out.h_z.assign(z_rows, BitRow(n));

  auto x_row = [&](std::size_t i, std::size_t j, std::size_t side,
                   std::size_t g) {
    return ((i * m_b + j) * 2 + side) * group + g;
  };
  auto z_row = [&](std::size_t i, std::size_t j, std::size_t side,
                   std::size_t g) {
    return ((i * (delta - m_b) + j) * 2 + side) * group + g;
  };

  for (std::size_t g = 0; g < group; ++g) {
    for (std::size_t a = 0; a < delta; ++a) {
      for (std::size_t b = 0; b < delta; ++b) {
        std::size_t q = qubit(g, a, b);
        // group element of the square corners; generators act as
        // +a*k*7^(m-1) etc., so corner labels live in [0, group)
        std::size_t step = group / 7; // k*7^(m-1)
        std::size_t ag = (g + a * step) % group;
        std::size_t gb = (g + b * step) % group;
        std::size_t agb = (g + (a + b) * step) % group;
        (void)ag;
        (void)gb;
        for (std::size_t i = 0; i < m_a; ++i) {
          for (std::size_t j = 0; j < m_b; ++j) {
            if (gen_a[i][a] && gen_b[j][b])
              out.h_x[x_row(i, j, 0, g)].flip(q);
            if (gen_a[i][inv(a)] && gen_b[j][inv(b)])
              out.h_x[x_row(i, j, 1, agb)].flip(q);
          }
        }
        std::size_t ag01 = (g + a * step) % group;
        std::size_t gb10 = (g + b * step) % group;
        for (std::size_t i = 0; i < delta - m_a; ++i) {
          for (std::size_t j = 0; j < delta - m_b; ++j) {
            if (gen_a_perp[i][inv(a)] && gen_b_perp[j][b])
              out.h_z[z_row(i, j, 0, ag01)].flip(q);
            if (gen_a_perp[i][a] && gen_b_perp[j][inv(b)])
              out.h_z[z_row(i, j, 1, gb10)].flip(q);
          }
        }
      }
    }
  }
  return out;
}

// CodeSpec for the quantum Tanner code: independent check subsets plus
// logicals from symplectic completion of the CSS kernels.
inline CodeSpec tanner(std::size_t m, std::size_t k) {
  TannerMatrices mats = tanner_matrices(m, k);
  std::size_t n = mats.n;
  CodeSpec code;
  code.n = n;

  auto to_pauli = [n](const BitRow &row, bool x_type) {
    PauliString p(n);
    if (x_type)
      p.x = row;
    else
      p.z = row;
    return p;
  };

  std::vector<std::size_t> x_piv = gf2::pivot_rows(mats.h_x, n);
  std::vector<std::size_t> z_piv = gf2::pivot_rows(mats.h_z, n);
  gf2::Matrix x_basis, z_basis;
  for (std::size_t r : x_piv) {
    code.x_checks.push_back(to_pauli(mats.h_x[r], true));
    x_basis.push_back(mats.h_x[r]);
  }
  for (std::size_t r : z_piv) {
    code.z_checks.push_back(to_pauli(mats.h_z[r], false));
    z_basis.push_back(mats.h_z[r]);
  }
  code.k = n - x_basis.size() - z_basis.size();

  // logical Z: ker(H_X) / rowspace(H_Z); logical X: ker(H_Z) / rowspace(H_X)
  gf2::Matrix lz = gf2::quotient_representatives(
      z_basis, gf2::kernel_basis(mats.h_x, n), n);
  gf2::Matrix lx = gf2::quotient_representatives(
      x_basis, gf2::kernel_basis(mats.h_z, n), n);
  if (lz.size() != code.k || lx.size() != code.k)
    throw std::logic_error("logical count mismatch in tanner construction");

  // pair them: M[i][j] = <lz_i, lx_j>, then lx' = (M^-1)^T lx
  gf2::Matrix pairing(code.k, BitRow(code.k));
  for (std::size_t i = 0; i < code.k; ++i)
    for (std::size_t j = 0; j < code.k; ++j)
      if (lz[i].dot(lx[j]))
        pairing[i].set(j, true);
  gf2::Matrix inv = gf2::invert(pairing);
  for (std::size_t j = 0; j < code.k; ++j) {
    BitRow combo(n);
    for (std::size_t t = 0; t < code.k; ++t)
      if (inv[t].get(j))
        combo.xor_with(lx[t]);
    code.logical_x.push_back(to_pauli(combo, true));
  }
  for (std::size_t i = 0; i < code.k; ++i)
    code.logical_z.push_back(to_pauli(lz[i], false));
  return code;
}

// Decoder program for any CSS CodeSpec built from explicit check lists
// (used for the quantum Tanner code); budgets enter the oracle condition.
inline GeneratedCode css_code_decoder(const CodeSpec &code,
                                      const std::vector<PauliString> &z_rows,
                                      const std::vector<PauliString> &x_rows,
                                      std::size_t budget_x,
                                      std::size_t budget_z, bool buggy,
                                      std::size_t bug_guard_len) {
  GeneratedCode out;
  out.code = code;
  CssMeasuredChecks measured{z_rows, x_rows};
  build_css_decoder(out, measured, budget_x, budget_z, buggy, bug_guard_len);
  return out;
}

// ---------------------------------------------------------------------------
// Verification driver (decoder correctness against all injected errors)
// ---------------------------------------------------------------------------

struct ReplayReport {
  bool ran = false;
  bool differs = false;
  std::string spurious; // non-empty when the model was rejected
  std::string initial_dump;
  std::string final_dump;
};

struct StageTimes {
  double init_ms = 0;
  double qse_ms = 0;
  double smt_ms = 0;
};

struct Verdict {
  enum class Kind { Verified, Bug, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::string reason;   // Inconclusive
  SolverModel model;    // Bug
  Formula path_condition = f_true();
  ReplayReport replay;
  StageTimes times;
  std::string initial_state; // "logical-z" or "logical-x"
  std::size_t terminals = 0;
};

struct VerifyOptions {
  std::optional<SolverConfig> solver; // required unless skip_smt
  bool skip_smt = false;
  std::size_t fork_budget = std::size_t(1) << 16;
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

// Re-walks the counterexample path concretely: externals and coin flips
// are answered from the model valuation, and the final state is compared
// against the instantiated initial state.
inline ReplayReport replay_with_valuation(const Program &program,
                                          const ExternalRegistry &externals,
                                          const SymTableau &initial,
                                          const std::vector<Formula> &constraints,
                                          const SolverModel &model) {
  ReplayReport report;
  report.ran = true;
  const Valuation &v = model.bools;

  for (const auto &f : constraints) {
    if (!eval(f, v, &model.words)) {
      report.spurious = "model violates the error constraint";
      return report;
    }
  }

  ConcreteTableau conc = initial.instantiate(v);
  ConcreteTableau initial_conc = conc;

  Engine engine(program, externals);
  Config cur = engine.initial_config(initial);
  std::map<std::string, bool> store;
  for (const auto &in : program.inputs)
    store[in] = v.count(in) ? v.at(in) : false;

  while (!cur.terminal()) {
    const Stmt *s = cur.cont.back();
    std::size_t pc_before = cur.pc.size();
    std::vector<Config> next = engine.step(std::move(cur));
    switch (s->kind) {
    case StmtKind::Measure: {
      Config &c = next[0];
      bool random = !c.probs.empty() &&
                    c.probs.back().symbol == c.store.at(s->var)->name &&
                    c.store.at(s->var)->op == BoolOp::Var &&
                    v.count(c.store.at(s->var)->name);
      if (c.store.at(s->var)->op == BoolOp::Var && !v.count(c.store.at(s->var)->name) &&
          !c.probs.empty() && c.probs.back().symbol == c.store.at(s->var)->name) {
        report.spurious = "model does not bind measurement symbol " +
                          c.store.at(s->var)->name;
        return report;
      }
      if (random && !c.probs.empty() &&
          c.probs.back().symbol == c.store.at(s->var)->name) {
        bool forced = v.at(c.probs.back().symbol);
        auto oc = conc.measure_forced(s->qubits[0], forced);
        store[s->var] = oc.bit;
      } else {
        auto oc = conc.measure_forced(s->qubits[0], false);
        if (oc.random) {
          report.spurious = "concrete measurement unexpectedly random";
          return report;
        }
        store[s->var] = oc.bit;
        if (eval(c.store.at(s->var), v) != oc.bit) {
          report.spurious = "deterministic outcome mismatch at " + s->var;
          return report;
        }
      }
      cur = std::move(next[0]);
      break;
    }
    case StmtKind::ExtCall: {
      Config &c = next[0];
      for (std::size_t i = 0; i < s->outs.size(); ++i) {
        const std::string &sym = c.store.at(s->outs[i])->name;
        if (!v.count(sym)) {
          report.spurious = "model does not bind external output " + sym;
          return report;
        }
        store[s->outs[i]] = v.at(sym);
      }
      if (!eval(c.pc.back(), v, &model.words)) {
        report.spurious = "model violates the external condition of " +
                          s->fname;
        return report;
      }
      cur = std::move(next[0]);
      break;
    }
    case StmtKind::If: {
      bool taken = eval(s->expr, store);
      Config &chosen = next[taken ? 0 : 1];
      if (!eval(chosen.pc[pc_before], v, &model.words)) {
        report.spurious = "model contradicts the taken branch";
        return report;
      }
      cur = std::move(chosen);
      break;
    }
    case StmtKind::Assign:
      store[s->var] = eval(s->expr, store);
      cur = std::move(next[0]);
      break;
    case StmtKind::SymPauli:
      conc.apply_pauli_if(s->tau, eval(s->expr, store), s->qubits[0]);
      cur = std::move(next[0]);
      break;
    case StmtKind::Unitary:
      conc.apply_gate(s->gate, s->qubits);
      cur = std::move(next[0]);
      break;
    case StmtKind::Seq:
      cur = std::move(next[0]);
      break;
    }
  }

  ConcreteTableau ci = initial_conc.canonical_form();
  ConcreteTableau cf = conc.canonical_form();
  report.initial_dump = ci.dump();
  report.final_dump = cf.dump();
  report.differs = !initial_conc.same_state(conc);
  return report;
}

} // namespace detail

// Theorem-driven correctness check: both symbolic logical-basis families
// are run through error injection plus the decoder, and every terminal's
// final state must provably equal the initial one under the path
// condition and the error-count constraints.
inline Verdict verify_decoder(const CodeSpec &code, const Program &decoder,
                              const ExternalRegistry &externals,
                              std::size_t nerr_x, std::size_t nerr_z,
                              const VerifyOptions &opts = {}) {
  Verdict verdict;
  auto t0 = std::chrono::steady_clock::now();

  for (bool hadamard_side : {false, true}) {
    auto init_t = std::chrono::steady_clock::now();

    ErrorInjection inj_x = inject_errors(code.n, 'X', nerr_x, "e");
    ErrorInjection inj_z = inject_errors(code.n, 'Z', nerr_z, "f");

    Program program;
    program.n_qubits = code.n;
    std::vector<Formula> constraints;
    if (nerr_x > 0) {
      program.inputs.insert(program.inputs.end(), inj_x.vars.begin(),
                            inj_x.vars.end());
      program.body.insert(program.body.end(), inj_x.stmts.begin(),
                          inj_x.stmts.end());
      constraints.push_back(inj_x.constraint);
    }
    if (nerr_z > 0) {
      program.inputs.insert(program.inputs.end(), inj_z.vars.begin(),
                            inj_z.vars.end());
      program.body.insert(program.body.end(), inj_z.stmts.begin(),
                          inj_z.stmts.end());
      constraints.push_back(inj_z.constraint);
    }
    program.body.insert(program.body.end(), decoder.body.begin(),
                        decoder.body.end());

    SymTableau initial =
        SymTableau::from_generators(code.initial_generators(hadamard_side));
    verdict.times.init_ms += detail::ms_since(init_t);

    auto qse_t = std::chrono::steady_clock::now();
    Engine engine(program, externals, {.fork_budget = opts.fork_budget});
    std::vector<Terminal> terminals = engine.explore(
        engine.initial_config(initial));
    verdict.terminals += terminals.size();

    std::vector<std::pair<Formula, std::vector<Formula>>> queries;
    for (const Terminal &t : terminals) {
      Formula equal = equality_formula(t.state, initial);
      if (is_const_formula(equal, true))
        continue;
      std::vector<Formula> assumptions = constraints;
      for (const auto &f : t.pc)
        assumptions.push_back(f);
      queries.push_back({f_not(equal), std::move(assumptions)});
    }
    verdict.times.qse_ms += detail::ms_since(qse_t);

    if (opts.skip_smt) {
      verdict.kind = Verdict::Kind::Inconclusive;
      verdict.reason = "solver stage skipped";
      continue;
    }
    if (!opts.solver)
      throw SolverError("no SMT solver configured");

    for (auto &[goal, assumptions] : queries) {
      auto smt_t = std::chrono::steady_clock::now();
      SolverVerdict sv;
      try {
        sv = check(goal, assumptions, *opts.solver);
      } catch (const SolverError &err) {
        verdict.times.smt_ms += detail::ms_since(smt_t);
        verdict.kind = Verdict::Kind::Inconclusive;
        verdict.reason = err.what();
        return verdict;
      }
      verdict.times.smt_ms += detail::ms_since(smt_t);
      if (sv.unsat())
        continue;
      if (sv.kind == SolverVerdict::Kind::Unknown) {
        verdict.kind = Verdict::Kind::Inconclusive;
        verdict.reason = sv.reason;
        verdict.initial_state = hadamard_side ? "logical-x" : "logical-z";
        return verdict;
      }
      // counterexample candidate; replay confirms or rejects it
      ReplayReport report = detail::replay_with_valuation(
          program, externals, initial, constraints, sv.model);
      verdict.initial_state = hadamard_side ? "logical-x" : "logical-z";
      verdict.path_condition = f_and(assumptions);
      verdict.replay = report;
      if (!report.spurious.empty()) {
        verdict.kind = Verdict::Kind::Inconclusive;
        verdict.reason = "spurious model: " + report.spurious;
        return verdict;
      }
      if (!report.differs) {
        verdict.kind = Verdict::Kind::Inconclusive;
        verdict.reason = "model replay reached an equal state";
        return verdict;
      }
      verdict.kind = Verdict::Kind::Bug;
      verdict.model = sv.model;
      return verdict;
    }
  }

  if (!opts.skip_smt)
    verdict.kind = Verdict::Kind::Verified;
  verdict.times.init_ms += 0;
  (void)t0;
  return verdict;
}

} // namespace symstab
