#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "symstab/expr.hpp"
#include "symstab/pauli.hpp"

namespace symstab {

namespace detail {
// Phase bit (-1 exponent) of multiplying two commuting Hermitian rows.
// Throws if the rows anticommute, since the product would not be Hermitian.
inline bool row_product_sign(const PauliString &a, const PauliString &b) {
  int k = 0;
  for (std::size_t w = 0; w < a.x.num_words(); ++w)
    k += mul_phase_words(a.x.word(w), a.z.word(w), b.x.word(w), b.z.word(w));
  k &= 3;
  if (k & 1)
    throw std::logic_error("row product of anticommuting rows");
  return k == 2;
}
} // namespace detail

struct MeasResult {
  enum class Kind { Deterministic, Random };
  BoolExpr outcome;
  Kind kind;
};

// Tableau with concrete phase bits, the plain CHP-style simulator state.
class ConcreteTableau {
public:
  ConcreteTableau() = default;

  // Computational zero state |0...0>.
  explicit ConcreteTableau(std::size_t n) : n_(n), phase_(2 * n) {
    rows_.reserve(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i)
      rows_.emplace_back(n);
    for (std::size_t q = 0; q < n; ++q) {
      rows_[q].x.set(q, true);        // destabilizer X_q
      rows_[n + q].z.set(q, true);    // stabilizer Z_q
    }
  }

  std::size_t num_qubits() const { return n_; }
  const PauliString &destabilizer(std::size_t i) const { return rows_[i]; }
  const PauliString &stabilizer(std::size_t i) const { return rows_[n_ + i]; }
  bool destabilizer_phase(std::size_t i) const { return phase_.get(i); }
  bool stabilizer_phase(std::size_t i) const { return phase_.get(n_ + i); }

  void apply_gate(Gate g, const std::vector<std::size_t> &targets) {
    for (std::size_t j = 0; j < 2 * n_; ++j)
      if (conj_clifford_inplace(g, targets, rows_[j]))
        phase_.flip(j);
  }

  void apply_pauli_if(char tau, bool cond, std::size_t q) {
    if (!cond)
      return;
    for (std::size_t j = 0; j < 2 * n_; ++j)
      if (pauli_anticommutes_at(tau, rows_[j], q))
        phase_.flip(j);
  }

  struct Outcome {
    bool bit;
    bool random;
  };

  // Computational-basis measurement; the rng supplies the coin flip.
  template <typename Rng> Outcome measure(std::size_t q, Rng &rng) {
    std::optional<std::size_t> pivot = anticommuting_stabilizer(q);
    if (!pivot) {
      auto [bits, sign] = deterministic_z(q);
      if (!(bits == z_observable(q)))
        throw std::logic_error("deterministic measurement reconstruction");
      return {sign, false};
    }
    bool bit = rng() & 1;
    collapse(q, *pivot, bit);
    return {bit, true};
  }

  // Forces the collapse outcome; used when replaying a recorded path.
  Outcome measure_forced(std::size_t q, bool forced) {
    std::optional<std::size_t> pivot = anticommuting_stabilizer(q);
    if (!pivot) {
      auto [bits, sign] = deterministic_z(q);
      (void)bits;
      return {sign, false};
    }
    collapse(q, *pivot, forced);
    return {forced, true};
  }

  // Reduced row echelon form of the stabilizer half, fixed pivot order:
  // X block column-major first, then Z block.
  ConcreteTableau canonical_form() const {
    ConcreteTableau t = *this;
    std::size_t r = 0;
    for (std::size_t col = 0; col < 2 * n_ && r < n_; ++col) {
      std::size_t q = col < n_ ? col : col - n_;
      bool xblock = col < n_;
      std::size_t pivot = n_;
      for (std::size_t j = r; j < n_; ++j) {
        const PauliString &row = t.rows_[n_ + j];
        if ((xblock ? row.x.get(q) : row.z.get(q))) {
          pivot = j;
          break;
        }
      }
      if (pivot == n_)
        continue;
      t.swap_pair(r, pivot);
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == r)
          continue;
        const PauliString &row = t.rows_[n_ + j];
        if ((xblock ? row.x.get(q) : row.z.get(q)))
          t.mul_stab_row(j, r);
      }
      ++r;
    }
    return t;
  }

  bool same_state(const ConcreteTableau &other) const {
    if (n_ != other.n_)
      return false;
    ConcreteTableau a = canonical_form(), b = other.canonical_form();
    for (std::size_t j = 0; j < n_; ++j) {
      if (!(a.stabilizer(j) == b.stabilizer(j)))
        return false;
      if (a.stabilizer_phase(j) != b.stabilizer_phase(j))
        return false;
    }
    return true;
  }

  std::string dump() const {
    std::string out;
    for (std::size_t j = 0; j < 2 * n_; ++j) {
      out += j < n_ ? "D " : "S ";
      out += std::to_string(j < n_ ? j : j - n_);
      out += phase_.get(j) ? " -" : " +";
      out += rows_[j].str(false);
      out += "\n";
    }
    return out;
  }

  static bool pauli_anticommutes_at(char tau, const PauliString &row,
                                    std::size_t q) {
    bool x = row.x.get(q), z = row.z.get(q);
    switch (tau) {
    case 'X':
      return z;
    case 'Z':
      return x;
    case 'Y':
      return x != z;
    }
    throw std::invalid_argument("bad pauli gate");
  }

private:
  friend class SymTableau;

  PauliString z_observable(std::size_t q) const {
    PauliString p(n_);
    p.z.set(q, true);
    return p;
  }

  std::optional<std::size_t> anticommuting_stabilizer(std::size_t q) const {
    for (std::size_t j = 0; j < n_; ++j)
      if (rows_[n_ + j].x.get(q))
        return j;
    return std::nullopt;
  }

  // Product of the stabilizer rows selected by the destabilizer pairing;
  // equals (-1)^sign Z_q when the outcome is determinate.
  std::pair<PauliString, bool> deterministic_z(std::size_t q) const {
    PhasedPauli acc{PauliString(n_), 0};
    bool phase = false;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!rows_[i].x.get(q))
        continue;
      acc = mul(acc, PhasedPauli{rows_[n_ + i], 0});
      phase ^= phase_.get(n_ + i);
    }
    if (acc.k & 1)
      throw std::logic_error("non-hermitian accumulation");
    return {acc.p, phase ^ (acc.k == 2)};
  }

  void collapse(std::size_t q, std::size_t pivot, bool bit) {
    std::size_t p = n_ + pivot;
    for (std::size_t j = 0; j < 2 * n_; ++j) {
      if (j == p || j == pivot)
        continue;
      if (rows_[j].x.get(q))
        mul_row(j, p);
    }
    rows_[pivot] = rows_[p];
    phase_.set(pivot, phase_.get(p));
    rows_[p] = z_observable(q);
    phase_.set(p, bit);
  }

  void mul_row(std::size_t dst, std::size_t src) {
    bool s = detail::row_product_sign(rows_[dst], rows_[src]);
    rows_[dst].x.xor_with(rows_[src].x);
    rows_[dst].z.xor_with(rows_[src].z);
    if (s ^ phase_.get(src))
      phase_.flip(dst);
  }

  // stab[dst] *= stab[piv], with the dual destabilizer update that keeps
  // the pairing invariants.
  void mul_stab_row(std::size_t dst, std::size_t piv) {
    mul_row(n_ + dst, n_ + piv);
    mul_row(piv, dst);
  }

  void swap_pair(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    std::swap(rows_[n_ + a], rows_[n_ + b]);
    std::swap(rows_[a], rows_[b]);
    bool pa = phase_.get(n_ + a), pb = phase_.get(n_ + b);
    phase_.set(n_ + a, pb);
    phase_.set(n_ + b, pa);
    pa = phase_.get(a);
    pb = phase_.get(b);
    phase_.set(a, pb);
    phase_.set(b, pa);
  }

  std::size_t n_ = 0;
  std::vector<PauliString> rows_; // 0..n-1 destabilizers, n..2n-1 stabilizers
  BitRow phase_;
};

// Destabilizer/stabilizer tableau whose phase column holds Boolean
// expressions (exponents of -1 per row).
class SymTableau {
public:
  SymTableau() = default;

  // Computational zero state with constant phases.
  explicit SymTableau(std::size_t n) : n_(n), phase_(2 * n, bfalse()) {
    rows_.reserve(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i)
      rows_.emplace_back(n);
    for (std::size_t q = 0; q < n; ++q) {
      rows_[q].x.set(q, true);
      rows_[n + q].z.set(q, true);
    }
  }

  // Builds the tableau for n pairwise-commuting independent Hermitian
  // generators with the given symbolic phases. Destabilizers are chosen
  // by symplectic completion and get constant-0 phases.
  static SymTableau
  from_generators(const std::vector<std::pair<PauliString, BoolExpr>> &gens) {
    if (gens.empty())
      throw std::invalid_argument("no generators");
    std::size_t n = gens[0].first.n;
    if (gens.size() != n)
      throw std::invalid_argument("need exactly n generators on n qubits");
    for (const auto &[p, e] : gens) {
      if (p.n != n)
        throw std::invalid_argument("generator length mismatch");
      if (p.is_identity())
        throw std::invalid_argument("identity generator");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!commutes(gens[i].first, gens[j].first))
          throw std::invalid_argument("generators do not commute");

    // Symplectic Gram-Schmidt: W tracks in-progress combinations of the
    // generators (W = C * S over GF(2)); the candidate pool supplies
    // anticommuting partners.
    std::vector<PauliString> W;
    W.reserve(n);
    for (const auto &[p, e] : gens)
      W.push_back(p);
    std::vector<BitRow> C(n, BitRow(n));
    for (std::size_t i = 0; i < n; ++i)
      C[i].set(i, true);

    std::vector<PauliString> pool;
    pool.reserve(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
      PauliString px(n);
      px.x.set(q, true);
      pool.push_back(px);
    }
    for (std::size_t q = 0; q < n; ++q) {
      PauliString pz(n);
      pz.z.set(q, true);
      pool.push_back(pz);
    }

    std::vector<PauliString> partners;
    partners.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t found = pool.size();
      for (std::size_t c = 0; c < pool.size(); ++c) {
        if (!commutes(W[i], pool[c])) {
          found = c;
          break;
        }
      }
      if (found == pool.size())
        throw std::invalid_argument("dependent generators");
      PauliString d = pool[found];
      pool[found] = pool.back();
      pool.pop_back();
      for (auto &q : pool) {
        bool hit_d = !commutes(q, d);
        bool hit_w = !commutes(q, W[i]);
        if (hit_d) {
          q.x.xor_with(W[i].x);
          q.z.xor_with(W[i].z);
        }
        if (hit_w) {
          q.x.xor_with(d.x);
          q.z.xor_with(d.z);
        }
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!commutes(W[j], d)) {
          W[j].x.xor_with(W[i].x);
          W[j].z.xor_with(W[i].z);
          C[j].xor_with(C[i]);
        }
      }
      partners.push_back(std::move(d));
    }

    SymTableau t;
    t.n_ = n;
    t.rows_.assign(2 * n, PauliString(n));
    t.phase_.assign(2 * n, bfalse());
    for (std::size_t i = 0; i < n; ++i) {
      // destabilizer for the original generator i: sum of partners k
      // with C[k][i] set (W = C*S  =>  D~ = C^T * partners)
      PauliString d(n);
      for (std::size_t k = 0; k < n; ++k) {
        if (C[k].get(i)) {
          d.x.xor_with(partners[k].x);
          d.z.xor_with(partners[k].z);
        }
      }
      t.rows_[i] = std::move(d);
      t.rows_[n + i] = gens[i].first;
      t.phase_[n + i] = gens[i].second;
    }
    return t;
  }

  std::size_t num_qubits() const { return n_; }
  const PauliString &destabilizer(std::size_t i) const { return rows_[i]; }
  const PauliString &stabilizer(std::size_t i) const { return rows_[n_ + i]; }
  const BoolExpr &destabilizer_phase(std::size_t i) const { return phase_[i]; }
  const BoolExpr &stabilizer_phase(std::size_t i) const {
    return phase_[n_ + i];
  }

  void apply_gate(Gate g, const std::vector<std::size_t> &targets) {
    for (std::size_t j = 0; j < 2 * n_; ++j)
      if (conj_clifford_inplace(g, targets, rows_[j]))
        phase_[j] = bxor(phase_[j], btrue());
  }

  // Symbolic Pauli gate tau^guard at qubit q: phases of anticommuting
  // rows pick up the guard, Pauli bits stay put.
  void apply_sym_pauli(char tau, const BoolExpr &guard, std::size_t q) {
    if (q >= n_)
      throw std::invalid_argument("qubit out of range");
    if (is_const(guard, false))
      return;
    for (std::size_t j = 0; j < 2 * n_; ++j)
      if (ConcreteTableau::pauli_anticommutes_at(tau, rows_[j], q))
        phase_[j] = bxor(phase_[j], guard);
  }

  MeasResult measure(std::size_t q, FreshGen &gen) {
    if (q >= n_)
      throw std::invalid_argument("qubit out of range");
    std::size_t pivot = n_;
    for (std::size_t j = 0; j < n_; ++j) {
      if (rows_[n_ + j].x.get(q)) {
        pivot = j;
        break;
      }
    }
    if (pivot == n_) {
      // Determinate: Z_q is in the stabilizer group; the destabilizer
      // pairing selects the factors.
      PhasedPauli acc{PauliString(n_), 0};
      std::vector<BoolExpr> terms;
      for (std::size_t i = 0; i < n_; ++i) {
        if (!rows_[i].x.get(q))
          continue;
        acc = mul(acc, PhasedPauli{rows_[n_ + i], 0});
        terms.push_back(phase_[n_ + i]);
      }
      PauliString zq(n_);
      zq.z.set(q, true);
      if (!(acc.p == zq) || (acc.k & 1))
        throw std::logic_error("deterministic measurement reconstruction");
      if (acc.k == 2)
        terms.push_back(btrue());
      return {bxor(std::move(terms)), MeasResult::Kind::Deterministic};
    }

    std::size_t p = n_ + pivot;
    for (std::size_t j = 0; j < 2 * n_; ++j) {
      if (j == p || j == pivot)
        continue;
      if (rows_[j].x.get(q))
        mul_row(j, p);
    }
    rows_[pivot] = rows_[p];
    phase_[pivot] = phase_[p];
    PauliString zq(n_);
    zq.z.set(q, true);
    rows_[p] = std::move(zq);
    BoolExpr s = gen.fresh("s");
    phase_[p] = s;
    return {s, MeasResult::Kind::Random};
  }

  ConcreteTableau instantiate(const Valuation &v) const {
    ConcreteTableau t;
    t.n_ = n_;
    t.rows_ = rows_;
    t.phase_ = BitRow(2 * n_);
    for (std::size_t j = 0; j < 2 * n_; ++j)
      t.phase_.set(j, eval(phase_[j], v));
    return t;
  }

  SymTableau canonical_form() const {
    SymTableau t = *this;
    std::size_t r = 0;
    for (std::size_t col = 0; col < 2 * n_ && r < n_; ++col) {
      std::size_t q = col < n_ ? col : col - n_;
      bool xblock = col < n_;
      std::size_t pivot = n_;
      for (std::size_t j = r; j < n_; ++j) {
        const PauliString &row = t.rows_[n_ + j];
        if ((xblock ? row.x.get(q) : row.z.get(q))) {
          pivot = j;
          break;
        }
      }
      if (pivot == n_)
        continue;
      t.swap_pair(r, pivot);
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == r)
          continue;
        const PauliString &row = t.rows_[n_ + j];
        if ((xblock ? row.x.get(q) : row.z.get(q))) {
          t.mul_row(n_ + j, n_ + r);
          t.mul_row(r, j); // dual destabilizer update
        }
      }
      ++r;
    }
    return t;
  }

  std::string dump() const {
    std::string out;
    for (std::size_t j = 0; j < 2 * n_; ++j) {
      out += j < n_ ? "D " : "S ";
      out += std::to_string(j < n_ ? j : j - n_);
      out += " ";
      out += rows_[j].str();
      out += " ; ";
      out += to_string(phase_[j]);
      out += "\n";
    }
    return out;
  }

  // All structural invariants; O(n^3), test/debug use.
  void check_invariants() const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i < j) {
          if (!commutes(rows_[n_ + i], rows_[n_ + j]))
            throw std::logic_error("stabilizer rows do not commute");
          if (!commutes(rows_[i], rows_[j]))
            throw std::logic_error("destabilizer rows do not commute");
        }
        bool anti = !commutes(rows_[i], rows_[n_ + j]);
        if (anti != (i == j))
          throw std::logic_error("destabilizer pairing broken");
      }
    }
    // Full symplectic rank of the 2n rows.
    std::vector<PauliString> m = rows_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 2 * n_; ++col) {
      std::size_t q = col < n_ ? col : col - n_;
      bool xblock = col < n_;
      std::size_t piv = m.size();
      for (std::size_t j = rank; j < m.size(); ++j) {
        if (xblock ? m[j].x.get(q) : m[j].z.get(q)) {
          piv = j;
          break;
        }
      }
      if (piv == m.size())
        continue;
      std::swap(m[rank], m[piv]);
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (j != rank && (xblock ? m[j].x.get(q) : m[j].z.get(q))) {
          m[j].x.xor_with(m[rank].x);
          m[j].z.xor_with(m[rank].z);
        }
      }
      ++rank;
    }
    if (rank != 2 * n_)
      throw std::logic_error("rows not linearly independent");
  }

private:
  void mul_row(std::size_t dst, std::size_t src) {
    bool s = detail::row_product_sign(rows_[dst], rows_[src]);
    rows_[dst].x.xor_with(rows_[src].x);
    rows_[dst].z.xor_with(rows_[src].z);
    std::vector<BoolExpr> terms{phase_[dst], phase_[src]};
    if (s)
      terms.push_back(btrue());
    phase_[dst] = bxor(std::move(terms));
  }

  void swap_pair(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    std::swap(rows_[n_ + a], rows_[n_ + b]);
    std::swap(rows_[a], rows_[b]);
    std::swap(phase_[n_ + a], phase_[n_ + b]);
    std::swap(phase_[a], phase_[b]);
  }

  std::size_t n_ = 0;
  std::vector<PauliString> rows_;
  std::vector<BoolExpr> phase_;
};

// Canonicalize both sides; distinct Pauli row spaces can never be equal,
// otherwise the states coincide exactly when all phase pairs agree.
inline Formula equality_formula(const SymTableau &t1, const SymTableau &t2) {
  if (t1.num_qubits() != t2.num_qubits())
    throw std::invalid_argument("qubit count mismatch");
  SymTableau a = t1.canonical_form();
  SymTableau b = t2.canonical_form();
  std::vector<Formula> conj;
  for (std::size_t j = 0; j < a.num_qubits(); ++j) {
    if (!(a.stabilizer(j) == b.stabilizer(j)))
      return f_false();
    conj.push_back(f_atom(biff(a.stabilizer_phase(j), b.stabilizer_phase(j))));
  }
  return f_and(std::move(conj));
}

} // namespace symstab
