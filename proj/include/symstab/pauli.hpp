#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace symstab {

// Packed bit row: bit q of word q/64 holds qubit q.
class BitRow {
public:
  BitRow() = default;
  explicit BitRow(std::size_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }
  std::size_t num_words() const { return words_.size(); }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool v) {
    uint64_t mask = uint64_t(1) << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= uint64_t(1) << (i & 63); }

  uint64_t word(std::size_t w) const { return words_[w]; }
  uint64_t &word(std::size_t w) { return words_[w]; }

  void xor_with(const BitRow &other) {
    for (std::size_t w = 0; w < words_.size(); ++w)
      words_[w] ^= other.words_[w];
  }

  bool any() const {
    for (uint64_t w : words_)
      if (w)
        return true;
    return false;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (uint64_t w : words_)
      c += std::popcount(w);
    return c;
  }

  // Parity of the AND with another row.
  bool dot(const BitRow &other) const {
    uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w)
      acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
  }

  bool operator==(const BitRow &other) const {
    return nbits_ == other.nbits_ && words_ == other.words_;
  }

private:
  std::size_t nbits_ = 0;
  std::vector<uint64_t> words_;
};

// Hermitian n-qubit Pauli word, sign tracked separately by callers.
// Qubit q carries I/X/Z/Y for (x_q, z_q) = 00/10/01/11.
struct PauliString {
  std::size_t n = 0;
  BitRow x;
  BitRow z;

  PauliString() = default;
  explicit PauliString(std::size_t n_) : n(n_), x(n_), z(n_) {}

  // Parses "[+|-]PPP..." with P in {I,X,Y,Z}; a leading '-' is rejected
  // here since the sign lives outside the string type.
  static PauliString parse(const std::string &text) {
    std::string s = text;
    if (!s.empty() && s[0] == '+')
      s = s.substr(1);
    PauliString p(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      switch (s[i]) {
      case 'I':
        break;
      case 'X':
        p.x.set(i, true);
        break;
      case 'Z':
        p.z.set(i, true);
        break;
      case 'Y':
        p.x.set(i, true);
        p.z.set(i, true);
        break;
      default:
        throw std::invalid_argument("bad pauli character in \"" + text + "\"");
      }
    }
    return p;
  }

  bool is_identity() const { return !x.any() && !z.any(); }

  std::size_t weight() const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < x.num_words(); ++w)
      c += std::popcount(x.word(w) | z.word(w));
    return c;
  }

  char pauli_at(std::size_t q) const {
    bool xb = x.get(q), zb = z.get(q);
    if (xb && zb)
      return 'Y';
    if (xb)
      return 'X';
    if (zb)
      return 'Z';
    return 'I';
  }

  void set_pauli(std::size_t q, char c) {
    switch (c) {
    case 'I':
      x.set(q, false);
      z.set(q, false);
      break;
    case 'X':
      x.set(q, true);
      z.set(q, false);
      break;
    case 'Z':
      x.set(q, false);
      z.set(q, true);
      break;
    case 'Y':
      x.set(q, true);
      z.set(q, true);
      break;
    default:
      throw std::invalid_argument("bad pauli character");
    }
  }

  std::string str(bool sign_plus = true) const {
    std::string out;
    if (sign_plus)
      out.push_back('+');
    for (std::size_t q = 0; q < n; ++q)
      out.push_back(pauli_at(q));
    return out;
  }

  bool operator==(const PauliString &other) const {
    return n == other.n && x == other.x && z == other.z;
  }
};

inline void require_same_length(const PauliString &p, const PauliString &q) {
  if (p.n != q.n)
    throw std::invalid_argument("pauli length mismatch");
}

// Symplectic inner product is zero iff the strings commute.
inline bool commutes(const PauliString &p, const PauliString &q) {
  require_same_length(p, q);
  uint64_t acc = 0;
  for (std::size_t w = 0; w < p.x.num_words(); ++w)
    acc ^= (p.x.word(w) & q.z.word(w)) ^ (p.z.word(w) & q.x.word(w));
  return (std::popcount(acc) & 1) == 0;
}

// Pauli word with global phase i^k.
struct PhasedPauli {
  PauliString p;
  int k = 0; // mod 4

  bool hermitian() const { return k == 0 || k == 2; }
  bool sign_bit() const { return k == 2; }
};

namespace detail {
constexpr int mul_phase_entry(int i) {
  bool x1 = i & 1, z1 = (i >> 1) & 1, x2 = (i >> 2) & 1, z2 = (i >> 3) & 1;
  // XY=iZ, YZ=iX, ZX=iY; reversed products pick up -i.
  if (!(x1 || z1) || !(x2 || z2))
    return 0;
  if (x1 == x2 && z1 == z2)
    return 0;
  int a = x1 ? (z1 ? 2 : 1) : 3; // X=1, Y=2, Z=3
  int b = x2 ? (z2 ? 2 : 1) : 3;
  return (b - a + 3) % 3 == 1 ? 1 : 3;
}

// i-power (mod 4) of a single-qubit Pauli product, indexed by
// x1 | z1<<1 | x2<<2 | z2<<3.
constexpr int8_t kMulPhase[16] = {
    int8_t(mul_phase_entry(0)),  int8_t(mul_phase_entry(1)),
    int8_t(mul_phase_entry(2)),  int8_t(mul_phase_entry(3)),
    int8_t(mul_phase_entry(4)),  int8_t(mul_phase_entry(5)),
    int8_t(mul_phase_entry(6)),  int8_t(mul_phase_entry(7)),
    int8_t(mul_phase_entry(8)),  int8_t(mul_phase_entry(9)),
    int8_t(mul_phase_entry(10)), int8_t(mul_phase_entry(11)),
    int8_t(mul_phase_entry(12)), int8_t(mul_phase_entry(13)),
    int8_t(mul_phase_entry(14)), int8_t(mul_phase_entry(15)),
};

// Sum of per-qubit i-powers (mod 4) for multiplying word-aligned blocks,
// word-parallel two-bit accumulator.
inline int mul_phase_words(uint64_t x1, uint64_t z1, uint64_t x2,
                           uint64_t z2) {
  // Per qubit the contribution is +1, -1 or 0. Contributions of +1:
  //   XY, YZ, ZX; contributions of -1 (=3 mod 4): YX, ZY, XZ.
  uint64_t plus = (x1 & ~z1 & x2 & z2)    // X then Y
                  | (x1 & z1 & ~x2 & z2)  // Y then Z
                  | (~x1 & z1 & x2 & ~z2) // Z then X
      ;
  uint64_t minus = (x1 & z1 & x2 & ~z2)    // Y then X
                   | (~x1 & z1 & x2 & z2)  // Z then Y
                   | (x1 & ~z1 & ~x2 & z2) // X then Z
      ;
  int delta = std::popcount(plus) - std::popcount(minus);
  return ((delta % 4) + 4) % 4;
}
} // namespace detail

// Product of two phased Paulis with exact i-power bookkeeping.
inline PhasedPauli mul(const PhasedPauli &a, const PhasedPauli &b) {
  require_same_length(a.p, b.p);
  PhasedPauli out;
  out.p = PauliString(a.p.n);
  int k = a.k + b.k;
  for (std::size_t w = 0; w < a.p.x.num_words(); ++w) {
    uint64_t x1 = a.p.x.word(w), z1 = a.p.z.word(w);
    uint64_t x2 = b.p.x.word(w), z2 = b.p.z.word(w);
    k += detail::mul_phase_words(x1, z1, x2, z2);
    out.p.x.word(w) = x1 ^ x2;
    out.p.z.word(w) = z1 ^ z2;
  }
  out.k = ((k % 4) + 4) % 4;
  return out;
}

enum class Gate : uint8_t { I, X, Y, Z, H, S, CNOT };

inline Gate gate_from_name(const std::string &name) {
  if (name == "I")
    return Gate::I;
  if (name == "X")
    return Gate::X;
  if (name == "Y")
    return Gate::Y;
  if (name == "Z")
    return Gate::Z;
  if (name == "H")
    return Gate::H;
  if (name == "S")
    return Gate::S;
  if (name == "CNOT" || name == "CX")
    return Gate::CNOT;
  throw std::invalid_argument("unknown gate \"" + name + "\"");
}

inline const char *gate_name(Gate g) {
  switch (g) {
  case Gate::I:
    return "I";
  case Gate::X:
    return "X";
  case Gate::Y:
    return "Y";
  case Gate::Z:
    return "Z";
  case Gate::H:
    return "H";
  case Gate::S:
    return "S";
  case Gate::CNOT:
    return "CNOT";
  }
  return "?";
}

inline std::size_t gate_arity(Gate g) { return g == Gate::CNOT ? 2 : 1; }

// Conjugates p by the gate (V p V^dagger), in place; returns the sign
// flip bit. Hermitian in, Hermitian out.
inline bool conj_clifford_inplace(Gate gate, const std::vector<std::size_t> &targets,
                                  PauliString &p) {
  if (targets.size() != gate_arity(gate))
    throw std::invalid_argument("gate arity mismatch");
  for (std::size_t t : targets)
    if (t >= p.n)
      throw std::invalid_argument("gate target out of range");
  if (gate == Gate::CNOT && targets[0] == targets[1])
    throw std::invalid_argument("CNOT targets must be distinct");

  switch (gate) {
  case Gate::I:
    return false;
  case Gate::X: {
    return p.z.get(targets[0]);
  }
  case Gate::Y: {
    std::size_t q = targets[0];
    return p.x.get(q) ^ p.z.get(q);
  }
  case Gate::Z: {
    return p.x.get(targets[0]);
  }
  case Gate::H: {
    std::size_t q = targets[0];
    bool xb = p.x.get(q), zb = p.z.get(q);
    p.x.set(q, zb);
    p.z.set(q, xb);
    return xb && zb;
  }
  case Gate::S: {
    std::size_t q = targets[0];
    bool xb = p.x.get(q), zb = p.z.get(q);
    p.z.set(q, zb ^ xb);
    return xb && zb;
  }
  case Gate::CNOT: {
    std::size_t c = targets[0], t = targets[1];
    bool xc = p.x.get(c), zc = p.z.get(c);
    bool xt = p.x.get(t), zt = p.z.get(t);
    p.x.set(t, xt ^ xc);
    p.z.set(c, zc ^ zt);
    return xc && zt && (xt == zc);
  }
  }
  return false;
}

inline std::pair<PauliString, bool>
conj_clifford(Gate gate, const std::vector<std::size_t> &targets,
              const PauliString &p) {
  PauliString out = p;
  bool flip = conj_clifford_inplace(gate, targets, out);
  return {out, flip};
}

} // namespace symstab
