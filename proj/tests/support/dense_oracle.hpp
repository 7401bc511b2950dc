#pragma once

// Brute-force dense-matrix oracle for small qubit counts. Everything here
// is deliberately naive: 2^n x 2^n complex matrices, O(8^n) multiplies.
// Used only by tests as an independent check of the bit-packed algebra.

#include <cassert>
#include <complex>
#include <vector>

#include "symstab/pauli.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Matrix = std::vector<std::vector<cplx>>;

inline Matrix zeros(std::size_t dim) {
  return Matrix(dim, std::vector<cplx>(dim, cplx(0, 0)));
}

inline Matrix identity(std::size_t dim) {
  Matrix m = zeros(dim);
  for (std::size_t i = 0; i < dim; ++i)
    m[i][i] = 1;
  return m;
}

inline Matrix matmul(const Matrix &a, const Matrix &b) {
  std::size_t dim = a.size();
  Matrix out = zeros(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) {
      if (a[i][k] == cplx(0, 0))
        continue;
      for (std::size_t j = 0; j < dim; ++j)
        out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline Matrix kron(const Matrix &a, const Matrix &b) {
  std::size_t da = a.size(), db = b.size();
  Matrix out = zeros(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          out[i * db + k][j * db + l] = a[i][j] * b[k][l];
  return out;
}

inline Matrix dagger(const Matrix &a) {
  std::size_t dim = a.size();
  Matrix out = zeros(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      out[i][j] = std::conj(a[j][i]);
  return out;
}

inline Matrix scale(const Matrix &a, cplx s) {
  Matrix out = a;
  for (auto &row : out)
    for (auto &v : row)
      v *= s;
  return out;
}

inline bool approx_equal(const Matrix &a, const Matrix &b, double tol = 1e-9) {
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (std::abs(a[i][j] - b[i][j]) > tol)
        return false;
  return true;
}

inline Matrix single_pauli(char c) {
  const cplx im(0, 1);
  switch (c) {
  case 'I':
    return {{1, 0}, {0, 1}};
  case 'X':
    return {{0, 1}, {1, 0}};
  case 'Y':
    return {{0, -im}, {im, 0}};
  case 'Z':
    return {{1, 0}, {0, -1}};
  }
  assert(false);
  return {};
}

inline Matrix pauli_matrix(const symstab::PauliString &p) {
  Matrix m = {{1}};
  for (std::size_t q = 0; q < p.n; ++q)
    m = kron(m, single_pauli(p.pauli_at(q)));
  return m;
}

inline Matrix phased_pauli_matrix(const symstab::PhasedPauli &pp) {
  const cplx im(0, 1);
  cplx phase = 1;
  for (int i = 0; i < pp.k; ++i)
    phase *= im;
  return scale(pauli_matrix(pp.p), phase);
}

// Full-width unitary for a gate on given targets of an n-qubit register.
inline Matrix gate_matrix(symstab::Gate g,
                          const std::vector<std::size_t> &targets,
                          std::size_t n) {
  using symstab::Gate;
  const double s2 = 1.0 / std::sqrt(2.0);
  const cplx im(0, 1);
  if (g == Gate::CNOT) {
    std::size_t dim = std::size_t(1) << n;
    Matrix m = zeros(dim);
    std::size_t c = targets[0], t = targets[1];
    // Qubit 0 is the most significant bit, matching the kron order below.
    for (std::size_t b = 0; b < dim; ++b) {
      std::size_t b2 = b;
      if ((b >> (n - 1 - c)) & 1)
        b2 ^= std::size_t(1) << (n - 1 - t);
      m[b2][b] = 1;
    }
    return m;
  }
  Matrix local;
  switch (g) {
  case Gate::I:
    local = single_pauli('I');
    break;
  case Gate::X:
    local = single_pauli('X');
    break;
  case Gate::Y:
    local = single_pauli('Y');
    break;
  case Gate::Z:
    local = single_pauli('Z');
    break;
  case Gate::H:
    local = {{s2, s2}, {s2, -s2}};
    break;
  case Gate::S:
    local = {{1, 0}, {0, im}};
    break;
  default:
    assert(false);
  }
  Matrix m = {{1}};
  for (std::size_t q = 0; q < n; ++q)
    m = kron(m, q == targets[0] ? local : identity(2));
  return m;
}

} // namespace oracle
