#pragma once

#include <stdexcept>
#include <vector>

#include "symstab/pauli.hpp"

namespace symstab::gf2 {

// Dense GF(2) matrix as bit rows.
using Matrix = std::vector<BitRow>;

inline Matrix identity(std::size_t n) {
  Matrix m(n, BitRow(n));
  for (std::size_t i = 0; i < n; ++i)
    m[i].set(i, true);
  return m;
}

// Row-reduces a copy and reports which input rows are pivots.
inline std::vector<std::size_t> pivot_rows(const Matrix &rows,
                                           std::size_t ncols) {
  Matrix work;
  std::vector<std::size_t> origin;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> pivot_col;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    BitRow v = rows[r];
    for (std::size_t k = 0; k < work.size(); ++k)
      if (v.get(pivot_col[k]))
        v.xor_with(work[k]);
    std::size_t col = ncols;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (v.get(c)) {
        col = c;
        break;
      }
    }
    if (col == ncols)
      continue;
    work.push_back(v);
    pivot_col.push_back(col);
    origin.push_back(r);
    pivots.push_back(r);
  }
  return pivots;
}

inline std::size_t rank(const Matrix &rows, std::size_t ncols) {
  return pivot_rows(rows, ncols).size();
}

// Basis of the null space {x : M x = 0} with M given row-wise.
inline Matrix kernel_basis(const Matrix &rows, std::size_t ncols) {
  // Reduce M to RREF, tracking pivot columns.
  Matrix work;
  std::vector<std::size_t> pivot_col;
  for (const BitRow &row : rows) {
    BitRow v = row;
    for (std::size_t k = 0; k < work.size(); ++k)
      if (v.get(pivot_col[k]))
        v.xor_with(work[k]);
    std::size_t col = ncols;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (v.get(c)) {
        col = c;
        break;
      }
    }
    if (col == ncols)
      continue;
    for (std::size_t k = 0; k < work.size(); ++k)
      if (work[k].get(col))
        work[k].xor_with(v);
    work.push_back(v);
    pivot_col.push_back(col);
  }
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t c : pivot_col)
    is_pivot[c] = true;

  Matrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free])
      continue;
    BitRow x(ncols);
    x.set(free, true);
    for (std::size_t k = 0; k < work.size(); ++k)
      if (work[k].get(free))
        x.set(pivot_col[k], true);
    basis.push_back(std::move(x));
  }
  return basis;
}

// Extends `base` (independent rows) to span base+extra, returning the
// chosen extra vectors (representatives of the quotient).
inline Matrix quotient_representatives(const Matrix &base, const Matrix &extra,
                                       std::size_t ncols) {
  Matrix work;
  std::vector<std::size_t> pivot_col;
  auto insert = [&](const BitRow &row) -> bool {
    BitRow v = row;
    for (std::size_t k = 0; k < work.size(); ++k)
      if (v.get(pivot_col[k]))
        v.xor_with(work[k]);
    std::size_t col = ncols;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (v.get(c)) {
        col = c;
        break;
      }
    }
    if (col == ncols)
      return false;
    work.push_back(v);
    pivot_col.push_back(col);
    return true;
  };
  for (const BitRow &row : base)
    if (!insert(row))
      throw std::invalid_argument("base rows are dependent");
  Matrix reps;
  for (const BitRow &row : extra)
    if (insert(row))
      reps.push_back(row);
  return reps;
}

// Inverse of a square matrix; throws when singular.
inline Matrix invert(const Matrix &m) {
  std::size_t n = m.size();
  Matrix a = m;
  Matrix inv = identity(n);
  std::size_t r = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t j = r; j < n; ++j) {
      if (a[j].get(col)) {
        piv = j;
        break;
      }
    }
    if (piv == n)
      throw std::invalid_argument("singular matrix");
    std::swap(a[r], a[piv]);
    std::swap(inv[r], inv[piv]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != r && a[j].get(col)) {
        a[j].xor_with(a[r]);
        inv[j].xor_with(inv[r]);
      }
    }
    ++r;
  }
  return inv;
}

} // namespace symstab::gf2
