// Integer lattice computations: Hermite/Smith forms, kernels, intersections,
// canonical coset representatives. Matrices are small; clarity over speed.
#pragma once

#include <cassert>
#include <vector>

#include "qr/linalg.hpp"
#include "qr/rational.hpp"

namespace qr {

using VecZ = std::vector<Int>;
using MatZ = std::vector<VecZ>;  // row-major

inline MatZ matz_identity(int n) {
  MatZ m(size_t(n), VecZ(size_t(n), 0));
  for (size_t i = 0; i < size_t(n); ++i) m[i][i] = 1;
  return m;
}

inline MatZ matz_transpose(const MatZ& a) {
  size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
  MatZ r(m, VecZ(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

inline MatQ matz_to_q(const MatZ& a) {
  MatQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = VecQ(a[i].begin(), a[i].end());
  return r;
}

// Row-style Hermite normal form. Rows of the input generate a lattice; the
// returned rows are an echelon basis: pivot entries positive, entries above a
// pivot reduced into [0, pivot). Zero rows are dropped.
inline MatZ hnf_rows(MatZ m) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  size_t r = 0;
  std::vector<size_t> pivot_col;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid out column c below row r
    while (true) {
      size_t best = rows;
      for (size_t i = r; i < rows; ++i)
        if (m[i][c] != 0 && (best == rows || abs(m[i][c]) < abs(m[best][c]))) best = i;
      if (best == rows) break;
      std::swap(m[best], m[r]);
      bool clean = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        Int q = floor_div(m[i][c], m[r][c]);
        for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
        if (m[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (size_t j = 0; j < cols; ++j) m[r][j] = -m[r][j];
    pivot_col.push_back(c);
    ++r;
  }
  m.resize(r);
  // reduce entries above each pivot
  for (size_t i = 0; i < r; ++i) {
    for (size_t k = 0; k < i; ++k) {
      Int q = floor_div(m[k][pivot_col[i]], m[i][pivot_col[i]]);
      if (q == 0) continue;
      for (size_t j = 0; j < cols; ++j) m[k][j] -= q * m[i][j];
    }
  }
  return m;
}

struct SmithForm {
  MatZ d;       // diagonal, same shape as input, d[0][0] | d[1][1] | ...
  MatZ u, v;    // unimodular: u * a * v = d
};

// Smith normal form with transforms.
inline SmithForm smith_form(MatZ a) {
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  SmithForm s;
  s.u = MatZ(rows, VecZ(rows, 0));
  s.v = MatZ(cols, VecZ(cols, 0));
  for (size_t i = 0; i < rows; ++i) s.u[i][i] = 1;
  for (size_t j = 0; j < cols; ++j) s.v[j][j] = 1;

  auto row_sub = [&](size_t dst, size_t src, const Int& q) {
    for (size_t j = 0; j < cols; ++j) a[dst][j] -= q * a[src][j];
    for (size_t j = 0; j < rows; ++j) s.u[dst][j] -= q * s.u[src][j];
  };
  auto col_sub = [&](size_t dst, size_t src, const Int& q) {
    for (size_t i = 0; i < rows; ++i) a[i][dst] -= q * a[i][src];
    for (size_t i = 0; i < cols; ++i) s.v[i][dst] -= q * s.v[i][src];
  };
  auto row_swap = [&](size_t i, size_t j) {
    std::swap(a[i], a[j]);
    std::swap(s.u[i], s.u[j]);
  };
  auto col_swap = [&](size_t i, size_t j) {
    for (size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
    for (size_t r = 0; r < cols; ++r) std::swap(s.v[r][i], s.v[r][j]);
  };

  size_t t = 0;
  while (t < rows && t < cols) {
    // find a nonzero pivot in the trailing block, smallest |value|
    size_t pi = rows, pj = cols;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) pi = i, pj = j;
    if (pi == rows) break;
    row_swap(t, pi);
    col_swap(t, pj);
    bool again = false;
    for (size_t i = t + 1; i < rows; ++i) {
      if (a[i][t] == 0) continue;
      row_sub(i, t, floor_div(a[i][t], a[t][t]));
      if (a[i][t] != 0) again = true;
    }
    for (size_t j = t + 1; j < cols; ++j) {
      if (a[t][j] == 0) continue;
      col_sub(j, t, floor_div(a[t][j], a[t][t]));
      if (a[t][j] != 0) again = true;
    }
    if (again) continue;
    // divisibility: pivot must divide every trailing entry
    bool fixed = true;
    for (size_t i = t + 1; i < rows && fixed; ++i)
      for (size_t j = t + 1; j < cols && fixed; ++j)
        if (a[i][j] % a[t][t] != 0) {
          row_sub(t, i, Int(-1));  // add row i into row t, then redo
          fixed = false;
        }
    if (!fixed) continue;
    if (a[t][t] < 0) {
      for (size_t j = 0; j < cols; ++j) a[t][j] = -a[t][j];
      for (size_t j = 0; j < rows; ++j) s.u[t][j] = -s.u[t][j];
    }
    ++t;
  }
  s.d = std::move(a);
  return s;
}

// Basis (as rows) of the full integer kernel lattice {x in Z^n : A x = 0}.
inline MatZ integer_kernel(const MatZ& a) {
  if (a.empty()) return MatZ();
  size_t cols = a[0].size();
  SmithForm s = smith_form(a);
  size_t rank = 0;
  while (rank < s.d.size() && rank < cols && s.d[rank][rank] != 0) ++rank;
  // kernel = span of columns rank..cols-1 of v
  MatZ basis;
  for (size_t j = rank; j < cols; ++j) {
    VecZ col(cols);
    for (size_t i = 0; i < cols; ++i) col[i] = s.v[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

// Kernel lattice of a rational matrix (same kernel as the denominator-cleared
// integer matrix).
inline MatZ integer_kernel_q(const MatQ& a) {
  MatZ m(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    Int l = common_denominator(a[i]);
    m[i].resize(a[i].size());
    for (size_t j = 0; j < a[i].size(); ++j) m[i][j] = num(a[i][j] * l);
  }
  return integer_kernel(m);
}

// Intersection of the lattices generated by the rows of b1 and b2.
inline MatZ lattice_intersection(const MatZ& b1, const MatZ& b2) {
  if (b1.empty() || b2.empty()) return MatZ();
  size_t n = b1[0].size();
  assert(b2[0].size() == n);
  // x in L1 cap L2  <=>  x = c1 B1 = c2 B2; kernel of [B1^T | -B2^T]
  MatZ sys(n, VecZ(b1.size() + b2.size()));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < b1.size(); ++j) sys[i][j] = b1[j][i];
    for (size_t j = 0; j < b2.size(); ++j) sys[i][b1.size() + j] = -b2[j][i];
  }
  MatZ ker = integer_kernel(sys);
  MatZ result;
  for (const auto& k : ker) {
    VecZ x(n, 0);
    for (size_t j = 0; j < b1.size(); ++j)
      for (size_t i = 0; i < n; ++i) x[i] += k[j] * b1[j][i];
    result.push_back(std::move(x));
  }
  return hnf_rows(result);
}

// Canonical representative of x modulo the full-rank lattice spanned by the
// rows of h, which must be in row HNF. Deterministic: each pivot coordinate
// lands in [0, pivot).
inline VecZ reduce_mod_lattice(VecZ x, const MatZ& h) {
  size_t n = x.size();
  assert(h.size() == n && "coset reduction needs a full-rank period lattice");
  for (size_t i = 0; i < n; ++i) {
    assert(h[i][i] > 0);
    Int q = floor_div(x[i], h[i][i]);
    if (q == 0) continue;
    for (size_t j = i; j < n; ++j) x[j] -= q * h[i][j];
  }
  return x;
}

// |det| of a full-rank integer lattice basis given as rows (the index in Z^n).
inline Int lattice_index(const MatZ& rows) {
  Rat d = determinant(matz_to_q(rows));
  Int v = num(d);
  return v < 0 ? Int(-v) : v;
}

}  // namespace qr
