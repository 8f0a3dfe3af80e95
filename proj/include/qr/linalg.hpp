// Dense exact linear algebra over the rationals, sized for small ranks.
#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "qr/rational.hpp"

namespace qr {

using VecQ = std::vector<Rat>;
using MatQ = std::vector<VecQ>;  // row-major

inline VecQ vec_add(const VecQ& a, const VecQ& b) {
  assert(a.size() == b.size());
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline VecQ vec_sub(const VecQ& a, const VecQ& b) {
  assert(a.size() == b.size());
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline VecQ vec_scale(const Rat& c, const VecQ& a) {
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline VecQ vec_neg(const VecQ& a) { return vec_scale(Rat(-1), a); }

// plain (dual) pairing, no metric
inline Rat dot(const VecQ& a, const VecQ& b) {
  assert(a.size() == b.size());
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero_vec(const VecQ& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

inline VecQ zero_vec(size_t n) { return VecQ(n, Rat(0)); }

inline MatQ mat_identity(size_t n) {
  MatQ m(n, VecQ(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline VecQ mat_vec(const MatQ& m, const VecQ& v) {
  VecQ r(m.size(), Rat(0));
  for (size_t i = 0; i < m.size(); ++i) {
    assert(m[i].size() == v.size());
    for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  }
  return r;
}

inline MatQ mat_mul(const MatQ& a, const MatQ& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  MatQ r(n, VecQ(m, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    assert(a[i].size() == k);
    for (size_t l = 0; l < k; ++l)
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
  }
  return r;
}

inline MatQ mat_transpose(const MatQ& a) {
  size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
  MatQ r(m, VecQ(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

// In-place reduced row echelon form; returns the pivot column of each pivot row.
inline std::vector<size_t> rref(MatQ& m) {
  std::vector<size_t> pivots;
  size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline size_t mat_rank(MatQ m) { return rref(m).size(); }

struct LinearSolution {
  bool consistent = false;
  VecQ particular;    // one solution (free variables set to 0)
  MatQ nullspace;     // rows form a basis of the homogeneous solutions
};

// Solve A x = b exactly. A is rows-of-equations.
inline LinearSolution solve_linear(const MatQ& a, const VecQ& b) {
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  assert(b.size() == rows);
  MatQ aug(rows, VecQ(cols + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  auto pivots = rref(aug);
  LinearSolution sol;
  if (!pivots.empty() && pivots.back() == cols) return sol;  // 0 = 1 row
  sol.consistent = true;
  sol.particular = zero_vec(cols);
  std::vector<bool> is_pivot(cols, false);
  for (size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = true;
    sol.particular[pivots[r]] = aug[r][cols];
  }
  for (size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    VecQ dir = zero_vec(cols);
    dir[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) dir[pivots[r]] = -aug[r][c];
    sol.nullspace.push_back(std::move(dir));
  }
  return sol;
}

// Basis of {x : A x = 0}, as rows.
inline MatQ nullspace(const MatQ& a) {
  if (a.empty()) return MatQ();
  return solve_linear(a, zero_vec(a.size())).nullspace;
}

inline std::optional<MatQ> mat_inverse(const MatQ& a) {
  size_t n = a.size();
  MatQ aug(n, VecQ(2 * n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    assert(a[i].size() == n);
    for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  auto pivots = rref(aug);
  // a singular left block still yields n pivots (they spill into the identity
  // half), so every pivot must sit in the left block
  if (pivots.size() != n || (n > 0 && pivots.back() >= n)) return std::nullopt;
  MatQ inv(n, VecQ(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

inline Rat determinant(MatQ m) {
  size_t n = m.size();
  Rat det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t sel = c;
    while (sel < n && m[sel][c] == 0) ++sel;
    if (sel == n) return Rat(0);
    if (sel != c) {
      std::swap(m[sel], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Rat inv = Rat(1) / m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] * inv;
      for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace qr
