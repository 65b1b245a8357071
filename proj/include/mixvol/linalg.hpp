#pragma once

#include <mixvol/core.hpp>

namespace mixvol {

// Row-major rational matrices, sized for ambient dimension <= 8.

inline int rank_of(std::vector<QVec> rows) {
  if (rows.empty()) return 0;
  const size_t cols = rows[0].size();
  int rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows.size(); ++col) {
    size_t pivot = row;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[row]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == row || rows[i][col] == 0) continue;
      Rational f = rows[i][col] / rows[row][col];
      for (size_t j = col; j < cols; ++j) rows[i][j] -= f * rows[row][j];
    }
    ++row;
    ++rank;
  }
  return rank;
}

inline int rank_of_z(const std::vector<ZVec>& rows) {
  std::vector<QVec> q;
  q.reserve(rows.size());
  for (const auto& r : rows) q.push_back(to_qvec(r));
  return rank_of(q);
}

/// Any solution of A x = b, or nullopt.
inline std::optional<QVec> solve(std::vector<QVec> a, QVec b) {
  const size_t m = a.size();
  const size_t n = m ? a[0].size() : 0;
  std::vector<int> pivot_col(m, -1);
  size_t row = 0;
  for (size_t col = 0; col < n && row < m; ++col) {
    size_t pivot = row;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m) continue;
    std::swap(a[pivot], a[row]);
    std::swap(b[pivot], b[row]);
    for (size_t i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col] / a[row][col];
      for (size_t j = col; j < n; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    pivot_col[row] = static_cast<int>(col);
    ++row;
  }
  for (size_t i = row; i < m; ++i)
    if (b[i] != 0) return std::nullopt;
  QVec x(n, Rational(0));
  for (size_t i = 0; i < row; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
  return x;
}

/// Basis of {x : A x = 0}.
inline std::vector<QVec> nullspace(std::vector<QVec> a, size_t n) {
  const size_t m = a.size();
  std::vector<int> pivot_of_col(n, -1);
  size_t row = 0;
  for (size_t col = 0; col < n && row < m; ++col) {
    size_t pivot = row;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m) continue;
    std::swap(a[pivot], a[row]);
    for (size_t i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col] / a[row][col];
      for (size_t j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_of_col[col] = static_cast<int>(row);
    ++row;
  }
  std::vector<QVec> basis;
  for (size_t col = 0; col < n; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    QVec v(n, Rational(0));
    v[col] = 1;
    for (size_t c = 0; c < n; ++c) {
      int p = pivot_of_col[c];
      if (p >= 0) v[c] = -a[p][col] / a[p][c];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Saturated kernel basis of the integer row map x -> (row_i . x), x in Z^n.
/// Unimodular column operations reduce A to column echelon form; the
/// transform columns over the vanished part are the kernel.
inline std::vector<ZVec> integer_kernel(const std::vector<ZVec>& rows, int n) {
  std::vector<ZVec> a = rows;                    // m x n, mutated by column ops
  std::vector<ZVec> u;                           // n x n transform, columns tracked
  for (int i = 0; i < n; ++i) u.push_back(unit_vector(n, i));
  const size_t m = a.size();
  auto col_swap = [&](int c1, int c2) {
    for (size_t r = 0; r < m; ++r) std::swap(a[r][c1], a[r][c2]);
    for (int r = 0; r < n; ++r) std::swap(u[r][c1], u[r][c2]);
  };
  auto col_addmul = [&](int dst, int src, const Integer& f) {
    for (size_t r = 0; r < m; ++r) a[r][dst] += f * a[r][src];
    for (int r = 0; r < n; ++r) u[r][dst] += f * u[r][src];
  };
  int lead = 0;
  for (size_t r = 0; r < m && lead < n; ++r) {
    // gcd-reduce row r across columns lead..n-1
    while (true) {
      int nz = -1;
      for (int c = lead; c < n; ++c)
        if (a[r][c] != 0 && (nz < 0 || abs(a[r][c]) < abs(a[r][nz]))) nz = c;
      if (nz < 0) break;
      col_swap(lead, nz);
      bool clean = true;
      for (int c = lead + 1; c < n; ++c) {
        if (a[r][c] == 0) continue;
        Integer q = a[r][c] / a[r][lead];  // truncated division is fine here
        col_addmul(c, lead, -q);
        if (a[r][c] != 0) clean = false;
      }
      if (clean) {
        ++lead;
        break;
      }
    }
  }
  std::vector<ZVec> kernel;
  for (int c = lead; c < n; ++c) {
    ZVec col(n);
    bool zero_col = true;
    for (size_t r = 0; r < m; ++r)
      if (a[r][c] != 0) zero_col = false;
    if (!zero_col) continue;
    for (int r = 0; r < n; ++r) col[r] = u[r][c];
    kernel.push_back(std::move(col));
  }
  return kernel;
}

/// Basis of span(gens) ∩ Z^n (a saturated lattice).
inline std::vector<ZVec> lattice_basis_of_span(const std::vector<QVec>& gens, int n) {
  if (gens.empty()) return {};
  std::vector<QVec> ortho = nullspace(gens, n);  // rows of gens define the span
  // span = kernel of the orthogonal complement map
  std::vector<ZVec> constraints;
  constraints.reserve(ortho.size());
  for (const auto& v : ortho) constraints.push_back(primitive(to_integer_direction(v)));
  return integer_kernel(constraints, n);
}

/// Coordinates of w in the column basis B (full column rank); nullopt if w is
/// outside the span.
inline std::optional<QVec> coords_in_basis(const std::vector<ZVec>& basis_cols, const QVec& w) {
  const size_t n = w.size();
  const size_t d = basis_cols.size();
  std::vector<QVec> a(n, QVec(d, Rational(0)));
  for (size_t j = 0; j < d; ++j)
    for (size_t i = 0; i < n; ++i) a[i][j] = Rational(basis_cols[j][i]);
  return solve(std::move(a), w);
}

}  // namespace mixvol
