#ifndef LELONG_MATRIX_HPP
#define LELONG_MATRIX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "lelong/error.hpp"
#include "lelong/rational.hpp"
#include "lelong/upoly.hpp"

namespace lelong {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

/// Reduced row echelon form with the pivot column of each nonzero row.
struct Rref {
  Matrix rows;
  std::vector<int> pivots;
  int rank() const { return static_cast<int>(pivots.size()); }
};

/// Exact Gauss-Jordan elimination. Among candidate rows the pivot with the
/// smallest bit size is taken.
inline Rref rref(Matrix m, std::size_t ncols)
{
  Rref out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t best = m.size();
    std::size_t best_size = 0;
    for (std::size_t r = row; r < m.size(); ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const std::size_t s = bit_size(m[r][col]);
      if (best == m.size() || s < best_size) {
        best = r;
        best_size = s;
      }
    }
    if (best == m.size()) continue;
    std::swap(m[row], m[best]);
    const Rational inv = 1 / m[row][col];
    for (std::size_t c = col; c < ncols; ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < ncols; ++c)
        if (sgn(m[row][c]) != 0) m[r][c] -= f * m[row][c];
    }
    out.pivots.push_back(static_cast<int>(col));
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

inline int rank(const Matrix& m, std::size_t ncols) { return rref(m, ncols).rank(); }

/// Rank computed with early exit once `target` is reached; returns
/// min(rank, target). Cheaper when only "full rank or not" matters.
inline int rank_at_least(Matrix m, std::size_t ncols, int target)
{
  int rk = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t piv = m.size();
    for (std::size_t r = row; r < m.size(); ++r)
      if (sgn(m[r][col]) != 0 && (piv == m.size() || bit_size(m[r][col]) < bit_size(m[piv][col]))) piv = r;
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    for (std::size_t r = row + 1; r < m.size(); ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col] / m[row][col];
      for (std::size_t c = col; c < ncols; ++c) m[r][c] -= f * m[row][c];
    }
    ++row;
    if (++rk >= target) return rk;
  }
  return rk;
}

/// Basis of {v : M v = 0} in canonical form: the reduced row echelon form of
/// the basis vectors, so the result is independent of how M was presented.
inline Matrix kernel_basis(const Matrix& m, std::size_t ncols)
{
  const Rref r = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(ncols);
    v[free] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[static_cast<std::size_t>(r.pivots[i])] = -r.rows[i][free];
    basis.push_back(std::move(v));
  }
  return rref(std::move(basis), ncols).rows;
}

/// Solves M x = b exactly. Returns (false, {}) when the system is
/// inconsistent, otherwise the solution with all free variables zero.
inline std::pair<bool, Vector> solve(const Matrix& m, const Vector& b, std::size_t ncols)
{
  Matrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const Rref r = rref(std::move(aug), ncols + 1);
  Vector x(ncols);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    if (static_cast<std::size_t>(r.pivots[i]) == ncols) return {false, {}};
    x[static_cast<std::size_t>(r.pivots[i])] = r.rows[i][ncols];
  }
  return {true, x};
}

/// Fraction-free (Bareiss) determinant over an integral domain T. Requires
/// exact_quotient(T, T).
template <typename T>
T bareiss_determinant(std::vector<std::vector<T>> a)
{
  const std::size_t n = a.size();
  if (n == 0) return T(Rational(1));
  T prev = T(Rational(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero_value(a[k][k])) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && is_zero_value(a[swap_row][k])) ++swap_row;
      if (swap_row == n) return T();
      std::swap(a[k], a[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = exact_quotient(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
    prev = a[k][k];
  }
  T det = a[n - 1][n - 1];
  if (negate) det = -det;
  return det;
}

}  // namespace lelong

#endif  // LELONG_MATRIX_HPP
