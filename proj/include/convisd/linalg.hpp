#ifndef CONVISD_LINALG_HPP
#define CONVISD_LINALG_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "convisd/matrix.hpp"

namespace convisd {

struct RrefResult {
  Matrix reduced;
  Matrix transform;  // transform * input == reduced
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return pivots.size(); }
};

// Gauss-Jordan elimination with the row operations recorded in `transform`.
inline RrefResult rref(const Matrix& m) {
  const Field& f = m.field();
  RrefResult r{m, Matrix::identity(f, m.rows()), {}};
  Matrix& a = r.reduced;
  Matrix& t = r.transform;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(row, piv);
    t.swap_rows(row, piv);
    const Elem s = f.inv(a(row, col));
    a.scale_row(row, s);
    t.scale_row(row, s);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Elem c = f.neg(a(i, col));
      a.add_row_multiple(i, row, c);
      t.add_row_multiple(i, row, c);
    }
    r.pivots.push_back(col);
    ++row;
  }
  return r;
}

inline std::size_t rank(const Matrix& m) {
  Matrix a = m;
  const Field& f = a.field();
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(row, piv);
    const Elem s = f.inv(a(row, col));
    for (std::size_t i = row + 1; i < a.rows(); ++i)
      if (a(i, col)) a.add_row_multiple(i, row, f.neg(f.mul(a(i, col), s)));
    ++row;
  }
  return row;
}

/*
 * Finds m with m * a == b. Free variables are set to zero, so the result is
 * deterministic when a does not have full row rank. Returns nullopt when b is
 * outside the row space of a.
 */
inline std::optional<Vector> solve_left(const Matrix& a, std::span<const Elem> b) {
  if (b.size() != a.cols()) throw DimensionMismatch("solve_left: rhs length differs from column count");
  const Field& f = a.field();
  const std::size_t k = a.rows();
  // Augmented system a^T | b^T, eliminated on its first k columns.
  Matrix aug(f, a.cols(), k + 1);
  for (std::size_t i = 0; i < a.cols(); ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = a(j, i);
    aug(i, k) = b[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < aug.rows(); ++col) {
    std::size_t piv = row;
    while (piv < aug.rows() && aug(piv, col) == 0) ++piv;
    if (piv == aug.rows()) continue;
    aug.swap_rows(row, piv);
    aug.scale_row(row, f.inv(aug(row, col)));
    for (std::size_t i = 0; i < aug.rows(); ++i)
      if (i != row && aug(i, col)) aug.add_row_multiple(i, row, f.neg(aug(i, col)));
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < aug.rows(); ++i)
    if (aug(i, k) != 0) return std::nullopt;
  Vector m(k, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) m[pivots[i]] = aug(i, k);
  return m;
}

inline Matrix submatrix_columns(const Matrix& m, std::span<const std::size_t> idx) {
  std::vector<std::size_t> sorted(idx.begin(), idx.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= m.cols()) throw IndexOutOfRange("column index " + std::to_string(sorted[i]) + " out of range");
    if (i && sorted[i] == sorted[i - 1]) throw IndexOutOfRange("duplicate column index");
  }
  Matrix s(m.field(), m.rows(), sorted.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < sorted.size(); ++j) s(i, j) = m(i, sorted[j]);
  return s;
}

inline bool is_information_set(const Matrix& g, std::span<const std::size_t> idx) {
  if (idx.size() != g.rows()) throw SizeMismatch("information set must have exactly K columns");
  return rank(submatrix_columns(g, idx)) == g.rows();
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw NotSquare("inverse of non-square matrix");
  auto r = rref(m);
  if (r.rank() != m.rows()) return std::nullopt;
  return r.transform;
}

// Rows span the right kernel {x : m * x^T = 0}; the result has cols() - rank rows.
inline Matrix nullspace(const Matrix& m) {
  auto r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  Matrix basis(m.field(), n - r.rank(), n);
  std::size_t out = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    basis(out, free) = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) basis(out, r.pivots[i]) = m.field().neg(r.reduced(i, free));
    ++out;
  }
  return basis;
}

// Number of nonzero words of weight <= w_max in F_q^n, saturating in long double.
inline long double count_words_up_to(std::size_t n, std::uint64_t q, std::size_t w_max) {
  long double total = 0, term = 1;
  for (std::size_t w = 1; w <= std::min(w_max, n); ++w) {
    term = term * static_cast<long double>(n - w + 1) / static_cast<long double>(w) * static_cast<long double>(q - 1);
    total += term;
  }
  return total;
}

/*
 * Calls visit(word) for every word x of weight <= w_max with h * x^T == target,
 * in order of increasing support positions (depth first). The zero word is
 * visited first when target is zero.
 */
template <class Visit>
void for_each_syndrome_solution(const Matrix& h, std::span<const Elem> target, std::size_t w_max, Visit&& visit) {
  const Field& f = h.field();
  const std::size_t n = h.cols(), r = h.rows();
  if (target.size() != r) throw DimensionMismatch("syndrome length differs from parity rows");
  w_max = std::min(w_max, n);
  std::vector<Vector> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = h.column(j);
  Vector word(n, 0);
  std::vector<Vector> syn(w_max + 1, Vector(r, 0));
  const std::uint32_t q1 = f.size() - 1;

  auto recurse = [&](auto& self, std::size_t depth, std::size_t start) -> void {
    if (std::equal(syn[depth].begin(), syn[depth].end(), target.begin())) visit(static_cast<const Vector&>(word));
    if (depth == w_max) return;
    for (std::size_t pos = start; pos < n; ++pos) {
      for (std::uint32_t v = 1; v <= q1; ++v) {
        word[pos] = static_cast<Elem>(v);
        for (std::size_t i = 0; i < r; ++i) syn[depth + 1][i] = f.add(syn[depth][i], f.mul(word[pos], cols[pos][i]));
        self(self, depth + 1, pos + 1);
      }
      word[pos] = 0;
    }
  };
  recurse(recurse, 0, 0);
}

}  // namespace convisd

#endif
