#ifndef CONVISD_POLYMAT_HPP
#define CONVISD_POLYMAT_HPP

#include <optional>
#include <string>
#include <vector>

#include "convisd/linalg.hpp"
#include "convisd/matrix.hpp"
#include "convisd/poly.hpp"

namespace convisd {

/*
 * Matrix over F_q[z] stored as its coefficient matrices: coeffs()[i] is the
 * matrix of z^i. Trailing zero coefficients are never stored, so the zero
 * matrix has no coefficients and degree() == nullopt.
 */
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(Field f, std::size_t rows, std::size_t cols) : field_(std::move(f)), rows_(rows), cols_(cols) {}

  static PolyMatrix from_coeffs(const Field& f, std::size_t rows, std::size_t cols, std::vector<Matrix> coeffs) {
    PolyMatrix p(f, rows, cols);
    for (const auto& c : coeffs)
      if (c.rows() != rows || c.cols() != cols) throw DimensionMismatch("coefficient matrix shape mismatch");
    p.coeffs_ = std::move(coeffs);
    p.trim();
    return p;
  }

  static PolyMatrix constant(const Matrix& m) { return from_coeffs(m.field(), m.rows(), m.cols(), {m}); }

  static PolyMatrix identity(const Field& f, std::size_t n) { return constant(Matrix::identity(f, n)); }

  // Row-major grid of entries.
  static PolyMatrix from_entries(const Field& f, std::size_t rows, std::size_t cols, const std::vector<Poly>& e) {
    if (e.size() != rows * cols) throw DimensionMismatch("entry grid size mismatch");
    std::size_t len = 0;
    for (const auto& p : e) len = std::max(len, p.size());
    std::vector<Matrix> coeffs(len, Matrix(f, rows, cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        const Poly& p = e[i * cols + j];
        for (std::size_t d = 0; d < p.size(); ++d) coeffs[d](i, j) = p[d];
      }
    return from_coeffs(f, rows, cols, std::move(coeffs));
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Matrix>& coeffs() const { return coeffs_; }

  std::optional<std::size_t> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }
  // Degree with the zero matrix counted as 0; convenient for sizing.
  std::size_t degree_or_zero() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  bool is_zero() const { return coeffs_.empty(); }

  Matrix coeff(std::size_t d) const { return d < coeffs_.size() ? coeffs_[d] : Matrix(field_, rows_, cols_); }

  Poly entry(std::size_t i, std::size_t j) const {
    Poly p(coeffs_.size());
    for (std::size_t d = 0; d < coeffs_.size(); ++d) p[d] = coeffs_[d](i, j);
    poly::trim(p);
    return p;
  }

  std::vector<Poly> entries() const {
    std::vector<Poly> e;
    e.reserve(rows_ * cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) e.push_back(entry(i, j));
    return e;
  }

  PolyMatrix transpose() const {
    std::vector<Matrix> t;
    for (const auto& c : coeffs_) t.push_back(c.transpose());
    return from_coeffs(field_, cols_, rows_, std::move(t));
  }

  PolyMatrix rows_range(std::size_t r0, std::size_t nr) const {
    std::vector<Matrix> t;
    for (const auto& c : coeffs_) t.push_back(c.block(r0, 0, nr, cols_));
    return from_coeffs(field_, nr, cols_, std::move(t));
  }

  PolyMatrix cols_range(std::size_t c0, std::size_t nc) const {
    std::vector<Matrix> t;
    for (const auto& c : coeffs_) t.push_back(c.block(0, c0, rows_, nc));
    return from_coeffs(field_, rows_, nc, std::move(t));
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      s += "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + poly::to_string(entry(i, j));
      s += "]\n";
    }
    return s;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Matrix> coeffs_;
};

inline PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("poly_mul: inner dimensions differ");
  if (a.field() != b.field()) throw DimensionMismatch("poly_mul: fields differ");
  const Field& f = a.field();
  if (a.is_zero() || b.is_zero()) return PolyMatrix(f, a.rows(), b.cols());
  std::vector<Matrix> c(a.coeffs().size() + b.coeffs().size() - 1, Matrix(f, a.rows(), b.cols()));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] = c[i + j] + a.coeffs()[i] * b.coeffs()[j];
  return PolyMatrix::from_coeffs(f, a.rows(), b.cols(), std::move(c));
}

inline PolyMatrix poly_add(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("poly_add: shapes differ");
  const std::size_t len = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<Matrix> c;
  for (std::size_t d = 0; d < len; ++d) c.push_back(a.coeff(d) + b.coeff(d));
  return PolyMatrix::from_coeffs(a.field(), a.rows(), a.cols(), std::move(c));
}

namespace detail {

// Dense grid of polynomials used by the column-reduction routines.
struct PolyGrid {
  std::size_t rows = 0, cols = 0;
  std::vector<Poly> e;

  Poly& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
  const Poly& at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }

  static PolyGrid of(const PolyMatrix& m) { return {m.rows(), m.cols(), m.entries()}; }
  static PolyGrid identity(std::size_t n) {
    PolyGrid g{n, n, std::vector<Poly>(n * n)};
    for (std::size_t i = 0; i < n; ++i) g.at(i, i) = Poly{1};
    return g;
  }
  PolyMatrix to_matrix(const Field& f) const { return PolyMatrix::from_entries(f, rows, cols, e); }

  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, a), at(i, b));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols; ++j) std::swap(at(a, j), at(b, j));
  }
  // col[dst] -= factor * col[src]
  void sub_col_multiple(const Field& f, std::size_t dst, std::size_t src, const Poly& factor) {
    for (std::size_t i = 0; i < rows; ++i)
      if (!at(i, src).empty()) at(i, dst) = poly::sub(f, at(i, dst), poly::mul(f, factor, at(i, src)));
  }
  // row[dst] += factor * row[src]
  void add_row_multiple(const Field& f, std::size_t dst, std::size_t src, const Poly& factor) {
    for (std::size_t j = 0; j < cols; ++j)
      if (!at(src, j).empty()) at(dst, j) = poly::add(f, at(dst, j), poly::mul(f, factor, at(src, j)));
  }
  void scale_col(const Field& f, std::size_t c, Elem s) {
    for (std::size_t i = 0; i < rows; ++i) at(i, c) = poly::scale(f, at(i, c), s);
  }
  void scale_row(const Field& f, std::size_t r, Elem s) {
    for (std::size_t j = 0; j < cols; ++j) at(r, j) = poly::scale(f, at(r, j), s);
  }
};

}  // namespace detail

struct HermiteForm {
  PolyMatrix h;      // g * u
  PolyMatrix u;      // unimodular, n x n
  PolyMatrix u_inv;  // u^{-1}
  Elem det_u = 1;    // det(u), a nonzero constant
};

/*
 * Row Hermite form by unimodular column operations: h = g * u is lower
 * triangular in its first k columns and zero beyond, with monic diagonal and
 * deg h_ij < deg h_ii for j < i. Pivot choice is the lowest-degree entry, ties
 * to the lowest column index. The inverse of u is accumulated alongside.
 */
inline HermiteForm row_hermite_form(const PolyMatrix& g) {
  const Field& f = g.field();
  const std::size_t k = g.rows(), n = g.cols();
  if (k > n) throw RankDeficient("more rows than columns");
  auto h = detail::PolyGrid::of(g);
  auto u = detail::PolyGrid::identity(n);
  auto ui = detail::PolyGrid::identity(n);
  Elem det = 1;

  auto eliminate = [&](std::size_t i, std::size_t j) {
    auto [quot, rem] = poly::divmod(f, h.at(i, j), h.at(i, i));
    if (quot.empty()) return;
    h.sub_col_multiple(f, j, i, quot);
    u.sub_col_multiple(f, j, i, quot);
    ui.add_row_multiple(f, i, j, quot);
  };

  for (std::size_t i = 0; i < k; ++i) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = i; j < n; ++j) {
        if (h.at(i, j).empty()) continue;
        if (best == n || h.at(i, j).size() < h.at(i, best).size()) best = j;
      }
      if (best == n) throw RankDeficient("generator is not of full row rank");
      if (best != i) {
        h.swap_cols(i, best);
        u.swap_cols(i, best);
        ui.swap_rows(i, best);
        det = f.neg(det);
      }
      bool done = true;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (h.at(i, j).empty()) continue;
        eliminate(i, j);
        if (!h.at(i, j).empty()) done = false;
      }
      if (done) break;
    }
    const Elem lead = h.at(i, i).back();
    if (lead != 1) {
      const Elem s = f.inv(lead);
      h.scale_col(f, i, s);
      u.scale_col(f, i, s);
      ui.scale_row(f, i, lead);
      det = f.mul(det, s);
    }
    for (std::size_t j = 0; j < i; ++j)
      if (!h.at(i, j).empty()) eliminate(i, j);
  }
  return {h.to_matrix(f), u.to_matrix(f), ui.to_matrix(f), det};
}

// Determinant of a square polynomial matrix (zero polynomial when singular).
inline Poly poly_determinant(const PolyMatrix& a) {
  if (a.rows() != a.cols()) throw NotSquare("determinant of non-square matrix");
  if (a.rows() == 0) return Poly{1};
  const Field& f = a.field();
  HermiteForm hf;
  try {
    hf = row_hermite_form(a);
  } catch (const RankDeficient&) {
    return {};
  }
  Poly det{f.inv(hf.det_u)};
  for (std::size_t i = 0; i < a.rows(); ++i) det = poly::mul(f, det, hf.h.entry(i, i));
  return det;
}

inline bool is_unimodular(const PolyMatrix& u) {
  if (u.rows() != u.cols()) throw NotSquare("unimodularity requires a square matrix");
  return poly::is_nonzero_constant(poly_determinant(u));
}

inline bool is_left_prime(const PolyMatrix& g) {
  const auto hf = row_hermite_form(g);
  Matrix c0(g.field(), g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i) c0(i, i) = 1;
  return hf.h == PolyMatrix::constant(c0);
}

/*
 * Parity-check matrix of a left-prime generator: with g * v = (I_k | 0) the
 * last n - k columns of v, transposed, satisfy H * g^T = 0. Since v is
 * unimodular, v(0) is invertible and H(0) has full row rank.
 */
inline PolyMatrix parity_check(const PolyMatrix& g) {
  const std::size_t k = g.rows(), n = g.cols();
  const auto hf = row_hermite_form(g);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Poly expect = (i == j) ? Poly{1} : Poly{};
      if (hf.h.entry(i, j) != expect) throw NotLeftPrime("generator is not left prime; no parity-check matrix");
    }
  PolyMatrix h = hf.u.cols_range(k, n - k).transpose();
  if (rank(h.coeff(0)) != n - k) throw std::logic_error("parity_check: H(0) rank deficient for unimodular completion");
  return h;
}

struct SupercodeFactorization {
  PolyMatrix l;   // k x k
  PolyMatrix u1;  // k x n, left prime
};

// g = l * u1 with u1 the first k rows of the Hermite transform's inverse.
inline SupercodeFactorization supercode_factorization(const PolyMatrix& g) {
  const std::size_t k = g.rows();
  const auto hf = row_hermite_form(g);
  PolyMatrix l = hf.h.cols_range(0, k);
  if (l == PolyMatrix::identity(g.field(), k)) return {l, g};
  return {l, hf.u_inv.rows_range(0, k)};
}

}  // namespace convisd

#endif
