#ifndef CONVISD_MATRIX_HPP
#define CONVISD_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "convisd/error.hpp"
#include "convisd/field.hpp"

namespace convisd {

using Vector = std::vector<Elem>;

inline std::size_t weight(std::span<const Elem> v) {
  std::size_t w = 0;
  for (auto x : v) w += (x != 0);
  return w;
}

inline std::vector<std::size_t> support(std::span<const Elem> v) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.push_back(i);
  return s;
}

inline Vector vec_add(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

inline Vector vec_sub(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

inline bool is_zero(std::span<const Elem> v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const Field& f, const std::vector<std::vector<unsigned>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows[0].size() : 0;
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) {
        if (!f.contains(rows[i][j])) throw FormatError("matrix entry outside field");
        m(i, j) = static_cast<Elem>(rows[i][j]);
      }
    }
    return m;
  }

  static Matrix row_vector(const Field& f, std::span<const Elem> v) {
    Matrix m(f, 1, v.size());
    std::copy(v.begin(), v.end(), m.data_.begin());
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vector column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  const std::vector<Elem>& data() const { return data_; }

  bool is_zero() const { return convisd::is_zero(data_); }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }

  // row[dst] += c * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, Elem c) {
    if (c == 0) return;
    Elem* d = data_.data() + dst * cols_;
    const Elem* s = data_.data() + src * cols_;
    for (std::size_t j = 0; j < cols_; ++j)
      if (s[j]) d[j] = field_.add(d[j], field_.mul(c, s[j]));
  }

  void scale_row(std::size_t r, Elem c) {
    Elem* d = data_.data() + r * cols_;
    for (std::size_t j = 0; j < cols_; ++j) d[j] = field_.mul(c, d[j]);
  }

  // Copies `block` into this matrix with its top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const Matrix& block) {
    if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_) throw IndexOutOfRange("block does not fit");
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j) (*this)(r0 + i, c0 + j) = block(i, j);
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw IndexOutOfRange("block out of range");
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
           (a.empty() || a.field_ == b.field_);
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      s += "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + std::to_string((*this)(i, j));
      s += "]\n";
    }
    return s;
  }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  const Field& f = a.field();
  Matrix c(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Elem x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Elem y = b(l, j);
        if (y) c(i, j) = f.add(c(i, j), f.mul(x, y));
      }
    }
  return c;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum: shapes differ");
  Matrix c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().add(a(i, j), b(i, j));
  return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix difference: shapes differ");
  Matrix c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().sub(a(i, j), b(i, j));
  return c;
}

// Row vector times matrix.
inline Vector vec_mat(std::span<const Elem> v, const Matrix& m) {
  if (v.size() != m.rows()) throw DimensionMismatch("vector-matrix product: length differs from rows");
  const Field& f = m.field();
  Vector r(m.cols(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    auto row = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j)
      if (row[j]) r[j] = f.add(r[j], f.mul(v[i], row[j]));
  }
  return r;
}

// Accumulates v * m into acc.
inline void vec_mat_acc(Vector& acc, std::span<const Elem> v, const Matrix& m) {
  if (v.size() != m.rows() || acc.size() != m.cols()) throw DimensionMismatch("vector-matrix accumulate");
  const Field& f = m.field();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    auto row = m.row(i);
    for (std::size_t j = 0; j < acc.size(); ++j)
      if (row[j]) acc[j] = f.add(acc[j], f.mul(v[i], row[j]));
  }
}

}  // namespace convisd

#endif
