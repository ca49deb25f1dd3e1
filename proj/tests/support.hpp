#ifndef CONVISD_TESTS_SUPPORT_HPP
#define CONVISD_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "convisd/convcode.hpp"
#include "convisd/linalg.hpp"
#include "convisd/polymat.hpp"
#include "convisd/rng.hpp"

namespace testsupport {

using namespace convisd;

inline Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<Elem>(rng.below(f.size()));
  return m;
}

inline Matrix random_full_rank(const Field& f, std::size_t r, std::size_t c, Rng& rng) {
  for (;;) {
    Matrix m = random_matrix(f, r, c, rng);
    if (rank(m) == r) return m;
  }
}

inline Vector random_vector(const Field& f, std::size_t n, Rng& rng) {
  Vector v(n);
  for (auto& x : v) x = static_cast<Elem>(rng.below(f.size()));
  return v;
}

inline Vector random_error(const Field& f, std::size_t n, std::size_t w, Rng& rng) {
  Vector e(n, 0);
  for (auto p : rng.sample_subset(n, w)) e[p] = static_cast<Elem>(1 + rng.below(f.size() - 1));
  return e;
}

inline PolyMatrix random_polymatrix(const Field& f, std::size_t r, std::size_t c, std::size_t deg, Rng& rng) {
  std::vector<Matrix> coeffs;
  for (std::size_t d = 0; d <= deg; ++d) coeffs.push_back(random_matrix(f, r, c, rng));
  return PolyMatrix::from_coeffs(f, r, c, std::move(coeffs));
}

// Entry polynomials given lowest degree first; builds a PolyMatrix over f.
inline PolyMatrix pm(const Field& f, std::size_t r, std::size_t c, const std::vector<Poly>& entries) {
  return PolyMatrix::from_entries(f, r, c, entries);
}

// Scalar-by-scalar convolution, independent of poly_mul.
inline PolyMatrix naive_mul(const PolyMatrix& a, const PolyMatrix& b) {
  const Field& f = a.field();
  std::vector<Poly> out(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Poly acc(a.degree_or_zero() + b.degree_or_zero() + 1, 0);
      for (std::size_t l = 0; l < a.cols(); ++l) {
        const Poly x = a.entry(i, l), y = b.entry(l, j);
        for (std::size_t u = 0; u < x.size(); ++u)
          for (std::size_t v = 0; v < y.size(); ++v) acc[u + v] = f.add(acc[u + v], f.mul(x[u], y[v]));
      }
      poly::trim(acc);
      out[i * b.cols() + j] = acc;
    }
  return PolyMatrix::from_entries(f, a.rows(), b.cols(), out);
}

// Laplace expansion along the first row.
inline Poly cofactor_det(const Field& f, const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly{1};
  if (n == 1) return m[0][0];
  Poly det;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(row);
    }
    Poly term = poly::mul(f, m[0][c], cofactor_det(f, minor));
    det = (c % 2 == 0) ? poly::add(f, det, term) : poly::sub(f, det, term);
  }
  return det;
}

inline Poly cofactor_det(const PolyMatrix& a) {
  std::vector<std::vector<Poly>> m(a.rows(), std::vector<Poly>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a.entry(i, j);
  return cofactor_det(a.field(), m);
}

inline Elem scalar_det(const Matrix& a) {
  std::vector<std::vector<Poly>> m(a.rows(), std::vector<Poly>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = poly::constant(a(i, j));
  const Poly d = cofactor_det(a.field(), m);
  return d.empty() ? 0 : d[0];
}

// Every element of F_q^k in lexicographic order.
template <class Visit>
void for_each_vector(const Field& f, std::size_t k, Visit visit) {
  Vector m(k, 0);
  for (;;) {
    visit(m);
    std::size_t i = 0;
    while (i < k && ++m[i] == f.size()) m[i++] = 0;
    if (i == k) return;
  }
}

// All codewords of rowspan(g) with weight in [1, w_max], by enumerating messages.
inline std::set<Vector> codewords_up_to(const Matrix& g, std::size_t w_max) {
  std::set<Vector> out;
  for_each_vector(g.field(), g.rows(), [&](const Vector& m) {
    Vector c = vec_mat(m, g);
    const auto w = weight(c);
    if (w >= 1 && w <= w_max) out.insert(c);
  });
  return out;
}

// Every (error, message) with wt(error) <= w_max and received - error in rowspan(g), by message enumeration.
inline std::set<Vector> decode_by_messages(const Matrix& g, const Vector& received, std::size_t w_max) {
  std::set<Vector> out;
  for_each_vector(g.field(), g.rows(), [&](const Vector& m) {
    Vector e = vec_sub(g.field(), received, vec_mat(m, g));
    if (weight(e) <= w_max) out.insert(e);
  });
  return out;
}

inline double choose(double n, double k) {
  if (k < 0 || k > n) return 0;
  return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1));
}

inline ConvCode classic_code() {
  const Field f(2);
  return ConvCode::from_generator(pm(f, 1, 2, {Poly{1, 1, 1}, Poly{1, 0, 1}}));
}

}  // namespace testsupport

#endif
