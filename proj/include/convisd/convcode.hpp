#ifndef CONVISD_CONVCODE_HPP
#define CONVISD_CONVCODE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "convisd/linalg.hpp"
#include "convisd/polymat.hpp"

namespace convisd {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/*
 * Polynomial vector v(z) = sum_i v_i z^i with each v_i in F_q^width, stored
 * flat as (v_0, v_1, ...). Trailing zero coefficients are trimmed.
 */
class PolyVector {
 public:
  PolyVector() = default;
  PolyVector(Field f, std::size_t width) : field_(std::move(f)), width_(width) {}

  static PolyVector from_flat(const Field& f, std::size_t width, Vector flat) {
    if (width == 0 || flat.size() % width != 0) throw DimensionMismatch("flat length is not a multiple of the width");
    PolyVector v(f, width);
    v.data_ = std::move(flat);
    v.trim();
    return v;
  }

  static PolyVector from_coeffs(const Field& f, std::size_t width, const std::vector<Vector>& coeffs) {
    Vector flat;
    for (const auto& c : coeffs) {
      if (c.size() != width) throw DimensionMismatch("coefficient length differs from width");
      flat.insert(flat.end(), c.begin(), c.end());
    }
    return from_flat(f, width, std::move(flat));
  }

  const Field& field() const { return field_; }
  std::size_t width() const { return width_; }
  // Number of stored coefficients (degree + 1, or 0 for the zero vector).
  std::size_t length() const { return width_ ? data_.size() / width_ : 0; }
  std::optional<std::size_t> degree() const {
    if (data_.empty()) return std::nullopt;
    return length() - 1;
  }
  bool is_zero() const { return data_.empty(); }

  Vector coeff(std::size_t i) const {
    if (i >= length()) return Vector(width_, 0);
    return Vector(data_.begin() + i * width_, data_.begin() + (i + 1) * width_);
  }

  std::size_t weight() const { return convisd::weight(data_); }

  // Flattened coefficients zero-padded to exactly `coeffs` coefficients.
  Vector flat(std::size_t coeffs) const {
    if (coeffs < length()) throw DimensionMismatch("polynomial vector longer than requested padding");
    Vector v(coeffs * width_, 0);
    std::copy(data_.begin(), data_.end(), v.begin());
    return v;
  }
  const Vector& flat() const { return data_; }

  // Splits into `count` blocks of `block_coeffs` consecutive coefficients.
  std::vector<Vector> blocks(std::size_t block_coeffs, std::size_t count) const {
    const Vector all = flat(block_coeffs * count);
    const std::size_t len = block_coeffs * width_;
    std::vector<Vector> out(count);
    for (std::size_t b = 0; b < count; ++b) out[b].assign(all.begin() + b * len, all.begin() + (b + 1) * len);
    return out;
  }

  PolyVector shifted(std::size_t d) const {
    if (is_zero()) return *this;
    Vector v(d * width_, 0);
    v.insert(v.end(), data_.begin(), data_.end());
    return from_flat(field_, width_, std::move(v));
  }

  friend PolyVector operator+(const PolyVector& a, const PolyVector& b) { return combine(a, b, false); }
  friend PolyVector operator-(const PolyVector& a, const PolyVector& b) { return combine(a, b, true); }

  friend bool operator==(const PolyVector& a, const PolyVector& b) {
    return a.width_ == b.width_ && a.data_ == b.data_;
  }
  friend bool operator!=(const PolyVector& a, const PolyVector& b) { return !(a == b); }

 private:
  static PolyVector combine(const PolyVector& a, const PolyVector& b, bool subtract) {
    if (a.width_ != b.width_) throw DimensionMismatch("polynomial vector widths differ");
    const std::size_t len = std::max(a.length(), b.length());
    Vector x = a.flat(len), y = b.flat(len);
    return from_flat(a.field_, a.width_, subtract ? vec_sub(a.field_, x, y) : vec_add(a.field_, x, y));
  }

  void trim() {
    while (!data_.empty() && is_zero_tail()) data_.resize(data_.size() - width_);
  }
  bool is_zero_tail() const {
    return std::all_of(data_.end() - static_cast<std::ptrdiff_t>(width_), data_.end(), [](Elem x) { return x == 0; });
  }

  Field field_;
  std::size_t width_ = 0;
  Vector data_;
};

/*
 * (n, k) convolutional code given by a full-row-rank generator G(z). When G
 * is left prime the parity-check matrix H(z) is derived at construction.
 */
class ConvCode {
 public:
  ConvCode() = default;

  static ConvCode from_generator(PolyMatrix g) {
    if (g.rows() > g.cols()) throw RankDeficient("k > n");
    if (g.rows() == 0) throw RankDeficient("generator has no rows");
    ConvCode c;
    c.generator_ = std::move(g);
    const auto hf = row_hermite_form(c.generator_);  // throws RankDeficient
    bool left_prime = true;
    for (std::size_t i = 0; i < c.k() && left_prime; ++i)
      if (hf.h.entry(i, i) != Poly{1}) left_prime = false;
    if (left_prime) c.parity_ = hf.u.cols_range(c.k(), c.n() - c.k()).transpose();
    return c;
  }

  const PolyMatrix& generator() const { return generator_; }
  const std::optional<PolyMatrix>& parity() const { return parity_; }
  const Field& field() const { return generator_.field(); }
  std::size_t n() const { return generator_.cols(); }
  std::size_t k() const { return generator_.rows(); }
  std::size_t memory() const { return generator_.degree_or_zero(); }
  Matrix coeff(std::size_t i) const { return generator_.coeff(i); }
  bool delay_free() const { return rank(generator_.coeff(0)) == k(); }
  bool left_prime() const { return parity_.has_value(); }

 private:
  PolyMatrix generator_;
  std::optional<PolyMatrix> parity_;
};

inline PolyVector encode(const ConvCode& code, const PolyVector& message) {
  if (message.width() != code.k()) throw DimensionMismatch("message width differs from k");
  const Field& f = code.field();
  if (message.is_zero()) return PolyVector(f, code.n());
  const std::size_t mu = code.memory();
  const std::size_t len = message.length() + mu;
  Vector out(len * code.n(), 0);
  for (std::size_t i = 0; i < message.length(); ++i) {
    const Vector mi = message.coeff(i);
    if (is_zero(mi)) continue;
    for (std::size_t d = 0; d <= mu; ++d) {
      const Vector part = vec_mat(mi, code.generator().coeff(d));
      Elem* dst = out.data() + (i + d) * code.n();
      for (std::size_t j = 0; j < code.n(); ++j) dst[j] = f.add(dst[j], part[j]);
    }
  }
  return PolyVector::from_flat(f, code.n(), std::move(out));
}

// Block (r, c) is G_{i(gamma+1) + c - r}, zero outside 0..memory.
inline Matrix sliding_generator(const ConvCode& code, std::size_t gamma, std::size_t i) {
  const std::size_t n = code.n(), k = code.k(), w = gamma + 1;
  Matrix m(code.field(), k * w, n * w);
  for (std::size_t r = 0; r < w; ++r)
    for (std::size_t c = 0; c < w; ++c) {
      const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(i * w + c) - static_cast<std::ptrdiff_t>(r);
      if (idx < 0 || static_cast<std::size_t>(idx) > code.memory()) continue;
      m.set_block(r * k, c * n, code.coeff(static_cast<std::size_t>(idx)));
    }
  return m;
}

// Lower block-triangular sliding parity-check matrix with H_0 on the diagonal.
inline Matrix sliding_parity(const ConvCode& code, std::size_t gamma) {
  if (!code.parity()) throw NoParityCheck("code has no parity-check matrix (generator not left prime)");
  const PolyMatrix& h = *code.parity();
  const std::size_t n = code.n(), r = n - code.k(), w = gamma + 1;
  if (rank(h.coeff(0)) != r) throw NoParityCheck("H(0) is not of full rank");
  Matrix m(code.field(), r * w, n * w);
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j <= i; ++j) m.set_block(i * r, j * n, h.coeff(i - j));
  return m;
}

/*
 * The [N, K] block code generated by the sliding generator matrix, together
 * with the off-diagonal blocks needed to strip earlier messages from later
 * windows. `parity` always holds a parity-check matrix of rowspan(g0): the
 * sliding parity matrix when the code has one, otherwise a kernel basis.
 */
struct SlidingBlockCode {
  std::size_t gamma = 0;
  std::size_t n = 0, k = 0;
  std::size_t N = 0, K = 0;
  Matrix g0;
  std::vector<Matrix> residuals;  // residuals[i - 1] is the i-th off-diagonal block
  std::optional<Matrix> h0;
  Matrix parity;

  const Field& field() const { return g0.field(); }

  // Block for offset d >= 1, or nullopt when it is identically zero.
  const Matrix* residual(std::size_t d) const {
    if (d == 0 || d > residuals.size()) return nullptr;
    return &residuals[d - 1];
  }
};

inline SlidingBlockCode make_sliding_block(const ConvCode& code, std::size_t gamma) {
  SlidingBlockCode b;
  b.gamma = gamma;
  b.n = code.n();
  b.k = code.k();
  b.N = b.n * (gamma + 1);
  b.K = b.k * (gamma + 1);
  b.g0 = sliding_generator(code, gamma, 0);
  const std::size_t count = (code.memory() + 1 + gamma) / (gamma + 1);  // ceil((mu+1)/(gamma+1))
  for (std::size_t i = 1; i <= count; ++i) b.residuals.push_back(sliding_generator(code, gamma, i));
  if (code.parity() && rank(code.parity()->coeff(0)) == b.n - b.k) {
    b.h0 = sliding_parity(code, gamma);
    b.parity = *b.h0;
  } else {
    b.parity = nullspace(b.g0);
  }
  return b;
}

inline std::size_t column_distance(const ConvCode& code, std::size_t gamma,
                                   std::uint64_t budget = kDefaultEnumerationBudget) {
  if (!code.delay_free()) throw NotDelayFree("column distance enumeration requires a delay-free code");
  const std::uint64_t q = code.field().size();
  const std::size_t len = code.k() * (gamma + 1);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < len; ++i) {
    if (total > budget / q) throw TooLarge("q^(k(gamma+1)) exceeds the enumeration budget");
    total *= q;
  }
  const Matrix g = sliding_generator(code, gamma, 0);
  std::size_t best = SIZE_MAX;
  Vector m(len, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t x = idx;
    for (std::size_t i = 0; i < len; ++i) {
      m[i] = static_cast<Elem>(x % q);
      x /= q;
    }
    if (is_zero(std::span<const Elem>(m.data(), code.k()))) continue;
    best = std::min(best, weight(vec_mat(m, g)));
  }
  return best;
}

struct LowWeightWord {
  Vector codeword;
  Vector message;
};

inline bool low_weight_less(const LowWeightWord& a, const LowWeightWord& b) {
  const auto wa = weight(a.codeword), wb = weight(b.codeword);
  if (wa != wb) return wa < wb;
  return a.codeword < b.codeword;
}

/*
 * All nonzero codewords of rowspan(g0) of weight <= w_max with their messages,
 * sorted by (weight, coordinates). Supports are enumerated and accepted when
 * the syndrome under the block parity-check matrix vanishes.
 */
inline std::vector<LowWeightWord> low_weight_codewords(const SlidingBlockCode& block, std::size_t w_max,
                                                       std::uint64_t budget = kDefaultEnumerationBudget) {
  if (count_words_up_to(block.N, block.field().size(), w_max) > static_cast<long double>(budget))
    throw TooLarge("low-weight enumeration exceeds budget");
  std::vector<LowWeightWord> out;
  const Vector zero(block.parity.rows(), 0);
  for_each_syndrome_solution(block.parity, zero, w_max, [&](const Vector& c) {
    if (is_zero(c)) return;
    if (auto m = solve_left(block.g0, c)) out.push_back({c, *m});
  });
  std::sort(out.begin(), out.end(), low_weight_less);
  return out;
}

// Maximal degree of the k x k minors of the generator.
inline std::size_t compute_degree(const ConvCode& code, std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::size_t n = code.n(), k = code.k();
  long double count = 1;
  for (std::size_t i = 0; i < k; ++i) count = count * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
  if (count > static_cast<long double>(budget)) throw TooLarge("too many minors");
  const auto entries = code.generator().entries();
  std::vector<std::size_t> sel(k);
  for (std::size_t i = 0; i < k; ++i) sel[i] = i;
  std::optional<std::size_t> best;
  for (;;) {
    std::vector<Poly> minor;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor.push_back(entries[i * n + sel[j]]);
    const auto d = poly::degree(poly_determinant(PolyMatrix::from_entries(code.field(), k, k, minor)));
    if (d && (!best || *d > *best)) best = d;
    std::size_t i = k;
    while (i > 0 && sel[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++sel[i - 1];
    for (std::size_t j = i; j < k; ++j) sel[j] = sel[j - 1] + 1;
  }
  if (!best) throw RankDeficient("all full-size minors vanish");
  return *best;
}

}  // namespace convisd

#endif
