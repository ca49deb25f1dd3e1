#ifndef CONVISD_ISD_HPP
#define CONVISD_ISD_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "convisd/convcode.hpp"
#include "convisd/linalg.hpp"
#include "convisd/rng.hpp"

namespace convisd {

struct IsdConfig {
  std::size_t w_max = 0;
  std::uint64_t iterations = 1;
  std::uint64_t seed = 0;
  bool dedup = true;
  // Enumerate every K-subset once instead of sampling `iterations` of them.
  bool exhaustive = false;
  // Redraw subsets until one is an information set, so each iteration tries one.
  // Off: a failed draw uses up the iteration.
  bool resample = true;
  std::uint64_t max_draws = 100'000;
};

struct Solution {
  Vector error;
  Vector message;

  friend bool operator==(const Solution&, const Solution&) = default;
};

using SolutionList = std::vector<Solution>;

struct VectorHash {
  std::size_t operator()(const Vector& v) const noexcept {
    std::string_view bytes(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(Elem));
    return std::hash<std::string_view>{}(bytes);
  }
};

namespace detail {

// m with m * a == b for square a, or nullopt when a is singular.
inline std::optional<Vector> solve_square_left(const Matrix& a, std::span<const Elem> b) {
  const Field& f = a.field();
  const std::size_t k = a.rows();
  Matrix aug(f, k, k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = a(j, i);
    aug(i, k) = b[i];
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && aug(piv, col) == 0) ++piv;
    if (piv == k) return std::nullopt;
    aug.swap_rows(col, piv);
    aug.scale_row(col, f.inv(aug(col, col)));
    for (std::size_t i = 0; i < k; ++i)
      if (i != col && aug(i, col)) aug.add_row_multiple(i, col, f.neg(aug(i, col)));
  }
  return aug.column(k);
}

class Collector {
 public:
  explicit Collector(bool dedup) : dedup_(dedup) {}

  bool add(Vector error, Vector message) {
    if (dedup_ && !seen_.insert(error).second) return false;
    list_.push_back({std::move(error), std::move(message)});
    return true;
  }
  SolutionList take() { return std::move(list_); }

 private:
  bool dedup_;
  std::unordered_set<Vector, VectorHash> seen_;
  SolutionList list_;
};

// One Prange step on the column subset idx; returns false if idx is not an information set.
inline bool prange_step(const Matrix& g0, std::span<const Elem> received, const std::vector<std::size_t>& idx,
                        std::size_t w_max, Collector& out) {
  const Matrix gi = submatrix_columns(g0, idx);
  Vector ri(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) ri[i] = received[idx[i]];
  auto m = solve_square_left(gi, ri);
  if (!m) return false;
  Vector e = vec_sub(g0.field(), received, vec_mat(*m, g0));
  if (weight(e) <= w_max) out.add(std::move(e), std::move(*m));
  return true;
}

inline std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double v = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    v = v * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (v > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(v + 0.5L);
}

}  // namespace detail

/*
 * Prange run for a fixed number of iterations, collecting every solution of
 * weight <= w_max in discovery order. Each iteration redraws until it hits an
 * information set (at most max_draws times) unless resample is off.
 */
inline SolutionList prange_collect(const Matrix& g0, std::span<const Elem> received, const IsdConfig& cfg,
                                   std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::size_t K = g0.rows(), N = g0.cols();
  if (received.size() != N) throw DimensionMismatch("received length differs from N");
  if (rank(g0) != K) throw RankDeficient("block generator is not of full rank");
  if (!cfg.exhaustive && cfg.iterations == 0) throw NonPositiveInput("iteration count must be at least 1");
  detail::Collector out(cfg.dedup);

  if (cfg.exhaustive) {
    if (detail::binomial_saturating(N, K, budget) > budget) throw TooLarge("C(N, K) exceeds the enumeration budget");
    std::vector<std::size_t> idx(K);
    for (std::size_t i = 0; i < K; ++i) idx[i] = i;
    for (;;) {
      detail::prange_step(g0, received, idx, cfg.w_max, out);
      std::size_t i = K;
      while (i > 0 && idx[i - 1] == N - K + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < K; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out.take();
  }

  Rng rng(cfg.seed);
  for (std::uint64_t it = 0; it < cfg.iterations; ++it) {
    std::uint64_t draws = 0;
    while (!detail::prange_step(g0, received, rng.sample_subset(N, K), cfg.w_max, out) && cfg.resample &&
           ++draws < cfg.max_draws) {
    }
  }
  return out.take();
}

inline bool solution_less(const Solution& a, const Solution& b) {
  const auto wa = weight(a.error), wb = weight(b.error);
  if (wa != wb) return wa < wb;
  return a.error < b.error;
}

// Every error of weight <= w_max leaving a codeword of rowspan(g0), sorted by (weight, coordinates).
inline SolutionList brute_force_decode(const Matrix& g0, std::span<const Elem> received, std::size_t w_max,
                                       std::uint64_t budget = kDefaultEnumerationBudget) {
  if (received.size() != g0.cols()) throw DimensionMismatch("received length differs from N");
  if (count_words_up_to(g0.cols(), g0.field().size(), w_max) > static_cast<long double>(budget))
    throw TooLarge("brute-force decoding exceeds the enumeration budget");
  const Field& f = g0.field();
  const Matrix h = nullspace(g0);
  const Vector syndrome = vec_mat(received, h.transpose());
  SolutionList out;
  for_each_syndrome_solution(h, syndrome, w_max, [&](const Vector& e) {
    if (auto m = solve_left(g0, vec_sub(f, received, e))) out.push_back({e, *m});
  });
  std::sort(out.begin(), out.end(), solution_less);
  return out;
}

// Appends e' + c for every listed e' and low-weight codeword c that stays within w_max.
inline SolutionList augment_low_weight(const Field& f, SolutionList list, const std::vector<LowWeightWord>& lows,
                                       std::size_t w_max) {
  if (lows.empty()) return list;
  std::unordered_set<Vector, VectorHash> seen;
  for (const auto& s : list) seen.insert(s.error);
  const std::size_t original = list.size();
  for (std::size_t i = 0; i < original; ++i)
    for (const auto& low : lows) {
      Vector e = vec_add(f, list[i].error, low.codeword);
      if (weight(e) > w_max || seen.count(e)) continue;
      seen.insert(e);
      Vector m = vec_sub(f, list[i].message, low.message);
      list.push_back({std::move(e), std::move(m)});
    }
  return list;
}

}  // namespace convisd

#endif
