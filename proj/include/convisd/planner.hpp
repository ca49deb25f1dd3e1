#ifndef CONVISD_PLANNER_HPP
#define CONVISD_PLANNER_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "convisd/error.hpp"

namespace convisd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct BlockProfile {
  std::uint64_t q = 2;
  std::uint64_t N = 0;
  std::uint64_t K = 0;
  std::uint64_t s = 1;
  std::uint64_t t_e = 0;
  std::uint64_t epsilon = 0;

  std::uint64_t t() const { return s ? (t_e + s - 1) / s : 0; }
};

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline BigInt power(std::uint64_t base, std::uint64_t exp) { return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp)); }

namespace detail {

inline std::int64_t bit_length(const BigInt& x) { return x == 0 ? 0 : static_cast<std::int64_t>(boost::multiprecision::msb(x)) + 1; }

}  // namespace detail

// Correctly rounded (nearest, ties to even) conversion; handles magnitudes far beyond double range in num/den.
inline double to_double(const Rational& r) {
  using boost::multiprecision::numerator;
  using boost::multiprecision::denominator;
  BigInt a = numerator(r), b = denominator(r);
  if (a == 0) return 0.0;
  const bool negative = a < 0;
  if (negative) a = -a;
  // Choose e so that a / (b * 2^e) lies in [2^53, 2^54): 54 significant bits, then round.
  std::int64_t e = detail::bit_length(a) - detail::bit_length(b) - 54;
  auto scaled_quotient = [&](std::int64_t shift, BigInt& rem, BigInt& den) {
    BigInt num = a;
    den = b;
    if (shift >= 0)
      den <<= static_cast<unsigned>(shift);
    else
      num <<= static_cast<unsigned>(-shift);
    BigInt quot;
    boost::multiprecision::divide_qr(num, den, quot, rem);
    return quot;
  };
  BigInt rem, den;
  BigInt quot = scaled_quotient(e, rem, den);
  while (detail::bit_length(quot) > 54) quot = scaled_quotient(++e, rem, den);
  while (detail::bit_length(quot) < 54) quot = scaled_quotient(--e, rem, den);
  // Subnormal range: drop extra bits so the result has exponent >= -1074.
  std::int64_t extra = 1;
  const std::int64_t lowest = -1074;
  if (e + 1 < lowest) extra += lowest - (e + 1);
  if (extra > 55) return negative ? -0.0 : 0.0;
  const BigInt unit = BigInt(1) << static_cast<unsigned>(extra);
  BigInt kept = quot >> static_cast<unsigned>(extra);
  const BigInt dropped = quot - (kept << static_cast<unsigned>(extra));
  const BigInt half = unit >> 1;
  const bool sticky = rem != 0;
  if (dropped > half || (dropped == half && (sticky || (kept & 1) != 0))) kept += 1;
  double v = std::ldexp(static_cast<double>(kept.convert_to<std::uint64_t>()), static_cast<int>(e + extra));
  return negative ? -v : v;
}

/*
 * Probability that a uniformly placed weight-t_e error spread over s blocks of
 * length N has every block weight at most t + epsilon: the z^{t_e} coefficient
 * of (sum_{w <= t+eps} (q-1)^w C(N, w) z^w)^s over (q-1)^{t_e} C(sN, t_e).
 */
inline Rational block_weight_probability(const BlockProfile& p) {
  const std::uint64_t cap = std::min<std::uint64_t>(p.t() + p.epsilon, p.N);
  if (p.t_e > p.s * cap) return 0;
  const std::size_t len = p.t_e + 1;
  std::vector<BigInt> base(std::min<std::size_t>(cap + 1, len));
  for (std::size_t w = 0; w < base.size(); ++w)
    base[w] = power(p.q - 1, w) * binomial(static_cast<std::int64_t>(p.N), static_cast<std::int64_t>(w));

  auto multiply = [&](const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
    std::vector<BigInt> r(std::min(len, x.size() + y.size() - 1));
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size() && i + j < r.size(); ++j) r[i + j] += x[i] * y[j];
    }
    return r;
  };
  std::vector<BigInt> acc{1}, sq = base;
  for (std::uint64_t e = p.s; e; e >>= 1) {
    if (e & 1) acc = multiply(acc, sq);
    if (e > 1) sq = multiply(sq, sq);
  }
  if (acc.size() <= p.t_e) return 0;
  const BigInt total =
      power(p.q - 1, p.t_e) * binomial(static_cast<std::int64_t>(p.s * p.N), static_cast<std::int64_t>(p.t_e));
  return Rational(acc[p.t_e], total);
}

// Union-bound estimate of P[some block exceeds t + eps], clamped to 1.
inline double tail_bound(std::uint64_t /*N*/, std::uint64_t s, std::uint64_t t, std::uint64_t epsilon) {
  if (s * t < 1) throw NonPositiveInput("tail bound needs t * s >= 1");
  const double e1 = static_cast<double>(epsilon) + 1.0;
  const double alpha = e1 / (static_cast<double>(s) * static_cast<double>(t));
  return std::min(1.0, static_cast<double>(s) * std::exp(-2.0 * alpha * e1));
}

// Prange work factor C(N, w) / C(N - K, w).
inline Rational workfactor(std::uint64_t N, std::uint64_t K, std::uint64_t w) {
  if (K > N || w > N - K) throw WeightTooLarge("weight exceeds N - K");
  return Rational(binomial(N, w), binomial(N - K, w));
}

inline Rational workfactor_ratio(std::uint64_t N, std::uint64_t K, std::uint64_t t, std::uint64_t epsilon) {
  return workfactor(N, K, t + epsilon) / workfactor(N, K, t);
}

// (1 - (1 - C(N-K, w)/C(N, w))^W)^s
inline double success_probability(std::uint64_t N, std::uint64_t K, std::uint64_t w, std::uint64_t W, std::uint64_t s) {
  if (W < 1 || s < 1) throw NonPositiveInput("W and s must be positive");
  const double p = to_double(1 / workfactor(N, K, w));
  if (p >= 1.0) return 1.0;
  const double miss_all = std::exp(static_cast<double>(W) * std::log1p(-p));
  return std::exp(static_cast<double>(s) * std::log1p(-miss_all));
}

// Minimal W with success_probability(N, K, w, W, s) >= target.
inline std::uint64_t iterations_for_target(std::uint64_t N, std::uint64_t K, std::uint64_t w, std::uint64_t s,
                                           double target) {
  if (!(target > 0.0 && target < 1.0)) throw NonPositiveInput("target must lie in (0, 1)");
  if (success_probability(N, K, w, 1, s) >= target) return 1;
  std::uint64_t lo = 1, hi = 2;
  while (success_probability(N, K, w, hi, s) < target) {
    lo = hi;
    if (hi > (UINT64_MAX >> 2)) throw TooLarge("iteration count overflow");
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (success_probability(N, K, w, mid, s) >= target ? hi : lo) = mid;
  }
  return hi;
}

// 1 + sum_{w <= t+eps} (q-1)^w C(N, w) / q^{N-K}
inline double expected_solutions(std::uint64_t q, std::uint64_t N, std::uint64_t K, std::uint64_t t,
                                 std::uint64_t epsilon) {
  if (K > N) throw InconsistentSpec("K exceeds N");
  BigInt sum = 0;
  for (std::uint64_t w = 0; w <= std::min(t + epsilon, N); ++w) sum += power(q - 1, w) * binomial(N, w);
  return to_double(1 + Rational(sum, power(q, N - K)));
}

// P[wt(e + c) = wt(e)] for fixed e of weight t_e and uniform c of weight t_c.
inline Rational lost_probability(std::uint64_t q, std::uint64_t N, std::uint64_t t_e, std::uint64_t t_c) {
  if (q < 2 || t_c < 1) throw NonPositiveInput("need q >= 2 and t_c >= 1");
  const std::int64_t n = static_cast<std::int64_t>(N), te = static_cast<std::int64_t>(t_e),
                     tc = static_cast<std::int64_t>(t_c);
  BigInt num = 0;
  for (std::int64_t z = 0; z <= tc / 2; ++z) {
    BigInt term = binomial(te, z) * binomial(n - te, z) * binomial(te - z, tc - 2 * z);
    if (term == 0) continue;
    term *= power(q - 1, z) * power(q - 2, tc - 2 * z);
    num += term;
  }
  return Rational(num, binomial(n, tc) * power(q - 1, t_c));
}

// log2(clock * seconds * 8 * 64): cycles times AVX2 integer lanes times 64-bit words.
inline double time_to_bits(double seconds, double clock_ghz) {
  if (!(seconds > 0) || !(clock_ghz > 0)) throw NonPositiveInput("time and clock must be positive");
  return std::log2(clock_ghz * 1e9 * seconds * 8.0 * 64.0);
}

// ---- CSV emitters ----

inline std::string format_g15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// Shortest representation that reads back to the same double.
inline std::string format_shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos && s.find("inf") == std::string::npos &&
      s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

inline std::string fig2_csv(BlockProfile p, std::uint64_t eps_lo, std::uint64_t eps_hi) {
  std::string out = "epsilon,probability\n";
  for (std::uint64_t e = eps_lo; e <= eps_hi; ++e) {
    p.epsilon = e;
    out += std::to_string(e) + "," + format_g15(to_double(block_weight_probability(p))) + "\n";
  }
  return out;
}

inline std::string fig3_csv(std::uint64_t N, std::uint64_t K, std::uint64_t t, std::uint64_t eps_lo,
                            std::uint64_t eps_hi) {
  std::string out = "epsilon,wf_ratio\n";
  for (std::uint64_t e = eps_lo; e <= eps_hi; ++e)
    out += std::to_string(e) + "," + format_shortest(to_double(workfactor_ratio(N, K, t, e))) + "\n";
  return out;
}

inline std::string table1_csv(std::uint64_t q, std::uint64_t N, std::uint64_t te_max, std::uint64_t tc_max) {
  std::string out = "te,tc,prob\n";
  for (std::uint64_t tc = 1; tc <= tc_max; ++tc)
    for (std::uint64_t te = 1; te <= te_max; ++te)
      out += std::to_string(te) + "," + std::to_string(tc) + "," + format_g15(to_double(lost_probability(q, N, te, tc))) +
             "\n";
  return out;
}

}  // namespace convisd

#endif
