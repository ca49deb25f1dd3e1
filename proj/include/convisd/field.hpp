#ifndef CONVISD_FIELD_HPP
#define CONVISD_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "convisd/error.hpp"

namespace convisd {

using Elem = std::uint16_t;

namespace detail {

struct FieldTables {
  std::uint32_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  // Defining polynomial, coefficients low to high, monic of degree m (empty for prime fields).
  std::vector<std::uint32_t> modulus;
  // Full tables for q <= kTableLimit.
  std::vector<Elem> add;
  std::vector<Elem> mul;
  std::vector<Elem> neg;
  std::vector<Elem> inv;
  // Log/antilog for extension fields.
  std::vector<std::uint32_t> log;
  std::vector<Elem> exp;
};

inline constexpr std::uint32_t kTableLimit = 256;
inline constexpr std::uint32_t kMaxFieldSize = 1u << 16;

inline bool prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& m) {
  if (q < 2) return false;
  std::uint32_t d = 2;
  while (d * d <= q && q % d != 0) ++d;
  p = (q % d == 0) ? d : q;
  m = 0;
  std::uint32_t r = q;
  while (r % p == 0) {
    r /= p;
    ++m;
  }
  return r == 1;
}

inline std::vector<std::uint32_t> digits(std::uint32_t x, std::uint32_t p, std::uint32_t m) {
  std::vector<std::uint32_t> d(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    d[i] = x % p;
    x /= p;
  }
  return d;
}

inline std::uint32_t undigits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
  std::uint32_t x = 0;
  for (std::size_t i = d.size(); i-- > 0;) x = x * p + d[i];
  return x;
}

inline std::uint32_t digit_add(std::uint32_t a, std::uint32_t b, std::uint32_t p, std::uint32_t m) {
  if (p == 2) return a ^ b;
  std::uint32_t r = 0, scale = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    r += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return r;
}

inline std::uint32_t digit_neg(std::uint32_t a, std::uint32_t p, std::uint32_t m) {
  if (p == 2) return a;
  std::uint32_t r = 0, scale = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    r += ((p - a % p) % p) * scale;
    a /= p;
    scale *= p;
  }
  return r;
}

// Multiply the element x (polynomial basis) by the generator x modulo f.
inline std::uint32_t times_x(std::uint32_t a, const std::vector<std::uint32_t>& f, std::uint32_t p,
                             std::uint32_t m) {
  auto d = digits(a, p, m);
  const std::uint32_t top = d[m - 1];
  for (std::uint32_t i = m - 1; i > 0; --i) d[i] = d[i - 1];
  d[0] = 0;
  // x^m = -(f_0 + ... + f_{m-1} x^{m-1})
  for (std::uint32_t i = 0; i < m; ++i) d[i] = (d[i] + top * ((p - f[i]) % p)) % p;
  return undigits(d, p);
}

// Searches monic degree-m polynomials in increasing index order and returns the
// first one for which x generates the multiplicative group.
inline std::vector<std::uint32_t> least_primitive_polynomial(std::uint32_t p, std::uint32_t m) {
  std::uint32_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) q *= p;
  for (std::uint32_t idx = 1; idx < q; ++idx) {
    auto f = digits(idx, p, m);
    if (f[0] == 0) continue;
    f.push_back(1);
    std::uint32_t a = 1, order = 0;
    do {
      a = times_x(a, f, p, m);
      ++order;
    } while (a != 1 && order < q);
    if (a == 1 && order == q - 1) return f;
  }
  throw InvalidField("no primitive polynomial found");
}

inline std::shared_ptr<const FieldTables> build_tables(std::uint32_t q) {
  auto t = std::make_shared<FieldTables>();
  std::uint32_t p = 0, m = 0;
  if (q > kMaxFieldSize || !prime_power(q, p, m))
    throw InvalidField("field size must be a prime power <= 65536, got " + std::to_string(q));
  t->q = q;
  t->p = p;
  t->m = m;
  if (m > 1) {
    t->modulus = least_primitive_polynomial(p, m);
    t->exp.assign(q, 0);
    t->log.assign(q, 0);
    std::uint32_t a = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      t->exp[i] = static_cast<Elem>(a);
      t->log[a] = i;
      a = times_x(a, t->modulus, p, m);
    }
  }
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (a == 0 || b == 0) return 0;
    if (m == 1) return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
    return t->exp[(t->log[a] + t->log[b]) % (q - 1)];
  };
  t->neg.resize(q);
  t->inv.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) t->neg[a] = static_cast<Elem>(m == 1 ? (p - a) % p : digit_neg(a, p, m));
  if (m == 1) {
    // inverse by a^(p-2)
    for (std::uint32_t a = 1; a < q; ++a) {
      std::uint64_t r = 1, b = a, e = p - 2;
      while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
      }
      t->inv[a] = static_cast<Elem>(r);
    }
  } else {
    for (std::uint32_t a = 1; a < q; ++a) t->inv[a] = t->exp[(q - 1 - t->log[a]) % (q - 1)];
  }
  if (q <= kTableLimit) {
    t->add.resize(q * q);
    t->mul.resize(q * q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        t->add[a * q + b] = static_cast<Elem>(m == 1 ? (a + b) % p : digit_add(a, b, p, m));
        t->mul[a * q + b] = static_cast<Elem>(slow_mul(a, b));
      }
  }
  return t;
}

}  // namespace detail

/*
 * The finite field F_q. Elements are the integers 0..q-1: residues for prime q,
 * and for q = p^m the base-p digit vector of the polynomial-basis coordinates
 * modulo the least primitive polynomial of degree m (see modulus()).
 *
 * Field is a cheap handle; copies share the arithmetic tables.
 */
class Field {
 public:
  Field() : Field(2) {}
  explicit Field(std::uint32_t q) : t_(tables_for(q)) {}

  std::uint32_t size() const { return t_->q; }
  std::uint32_t characteristic() const { return t_->p; }
  std::uint32_t extension_degree() const { return t_->m; }
  const std::vector<std::uint32_t>& modulus() const { return t_->modulus; }

  bool contains(std::uint32_t a) const { return a < t_->q; }

  Elem add(Elem a, Elem b) const {
    const auto q = t_->q;
    if (q == 2) return a ^ b;
    if (q <= detail::kTableLimit) return t_->add[a * q + b];
    if (t_->m == 1) return static_cast<Elem>((std::uint32_t{a} + b) % q);
    return static_cast<Elem>(detail::digit_add(a, b, t_->p, t_->m));
  }
  Elem neg(Elem a) const { return t_->neg[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    const auto q = t_->q;
    if (q == 2) return a & b;
    if (q <= detail::kTableLimit) return t_->mul[a * q + b];
    if (a == 0 || b == 0) return 0;
    if (t_->m == 1) return static_cast<Elem>((std::uint64_t{a} * b) % q);
    return t_->exp[(t_->log[a] + t_->log[b]) % (q - 1)];
  }
  // inv(0) is a precondition violation.
  Elem inv(Elem a) const { return t_->inv[a]; }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  // Human-readable description recorded in reports.
  std::string describe() const {
    std::string s = "GF(" + std::to_string(t_->q) + ")";
    if (t_->m > 1) {
      s += " mod ";
      bool first = true;
      for (std::size_t i = t_->modulus.size(); i-- > 0;) {
        if (t_->modulus[i] == 0) continue;
        if (!first) s += " + ";
        first = false;
        if (t_->modulus[i] != 1 || i == 0) s += std::to_string(t_->modulus[i]);
        if (i > 0) s += (t_->modulus[i] != 1 ? "*x" : "x");
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

  friend bool operator==(const Field& a, const Field& b) { return a.t_->q == b.t_->q; }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  static std::shared_ptr<const detail::FieldTables> tables_for(std::uint32_t q) {
    // Small fields are cached; building F_q repeatedly in tests would otherwise dominate.
    static thread_local std::vector<std::shared_ptr<const detail::FieldTables>> cache;
    for (const auto& t : cache)
      if (t->q == q) return t;
    auto t = detail::build_tables(q);
    cache.push_back(t);
    return t;
  }

  std::shared_ptr<const detail::FieldTables> t_;
};

}  // namespace convisd

#endif
