#ifndef CONVISD_POLY_HPP
#define CONVISD_POLY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "convisd/error.hpp"
#include "convisd/field.hpp"

namespace convisd {

// Univariate polynomial over F_q, coefficients low to high. Canonical form has
// no trailing zeros; the zero polynomial is the empty vector.
using Poly = std::vector<Elem>;

namespace poly {

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// nullopt encodes deg 0 = -infinity.
inline std::optional<std::size_t> degree(const Poly& p) {
  if (p.empty()) return std::nullopt;
  return p.size() - 1;
}

inline bool is_zero(const Poly& p) { return p.empty(); }

inline bool is_nonzero_constant(const Poly& p) { return p.size() == 1; }

inline Poly constant(Elem c) { return c ? Poly{c} : Poly{}; }

inline Poly monomial(Elem c, std::size_t d) {
  if (c == 0) return {};
  Poly p(d + 1, 0);
  p[d] = c;
  return p;
}

inline Poly add(const Field& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  trim(r);
  return r;
}

inline Poly sub(const Field& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  trim(r);
  return r;
}

inline Poly scale(const Field& f, const Poly& a, Elem c) {
  if (c == 0) return {};
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(c, a[i]);
  return r;
}

inline Poly mul(const Field& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j]) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

// Euclidean division a = quot * b + rem with deg rem < deg b.
inline std::pair<Poly, Poly> divmod(const Field& f, const Poly& a, const Poly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  Poly rem = a;
  trim(rem);
  if (rem.size() < b.size()) return {Poly{}, rem};
  Poly quot(rem.size() - b.size() + 1, 0);
  const Elem lead_inv = f.inv(b.back());
  for (std::size_t d = rem.size(); d-- >= b.size();) {
    const Elem c = f.mul(rem[d], lead_inv);
    if (c == 0) continue;
    const std::size_t shift = d - (b.size() - 1);
    quot[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[shift + j] = f.sub(rem[shift + j], f.mul(c, b[j]));
  }
  trim(rem);
  trim(quot);
  return {quot, rem};
}

inline Elem evaluate(const Field& f, const Poly& p, Elem x) {
  Elem r = 0;
  for (std::size_t i = p.size(); i-- > 0;) r = f.add(f.mul(r, x), p[i]);
  return r;
}

inline std::string to_string(const Poly& p) {
  if (p.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (p[i] != 1 || i == 0) s += std::to_string(p[i]);
    if (i >= 1) s += "z";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

}  // namespace poly
}  // namespace convisd

#endif
