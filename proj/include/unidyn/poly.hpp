#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "common.hpp"

namespace unidyn {

// Dense univariate polynomial over Q. c[i] is the coefficient of x^i.
// Normal form: no trailing zero coefficients; the zero polynomial has c empty.
struct QPoly {
  std::vector<Rat> c;

  QPoly() = default;
  explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
  explicit QPoly(const Rat& constant) {
    if (constant != 0) c.push_back(constant);
  }

  static QPoly x() { return QPoly(std::vector<Rat>{0, 1}); }
  static QPoly monomial(const Rat& a, std::size_t k) {
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = a;
    return QPoly(std::move(v));
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool is_zero() const { return c.empty(); }
  // degree of zero is -1 by convention
  long degree() const { return static_cast<long>(c.size()) - 1; }
  const Rat& lead() const { return c.back(); }
  Rat coeff(std::size_t i) const { return i < c.size() ? c[i] : Rat(0); }
  bool is_constant() const { return c.size() <= 1; }
  Rat constant_term() const { return coeff(0); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }

  bool operator==(const QPoly& o) const { return c == o.c; }
  bool operator!=(const QPoly& o) const { return !(*this == o); }

  QPoly operator-() const {
    QPoly r = *this;
    for (auto& a : r.c) a = -a;
    return r;
  }

  friend QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rat> v(std::max(a.c.size(), b.c.size()), Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
    return QPoly(std::move(v));
  }
  friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }
  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rat> v(a.c.size() + b.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
    return QPoly(std::move(v));
  }
  friend QPoly operator*(const QPoly& a, const Rat& s) {
    QPoly r = a;
    for (auto& x : r.c) x *= s;
    r.trim();
    return r;
  }

  QPoly& operator+=(const QPoly& o) { return *this = *this + o; }
  QPoly& operator-=(const QPoly& o) { return *this = *this - o; }
  QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

  Rat eval(const Rat& x) const {
    Rat r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  }

  QPoly derivative() const {
    if (c.size() <= 1) return QPoly();
    std::vector<Rat> v(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) v[i - 1] = c[i] * Rat(i);
    return QPoly(std::move(v));
  }

  QPoly pow(unsigned long e) const {
    QPoly r(Rat(1)), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  // substitute: (*this)(g)
  QPoly compose(const QPoly& g) const {
    QPoly r;
    for (std::size_t i = c.size(); i-- > 0;) r = r * g + QPoly(c[i]);
    return r;
  }

  QPoly shifted(const Rat& a) const {  // p(x + a)
    return compose(QPoly(std::vector<Rat>{a, 1}));
  }
};

inline std::pair<QPoly, QPoly> poly_divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  QPoly r = a;
  QPoly q;
  long db = b.degree();
  if (r.degree() >= db) q.c.assign(r.degree() - db + 1, Rat(0));
  while (!r.is_zero() && r.degree() >= db) {
    long k = r.degree() - db;
    Rat f = r.lead() / b.lead();
    q.c[k] = f;
    for (long i = 0; i <= db; ++i) r.c[k + i] -= f * b.c[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

inline QPoly operator/(const QPoly& a, const QPoly& b) { return poly_divmod(a, b).first; }
inline QPoly operator%(const QPoly& a, const QPoly& b) { return poly_divmod(a, b).second; }

inline QPoly poly_monic(const QPoly& p) {
  if (p.is_zero()) return p;
  return p * (Rat(1) / p.lead());
}

inline QPoly poly_gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

// extended gcd: returns (g, u, v) monic with u*a + v*b = g
inline std::tuple<QPoly, QPoly, QPoly> poly_xgcd(const QPoly& a, const QPoly& b) {
  QPoly r0 = a, r1 = b;
  QPoly u0(Rat(1)), u1, v0, v1(Rat(1));
  while (!r1.is_zero()) {
    auto [q, r2] = poly_divmod(r0, r1);
    QPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (r0.is_zero()) return {r0, u0, v0};
  Rat inv = Rat(1) / r0.lead();
  return {r0 * inv, u0 * inv, v0 * inv};
}

// common denominator of all coefficients
inline Int poly_coeff_lcm_den(const QPoly& p) {
  Int l = 1;
  for (const auto& a : p.c) l = boost::multiprecision::lcm(l, den(a));
  return l;
}

// largest integer content of an integer-coefficient polynomial
inline Int poly_int_content(const QPoly& p) {
  Int g = 0;
  for (const auto& a : p.c) g = boost::multiprecision::gcd(g, num(a));
  return g;
}

// primitive integer polynomial proportional to p, positive leading coefficient
inline QPoly poly_primitive(const QPoly& p) {
  if (p.is_zero()) return p;
  QPoly q = p * Rat(poly_coeff_lcm_den(p));
  Int g = poly_int_content(q);
  q = q * Rat(Int(1), g);
  if (q.lead() < 0) q = -q;
  return q;
}

inline std::string poly_to_string(const QPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.c.size(); i-- > 0;) {
    const Rat& a = p.c[i];
    if (a == 0) continue;
    Rat aa = a;
    if (first) {
      if (a < 0) {
        os << "-";
        aa = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      aa = a < 0 ? Rat(-a) : a;
    }
    bool unit = (aa == 1) && i > 0;
    if (!unit) os << rat_to_string(aa);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

// total order on polynomials: by degree, then lexicographic on coefficients
// from the top; used for deterministic factor ordering
inline bool poly_less(const QPoly& a, const QPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.c.size(); i-- > 0;) {
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  }
  return false;
}

}  // namespace unidyn
