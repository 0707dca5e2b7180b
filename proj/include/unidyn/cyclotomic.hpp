#pragma once

#include <map>
#include <mutex>

#include "poly.hpp"

namespace unidyn {

inline unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  unsigned long m = n;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

// Phi_n via recursive exact division: x^n - 1 = prod_{d | n} Phi_d
inline const QPoly& cyclotomic_polynomial(unsigned long n) {
  static std::map<unsigned long, QPoly> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  QPoly xn1 = QPoly::monomial(Rat(1), n) - QPoly(Rat(1));
  QPoly prod(Rat(1));
  for (unsigned long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    // recursive fill (cache holds all proper divisors after this loop)
    if (cache.find(d) == cache.end()) {
      QPoly xd1 = QPoly::monomial(Rat(1), d) - QPoly(Rat(1));
      QPoly pr(Rat(1));
      for (unsigned long e = 1; e < d; ++e)
        if (d % e == 0) pr *= cache.at(e);
      cache.emplace(d, xd1 / pr);
    }
    prod *= cache.at(d);
  }
  auto [pos, _] = cache.emplace(n, xn1 / prod);
  return pos->second;
}

// Element of Q(zeta_n), stored as the residue of a polynomial in zeta mod Phi_n.
struct CyclotomicElement {
  unsigned long n = 1;
  QPoly r;  // degree < phi(n)

  CyclotomicElement() = default;
  CyclotomicElement(unsigned long order, QPoly residue) : n(order) {
    r = residue % cyclotomic_polynomial(n);
  }
  static CyclotomicElement from_rational(unsigned long order, const Rat& q) {
    return CyclotomicElement(order, QPoly(q));
  }
  static CyclotomicElement zeta(unsigned long order) {
    return CyclotomicElement(order, QPoly::x());
  }

  bool is_zero() const { return r.is_zero(); }
  bool is_rational() const { return r.is_constant(); }
  Rat rational_value() const { return r.constant_term(); }

  bool operator==(const CyclotomicElement& o) const { return n == o.n && r == o.r; }
  bool operator!=(const CyclotomicElement& o) const { return !(*this == o); }

  CyclotomicElement operator-() const { return CyclotomicElement{n, -r}; }

  friend CyclotomicElement check_same(const CyclotomicElement& a, const CyclotomicElement& b) {
    if (a.n != b.n) throw MixedFields();
    return a;
  }

  friend CyclotomicElement operator+(const CyclotomicElement& a, const CyclotomicElement& b) {
    if (a.n != b.n) throw MixedFields();
    return CyclotomicElement(a.n, a.r + b.r);
  }
  friend CyclotomicElement operator-(const CyclotomicElement& a, const CyclotomicElement& b) {
    if (a.n != b.n) throw MixedFields();
    return CyclotomicElement(a.n, a.r - b.r);
  }
  friend CyclotomicElement operator*(const CyclotomicElement& a, const CyclotomicElement& b) {
    if (a.n != b.n) throw MixedFields();
    return CyclotomicElement(a.n, a.r * b.r);
  }

  CyclotomicElement inverse() const {
    if (is_zero()) throw DivisionByZero();
    auto [g, u, v] = poly_xgcd(r, cyclotomic_polynomial(n));
    // Phi_n is irreducible, so g = 1 and u*r = 1 mod Phi_n
    (void)v;
    return CyclotomicElement(n, u);
  }

  friend CyclotomicElement operator/(const CyclotomicElement& a, const CyclotomicElement& b) {
    return a * b.inverse();
  }

  CyclotomicElement pow(unsigned long e) const {
    CyclotomicElement out = from_rational(n, 1), b = *this;
    while (e) {
      if (e & 1) out = out * b;
      b = b * b;
      e >>= 1;
    }
    return out;
  }

  std::string str() const { return poly_to_string(r, "z"); }
};

// order of the full group of roots of unity in Q(zeta_n)
inline unsigned long rou_group_order(unsigned long n) { return n % 2 == 0 ? n : 2 * n; }

// a generator of the group of roots of unity in Q(zeta_n)
inline CyclotomicElement rou_group_generator(unsigned long n) {
  CyclotomicElement z = CyclotomicElement::zeta(n);
  return n % 2 == 0 ? z : -z;
}

}  // namespace unidyn
