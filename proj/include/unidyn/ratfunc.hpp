#pragma once

#include "poly.hpp"

namespace unidyn {

// Element of Q(t): num/den with gcd(num, den) = 1 and den monic.
struct RationalFunction {
  QPoly num_, den_;

  RationalFunction() : den_(Rat(1)) {}
  explicit RationalFunction(const Rat& q) : num_(q), den_(Rat(1)) {}
  RationalFunction(QPoly n, QPoly d) {
    if (d.is_zero()) throw DivisionByZero();
    QPoly g = poly_gcd(n, d);
    if (g.degree() > 0) {
      n = n / g;
      d = d / g;
    }
    Rat lc = d.lead();
    num_ = n * (Rat(1) / lc);
    den_ = d * (Rat(1) / lc);
  }

  static RationalFunction t() { return RationalFunction(QPoly::x(), QPoly(Rat(1))); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  Rat constant_value() const { return num_.coeff(0); }  // valid when is_constant()
  bool is_polynomial() const { return den_.degree() == 0; }

  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + (-b);
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DivisionByZero();
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }

  RationalFunction pow(unsigned long e) const {
    RationalFunction r(Rat(1)), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  // Weil height over Q(t): max of numerator/denominator degree
  long height_deg() const {
    if (is_zero()) return 0;
    return std::max(num_.degree(), den_.degree());
  }

  std::optional<Rat> eval(const Rat& t0) const {
    Rat d = den_.eval(t0);
    if (d == 0) return std::nullopt;
    return num_.eval(t0) / d;
  }

  std::string str() const {
    if (den_.degree() == 0) return poly_to_string(num_, "t");
    std::string n = poly_to_string(num_, "t");
    std::string d = poly_to_string(den_, "t");
    return "(" + n + ")/(" + d + ")";
  }
};

}  // namespace unidyn
