#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace unidyn {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// ---- error taxonomy -------------------------------------------------------

struct Error : std::runtime_error {
  explicit Error(const std::string& m) : std::runtime_error(m) {}
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};
struct MixedFields : Error {
  MixedFields() : Error("operands belong to different fields") {}
};
struct FactorizationTimeout : Error {
  FactorizationTimeout() : Error("factorization effort bound exhausted") {}
};
struct UnsupportedDomain : Error {
  explicit UnsupportedDomain(const std::string& m = "operation not supported over this field") : Error(m) {}
};
struct PrecisionExhausted : Error {
  PrecisionExhausted() : Error("interval tolerance not reached within iteration budget") {}
};
struct ZeroInput : Error {
  ZeroInput() : Error("zero input not allowed") {}
};
struct StepBudgetExhausted : Error {
  StepBudgetExhausted() : Error("orbit neither cycled nor escaped within max_steps") {}
};
struct NotASolution : Error {
  NotASolution() : Error("identity a*x^m + b*y^n = 1 fails") {}
};
struct NotClosed : Error {
  NotClosed() : Error("point set is not forward-closed under the map") {}
};
struct ViolationDetected : Error {
  explicit ViolationDetected(const std::string& m) : Error(m) {}
};
struct ConstantC : Error {
  ConstantC() : Error("c must be nonconstant over the function field") {}
};
struct UnsupportedField : Error {
  UnsupportedField() : Error("field not supported for this operation") {}
};
struct ThresholdsNotMet : Error {
  ThresholdsNotMet() : Error("degrees/heights below the effective-constant thresholds") {}
};
struct DegreeMismatch : Error {
  DegreeMismatch() : Error("generating set must have one common degree") {}
};
struct ExpansionTooLarge : Error {
  ExpansionTooLarge() : Error("polynomial expansion exceeds the configured cap") {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error("parse error: " + m) {}
};

// ---- small integer/rational helpers ---------------------------------------

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Rat rat_pow(const Rat& base, unsigned long e) {
  Rat r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// Exact nonnegative integer m-th root; nullopt when x is not a perfect power.
inline std::optional<Int> iroot_exact(const Int& x, unsigned m) {
  if (x < 0) return std::nullopt;
  if (x == 0 || x == 1) return x;
  if (m == 1) return x;
  // initial guess via bit length
  unsigned long bits = boost::multiprecision::msb(x) + 1;
  Int hi = Int(1) << (bits / m + 1);
  Int lo = 1;
  while (lo < hi) {
    Int mid = (lo + hi + 1) / 2;
    if (int_pow(mid, m) <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  if (int_pow(lo, m) == x) return lo;
  return std::nullopt;
}

// Exact rational m-th root (both signs resolved; m odd allows negatives).
inline std::optional<Rat> rat_root_exact(const Rat& x, unsigned m) {
  if (x == 0) return Rat(0);
  bool neg = x < 0;
  if (neg && m % 2 == 0) return std::nullopt;
  Rat ax = neg ? Rat(-x) : x;
  auto rn = iroot_exact(num(ax), m);
  if (!rn) return std::nullopt;
  auto rd = iroot_exact(den(ax), m);
  if (!rd) return std::nullopt;
  Rat r(*rn, *rd);
  return neg ? Rat(-r) : r;
}

inline double to_double(const Rat& q) { return q.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

inline std::string rat_to_string(const Rat& q) {
  std::ostringstream os;
  os << num(q);
  if (den(q) != 1) os << "/" << den(q);
  return os.str();
}

inline Int parse_int(const std::string& s) {
  try {
    return Int(s);
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + s + "'");
  }
}

}  // namespace unidyn
