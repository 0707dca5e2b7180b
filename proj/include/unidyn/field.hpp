#pragma once

#include <cctype>
#include <variant>
#include <vector>

#include "cyclotomic.hpp"
#include "ratfunc.hpp"

namespace unidyn {

enum class FieldKind { Rationals, FunctionField, Cyclotomic };

// Effective constants: fixed formulas over function fields, user-supplied
// (Configured) over number fields where no effective value exists.
struct EffectiveConstants {
  double B1 = 30, B2 = 0;
  double C1 = 0, C3 = 0, C4 = 0;
  double D1 = 8, D3 = 14, D4 = 14, D6 = 13, D8 = 14;
  unsigned N_power = 8;
  bool configured = false;  // true when values were user overrides (number field)

  static EffectiveConstants function_field(unsigned g) {
    EffectiveConstants k;
    k.B1 = 30;
    k.B2 = std::max(12.0 * g - 12.0, 0.0);
    k.C1 = 0;
    k.D1 = std::max(8.0, 2.0 * g + 6.0);
    k.C3 = k.C4 = 0;
    k.D3 = k.D4 = std::max(14.0, 4.0 * g + 10.0);
    k.D6 = std::max(13.0, 2.0 * g + 11.0);
    k.D8 = std::max(14.0, 4.0 * g + 10.0);
    return k;
  }
};

struct FieldContext {
  FieldKind kind = FieldKind::Rationals;
  unsigned long n = 0;  // cyclotomic order
  unsigned genus = 0;   // 0 for Q(t)
  EffectiveConstants constants;

  static FieldContext Q() { return FieldContext{FieldKind::Rationals, 0, 0, {}}; }
  static FieldContext Qt() {
    return FieldContext{FieldKind::FunctionField, 0, 0, EffectiveConstants::function_field(0)};
  }
  static FieldContext Qzeta(unsigned long n) {
    return FieldContext{FieldKind::Cyclotomic, n, 0, {}};
  }

  bool operator==(const FieldContext& o) const { return kind == o.kind && n == o.n; }

  std::string name() const {
    switch (kind) {
      case FieldKind::Rationals: return "Q";
      case FieldKind::FunctionField: return "Q(t)";
      case FieldKind::Cyclotomic: return "Q(zeta_" + std::to_string(n) + ")";
    }
    return "?";
  }
};

class FieldElement {
 public:
  FieldKind kind = FieldKind::Rationals;
  std::variant<Rat, RationalFunction, CyclotomicElement> v;

  FieldElement() : v(Rat(0)) {}
  explicit FieldElement(Rat q) : kind(FieldKind::Rationals), v(std::move(q)) {}
  explicit FieldElement(RationalFunction f) : kind(FieldKind::FunctionField), v(std::move(f)) {}
  explicit FieldElement(CyclotomicElement c) : kind(FieldKind::Cyclotomic), v(std::move(c)) {}

  static FieldElement from_rational(const FieldContext& ctx, const Rat& q) {
    switch (ctx.kind) {
      case FieldKind::Rationals: return FieldElement(q);
      case FieldKind::FunctionField: return FieldElement(RationalFunction(q));
      case FieldKind::Cyclotomic:
        return FieldElement(CyclotomicElement::from_rational(ctx.n, q));
    }
    throw UnsupportedField();
  }
  static FieldElement zero(const FieldContext& ctx) { return from_rational(ctx, 0); }
  static FieldElement one(const FieldContext& ctx) { return from_rational(ctx, 1); }

  const Rat& rat() const { return std::get<Rat>(v); }
  const RationalFunction& rf() const { return std::get<RationalFunction>(v); }
  const CyclotomicElement& cyc() const { return std::get<CyclotomicElement>(v); }

  bool is_zero() const {
    switch (kind) {
      case FieldKind::Rationals: return rat() == 0;
      case FieldKind::FunctionField: return rf().is_zero();
      case FieldKind::Cyclotomic: return cyc().is_zero();
    }
    return false;
  }

  // rational content when the element lies in the prime field
  std::optional<Rat> as_rational() const {
    switch (kind) {
      case FieldKind::Rationals: return rat();
      case FieldKind::FunctionField:
        if (rf().is_constant()) return rf().constant_value();
        return std::nullopt;
      case FieldKind::Cyclotomic:
        if (cyc().is_rational()) return cyc().rational_value();
        return std::nullopt;
    }
    return std::nullopt;
  }

  bool operator==(const FieldElement& o) const {
    if (kind != o.kind) throw MixedFields();
    return v == o.v;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement operator-() const {
    FieldElement r = *this;
    std::visit([](auto& x) { x = -x; }, r.v);
    return r;
  }

#define UNIDYN_BINOP(opsym)                                                       \
  friend FieldElement operator opsym(const FieldElement& a, const FieldElement& b) { \
    if (a.kind != b.kind) throw MixedFields();                                    \
    switch (a.kind) {                                                             \
      case FieldKind::Rationals: return FieldElement(Rat(a.rat() opsym b.rat())); \
      case FieldKind::FunctionField: return FieldElement(a.rf() opsym b.rf());    \
      case FieldKind::Cyclotomic: return FieldElement(a.cyc() opsym b.cyc());     \
    }                                                                             \
    throw UnsupportedField();                                                     \
  }
  UNIDYN_BINOP(+)
  UNIDYN_BINOP(-)
  UNIDYN_BINOP(*)
#undef UNIDYN_BINOP

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    if (a.kind != b.kind) throw MixedFields();
    if (b.is_zero()) throw DivisionByZero();
    switch (a.kind) {
      case FieldKind::Rationals: return FieldElement(Rat(a.rat() / b.rat()));
      case FieldKind::FunctionField: return FieldElement(a.rf() / b.rf());
      case FieldKind::Cyclotomic: return FieldElement(a.cyc() / b.cyc());
    }
    throw UnsupportedField();
  }

  FieldElement pow(unsigned long e) const {
    switch (kind) {
      case FieldKind::Rationals: return FieldElement(rat_pow(rat(), e));
      case FieldKind::FunctionField: return FieldElement(rf().pow(e));
      case FieldKind::Cyclotomic: return FieldElement(cyc().pow(e));
    }
    throw UnsupportedField();
  }

  std::string str() const {
    switch (kind) {
      case FieldKind::Rationals: return rat_to_string(rat());
      case FieldKind::FunctionField: return rf().str();
      case FieldKind::Cyclotomic: return cyc().str();
    }
    return "?";
  }
};

enum class ArithOp { Add, Sub, Mul, Div };

inline FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  throw UnsupportedField();
}

// exact multiplicative order if alpha is a root of unity, absent otherwise
inline std::optional<unsigned long> is_root_of_unity(const FieldElement& alpha) {
  if (alpha.is_zero()) return std::nullopt;
  auto q = alpha.as_rational();
  if (q) {
    if (*q == 1) return 1;
    if (*q == -1) return 2;
    return std::nullopt;
  }
  if (alpha.kind != FieldKind::Cyclotomic) return std::nullopt;
  unsigned long M = rou_group_order(alpha.cyc().n);
  CyclotomicElement acc = alpha.cyc();
  CyclotomicElement one = CyclotomicElement::from_rational(alpha.cyc().n, 1);
  for (unsigned long k = 1; k <= M; ++k) {
    if (acc == one) return k;
    acc = acc * alpha.cyc();
  }
  return std::nullopt;
}

// all roots of unity of K (mu_K), deterministic order (ascending generator powers)
inline std::vector<FieldElement> all_roots_of_unity(const FieldContext& ctx) {
  if (ctx.kind != FieldKind::Cyclotomic) {
    return {FieldElement::one(ctx), -FieldElement::one(ctx)};
  }
  std::vector<FieldElement> out;
  unsigned long M = rou_group_order(ctx.n);
  CyclotomicElement g = rou_group_generator(ctx.n);
  CyclotomicElement acc = CyclotomicElement::from_rational(ctx.n, 1);
  for (unsigned long k = 0; k < M; ++k) {
    out.push_back(FieldElement(acc));
    acc = acc * g;
  }
  return out;
}

// mu_{K,d}: the d-th roots of unity in K
inline std::vector<FieldElement> roots_of_unity_subgroup(const FieldContext& ctx, unsigned long d) {
  std::vector<FieldElement> out;
  for (const auto& z : all_roots_of_unity(ctx)) {
    if (z.pow(d) == FieldElement::one(ctx)) out.push_back(z);
  }
  return out;
}

// decompose alpha = q * zeta with q rational, zeta a root of unity; absent otherwise
inline std::optional<std::pair<Rat, FieldElement>> as_rational_times_rou(const FieldElement& alpha,
                                                                        const FieldContext& ctx) {
  if (alpha.is_zero()) return std::nullopt;
  if (auto q = alpha.as_rational()) return std::make_pair(*q, FieldElement::one(ctx));
  if (alpha.kind != FieldKind::Cyclotomic) return std::nullopt;
  for (const auto& z : all_roots_of_unity(ctx)) {
    FieldElement ratio = alpha / z;
    if (auto q = ratio.as_rational()) return std::make_pair(*q, z);
  }
  return std::nullopt;
}

namespace detail_root {

// m-th root of a polynomial over Q by coefficient recursion from the top
inline std::optional<QPoly> poly_root(const QPoly& p, unsigned m) {
  if (p.is_zero()) return QPoly();
  long dp = p.degree();
  if (dp % m != 0) return std::nullopt;
  long dz = dp / m;
  auto lead = rat_root_exact(p.lead(), m);
  if (!lead) return std::nullopt;
  std::vector<Rat> z(dz + 1, Rat(0));
  z[dz] = *lead;
  QPoly acc = QPoly(std::vector<Rat>(z));  // running candidate
  for (long k = dz - 1; k >= 0; --k) {
    // coefficient of t^(dp - (dz - k)) in acc^m must match p
    QPoly am = acc.pow(m);
    long idx = dp - (dz - k);
    Rat diff = p.coeff(idx) - am.coeff(idx);
    // d/dz_k of acc^m at that index is m * lead^(m-1)
    Rat denom = Rat(m) * rat_pow(*lead, m - 1);
    z[k] = diff / denom;
    acc = QPoly(std::vector<Rat>(z));
  }
  if (acc.pow(m) == p) return acc;
  if (m % 2 == 0) {
    // even m: the other sign choice of the leading root gives -acc, same power
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail_root

// exact m-th root in K; absent when none exists
inline std::optional<FieldElement> nth_root_exact(const FieldElement& x, unsigned m,
                                                  const FieldContext& ctx) {
  if (m < 1) throw Error("m must be >= 1");
  if (x.is_zero()) return FieldElement::zero(ctx);
  switch (x.kind) {
    case FieldKind::Rationals: {
      auto r = rat_root_exact(x.rat(), m);
      if (!r) return std::nullopt;
      return FieldElement(*r);
    }
    case FieldKind::FunctionField: {
      const auto& f = x.rf();
      auto rn = detail_root::poly_root(f.num_, m);
      if (!rn) {
        // possible sign obstruction on the numerator for odd m
        if (m % 2 == 1) {
          auto rn2 = detail_root::poly_root(-f.num_, m);
          if (!rn2) return std::nullopt;
          auto rd2 = detail_root::poly_root(f.den_, m);
          if (!rd2) return std::nullopt;
          return FieldElement(RationalFunction(-*rn2, *rd2));
        }
        return std::nullopt;
      }
      auto rd = detail_root::poly_root(f.den_, m);
      if (!rd) return std::nullopt;
      return FieldElement(RationalFunction(*rn, *rd));
    }
    case FieldKind::Cyclotomic: {
      // restricted to inputs of the form q * zeta
      auto dec = as_rational_times_rou(x, ctx);
      if (!dec) throw UnsupportedDomain("nth_root_exact over cyclotomics handles only q*zeta inputs");
      for (const auto& xi : all_roots_of_unity(ctx)) {
        FieldElement rest = x / xi.pow(m);
        if (auto q = rest.as_rational()) {
          auto r = rat_root_exact(*q, m);
          if (r) return xi * FieldElement::from_rational(ctx, *r);
        }
      }
      return std::nullopt;
    }
  }
  throw UnsupportedField();
}

// ---- parsing ---------------------------------------------------------------

// Recursive-descent parser for field elements. Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' uint)?
//   atom   := uint | var | '(' expr ')'
// var is 't' over Q(t), 'z' over Q(zeta_n).
namespace detail_parse {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  const FieldContext& ctx;

  Parser(const std::string& str, const FieldContext& c) : s(str), ctx(c) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skip();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  FieldElement expr() {
    FieldElement r = term();
    while (true) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        break;
    }
    return r;
  }

  FieldElement term() {
    FieldElement r = factor();
    while (true) {
      if (eat('*'))
        r = r * factor();
      else if (eat('/'))
        r = r / factor();
      else
        break;
    }
    return r;
  }

  FieldElement factor() {
    if (eat('-')) return -factor();
    FieldElement a = atom();
    if (eat('^')) {
      unsigned long e = read_uint();
      a = a.pow(e);
    }
    return a;
  }

  unsigned long read_uint() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw ParseError("expected integer at position " + std::to_string(start));
    return std::stoul(s.substr(start, pos - start));
  }

  FieldElement atom() {
    skip();
    if (pos >= s.size()) throw ParseError("unexpected end of input");
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return FieldElement::from_rational(ctx, Rat(Int(s.substr(start, pos - start))));
    }
    if (c == '(') {
      ++pos;
      FieldElement r = expr();
      if (!eat(')')) throw ParseError("missing ')'");
      return r;
    }
    if (c == 't' && ctx.kind == FieldKind::FunctionField) {
      ++pos;
      return FieldElement(RationalFunction::t());
    }
    if (c == 'z' && ctx.kind == FieldKind::Cyclotomic) {
      ++pos;
      return FieldElement(CyclotomicElement::zeta(ctx.n));
    }
    throw ParseError(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace detail_parse

inline FieldElement parse_element(const std::string& s, const FieldContext& ctx) {
  detail_parse::Parser p(s, ctx);
  FieldElement r = p.expr();
  p.skip();
  if (p.pos != s.size()) throw ParseError("trailing input at position " + std::to_string(p.pos));
  return r;
}

}  // namespace unidyn
