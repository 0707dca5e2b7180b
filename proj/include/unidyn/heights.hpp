#pragma once

#include <cmath>

#include "field.hpp"
#include "intfactor.hpp"
#include "interval.hpp"
#include "polyfactor.hpp"

namespace unidyn {

// ---- places and valuations --------------------------------------------------

struct Place {
  enum class Kind { FinitePrime, Archimedean, FinitePoly, InfinityOfT } kind;
  Int p;      // FinitePrime
  QPoly pi;   // FinitePoly: monic irreducible over Q

  static Place finite_prime(const Int& prime) { return {Kind::FinitePrime, prime, {}}; }
  static Place archimedean() { return {Kind::Archimedean, 0, {}}; }
  static Place finite_poly(const QPoly& f) { return {Kind::FinitePoly, 0, f}; }
  static Place infinity_of_t() { return {Kind::InfinityOfT, 0, {}}; }
};

inline long poly_valuation(const QPoly& f, const QPoly& pi) {
  if (f.is_zero()) throw ZeroInput();
  long v = 0;
  QPoly g = f;
  while (true) {
    auto [q, r] = poly_divmod(g, pi);
    if (!r.is_zero()) break;
    g = q;
    ++v;
  }
  return v;
}

inline long valuation(const FieldElement& alpha, const Place& v) {
  if (alpha.is_zero()) throw ZeroInput();
  switch (v.kind) {
    case Place::Kind::FinitePrime: {
      auto q = alpha.as_rational();
      if (!q) throw UnsupportedDomain("finite-prime valuation needs a rational element");
      return valuation_rat(*q, v.p);
    }
    case Place::Kind::FinitePoly: {
      if (alpha.kind != FieldKind::FunctionField)
        throw UnsupportedDomain("finite-poly valuation needs a Q(t) element");
      const auto& f = alpha.rf();
      return poly_valuation(f.num_, v.pi) - poly_valuation(f.den_, v.pi);
    }
    case Place::Kind::InfinityOfT: {
      if (alpha.kind != FieldKind::FunctionField)
        throw UnsupportedDomain("infinity valuation needs a Q(t) element");
      const auto& f = alpha.rf();
      return f.den_.degree() - f.num_.degree();
    }
    case Place::Kind::Archimedean:
      throw UnsupportedDomain("valuation is defined at finite places only");
  }
  throw UnsupportedDomain();
}

// ---- height values ----------------------------------------------------------

struct HeightValue {
  enum class Tag { ExactInteger, ExactLogRational, Interval } tag;
  double lo = 0, hi = 0;
  Int exact = 0;  // the integer height (function field) or argmax(|num|, den) (Q)

  double value() const { return (lo + hi) / 2; }
  bool is_zero() const {
    if (tag == Tag::ExactInteger) return exact == 0;
    if (tag == Tag::ExactLogRational) return exact == 1;
    return lo <= 0 && hi <= 0;
  }
};

// log of a positive big integer, accurate to ~1 ulp
inline double log_int(const Int& x) {
  if (x <= 0) throw ZeroInput();
  if (x == 1) return 0.0;
  unsigned long k = boost::multiprecision::msb(x);
  if (k <= 960) return std::log(x.convert_to<double>());
  Int top = x >> (k - 52);
  return std::log(top.convert_to<double>()) + static_cast<double>(k - 52) * std::log(2.0);
}

// ---- minimal polynomial of a cyclotomic element -----------------------------

// characteristic polynomial of the multiplication-by-alpha matrix over the
// power basis of Q(zeta_n), via Faddeev-LeVerrier
inline QPoly cyclotomic_char_poly(const CyclotomicElement& alpha) {
  unsigned long m = euler_phi(alpha.n);
  // columns: alpha * zeta^j in the power basis
  std::vector<std::vector<Rat>> A(m, std::vector<Rat>(m, Rat(0)));
  CyclotomicElement zeta = CyclotomicElement::zeta(alpha.n);
  CyclotomicElement col = alpha;
  for (unsigned long j = 0; j < m; ++j) {
    for (unsigned long i = 0; i < m; ++i) A[i][j] = col.r.coeff(i);
    col = col * zeta;
  }
  auto matmul = [m](const std::vector<std::vector<Rat>>& X, const std::vector<std::vector<Rat>>& Y) {
    std::vector<std::vector<Rat>> Z(m, std::vector<Rat>(m, Rat(0)));
    for (unsigned long i = 0; i < m; ++i)
      for (unsigned long k = 0; k < m; ++k) {
        if (X[i][k] == 0) continue;
        for (unsigned long j = 0; j < m; ++j) Z[i][j] += X[i][k] * Y[k][j];
      }
    return Z;
  };
  std::vector<Rat> coeffs(m + 1, Rat(0));
  coeffs[m] = 1;
  std::vector<std::vector<Rat>> M(m, std::vector<Rat>(m, Rat(0)));  // starts at 0
  Rat ck = 1;
  for (unsigned long k = 1; k <= m; ++k) {
    // M <- A * (M + c_{k-1} I)
    for (unsigned long i = 0; i < m; ++i) M[i][i] += ck;
    M = matmul(A, M);
    Rat tr = 0;
    for (unsigned long i = 0; i < m; ++i) tr += M[i][i];
    ck = -tr / Rat(k);
    coeffs[m - k] = ck;
  }
  return QPoly(std::move(coeffs));
}

inline QPoly cyclotomic_minimal_poly(const CyclotomicElement& alpha) {
  QPoly ch = cyclotomic_char_poly(alpha);
  QPoly g = poly_gcd(ch, ch.derivative());
  return ch / g;  // char = min^e, so the squarefree part is the minimal polynomial
}

// ---- certified Mahler measure via Graeffe iteration -------------------------

// returns enclosure of log M(f) for a nonzero integer polynomial f
inline std::pair<double, double> log_mahler_interval(const QPoly& fQ, double tol,
                                                     unsigned max_steps = 64) {
  QPoly f = poly_primitive(fQ);
  long n = f.degree();
  if (n == 0) {
    double l = log_int(iabs(num(f.constant_term())));
    return {l, l};
  }
  if (n > 64) throw PrecisionExhausted();
  std::vector<MpfrInterval> a(n + 1);
  for (long i = 0; i <= n; ++i) a[i] = MpfrInterval(num(f.coeff(i)));
  // binomials C(n, i); n <= 64 keeps them inside 64 bits
  std::vector<Int> binom_z(n + 1);
  binom_z[0] = 1;
  for (long i = 1; i <= n; ++i) binom_z[i] = binom_z[i - 1] * (n - i + 1) / i;
  std::vector<unsigned long> binom(n + 1);
  for (long i = 0; i <= n; ++i) binom[i] = binom_z[i].convert_to<unsigned long>();

  mpfr_t tmp, best_lo, best_hi, t2;
  mpfr_inits2(MpfrInterval::kPrec, tmp, best_lo, best_hi, t2, static_cast<mpfr_ptr>(nullptr));
  double out_lo = 0, out_hi = 0;
  bool ok = false;
  for (unsigned k = 0; k <= max_steps; ++k) {
    // lower bound: max_i mig(a_i) / C(n,i); upper bound: sqrt(sum mag(a_i)^2)
    mpfr_set_zero(best_lo, 1);
    mpfr_set_zero(best_hi, 1);
    for (long i = 0; i <= n; ++i) {
      a[i].abs_lower(tmp);
      mpfr_div_ui(tmp, tmp, binom[i], MPFR_RNDD);
      mpfr_max(best_lo, best_lo, tmp, MPFR_RNDD);
      a[i].abs_upper(tmp);
      mpfr_sqr(tmp, tmp, MPFR_RNDU);
      mpfr_add(best_hi, best_hi, tmp, MPFR_RNDU);
    }
    mpfr_sqrt(best_hi, best_hi, MPFR_RNDU);
    double lo = 0, hi = 0;
    if (mpfr_sgn(best_lo) > 0) {
      mpfr_log(t2, best_lo, MPFR_RNDD);
      mpfr_div_2ui(t2, t2, k, MPFR_RNDD);
      lo = mpfr_get_d(t2, MPFR_RNDD);
    }
    mpfr_log(t2, best_hi, MPFR_RNDU);
    mpfr_div_2ui(t2, t2, k, MPFR_RNDU);
    hi = mpfr_get_d(t2, MPFR_RNDU);
    if (lo < 0) lo = 0;  // integer polynomial: M >= 1
    if (hi < lo) hi = lo;
    out_lo = lo;
    out_hi = hi;
    if (hi - lo <= tol) {
      ok = true;
      break;
    }
    if (k == max_steps) break;
    // Graeffe step: f(x) = e(x^2) + x o(x^2); next = +/- (e^2 - x o^2)
    std::vector<MpfrInterval> e((n / 2) + 1), o(((n + 1) / 2));
    for (long i = 0; i <= n; ++i) {
      if (i % 2 == 0)
        e[i / 2] = a[i];
      else
        o[i / 2] = a[i];
    }
    std::vector<MpfrInterval> next(n + 1);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = 0; j < e.size(); ++j) next[i + j] = next[i + j] + e[i] * e[j];
    for (std::size_t i = 0; i < o.size(); ++i)
      for (std::size_t j = 0; j < o.size(); ++j)
        next[i + j + 1] = next[i + j + 1] - o[i] * o[j];
    a = std::move(next);
  }
  mpfr_clears(tmp, best_lo, best_hi, t2, static_cast<mpfr_ptr>(nullptr));
  if (!ok) throw PrecisionExhausted();
  return {out_lo, out_hi};
}

// ---- Weil height ------------------------------------------------------------

inline HeightValue height(const FieldElement& alpha, double tol = 1e-12) {
  HeightValue h;
  switch (alpha.kind) {
    case FieldKind::Rationals: {
      const Rat& q = alpha.rat();
      Int arg = std::max(iabs(num(q)), den(q));
      h.tag = HeightValue::Tag::ExactLogRational;
      h.exact = arg;
      h.lo = h.hi = log_int(arg);
      return h;
    }
    case FieldKind::FunctionField: {
      h.tag = HeightValue::Tag::ExactInteger;
      h.exact = alpha.rf().height_deg();
      h.lo = h.hi = to_double(h.exact);
      return h;
    }
    case FieldKind::Cyclotomic: {
      h.tag = HeightValue::Tag::Interval;
      const CyclotomicElement& c = alpha.cyc();
      if (c.is_zero()) {
        h.lo = h.hi = 0;
        return h;
      }
      if (c.is_rational()) {
        Rat q = c.rational_value();
        Int arg = std::max(iabs(num(q)), den(q));
        h.lo = h.hi = log_int(arg);
        return h;
      }
      FieldContext ctx = FieldContext::Qzeta(c.n);
      if (auto dec = as_rational_times_rou(FieldElement(c), ctx)) {
        // h(q * zeta) = h(q): all conjugates share |q| and the same denominators
        Rat q = dec->first;
        Int arg = std::max(iabs(num(q)), den(q));
        h.lo = h.hi = log_int(arg);
        return h;
      }
      QPoly mp = cyclotomic_minimal_poly(c);
      auto [lo, hi] = log_mahler_interval(mp, tol * mp.degree());
      h.lo = lo / mp.degree();
      h.hi = hi / mp.degree();
      return h;
    }
  }
  throw UnsupportedField();
}

inline double min_nonzero_height(const FieldContext& K) {
  switch (K.kind) {
    case FieldKind::Rationals: return std::log(2.0);
    case FieldKind::FunctionField: return 1.0;
    case FieldKind::Cyclotomic:
      throw UnsupportedDomain("no closed form for the minimal nonzero height over Q(zeta_n)");
  }
  throw UnsupportedField();
}

// ---- radical ----------------------------------------------------------------

// normalized sum of N_p over finite places with v_p(alpha) > 0
inline double radical(const FieldElement& alpha, const FactorEffort& effort = {}) {
  if (alpha.is_zero()) return 0.0;
  switch (alpha.kind) {
    case FieldKind::Rationals: {
      Int n = iabs(num(alpha.rat()));
      if (n <= 1) return 0.0;
      double r = 0;
      for (const auto& [p, e] : factor_integer(n, effort).factors) r += log_int(p);
      return r;
    }
    case FieldKind::FunctionField: {
      const QPoly& n = alpha.rf().num_;
      if (n.degree() < 1) return 0.0;
      double r = 0;
      for (const auto& [f, e] : factor_polynomial_Q(n).factors) r += f.degree();
      return r;
    }
    case FieldKind::Cyclotomic:
      throw UnsupportedDomain("radical over Q(zeta_n) is out of scope");
  }
  throw UnsupportedField();
}

// ---- rho_d ------------------------------------------------------------------

struct RhoD {
  unsigned d;
  double lo, hi;  // certified: F_d(lo) < 0 < F_d(hi)

  double value() const { return (lo + hi) / 2; }
};

inline Rat fd_eval(unsigned d, const Rat& x) { return rat_pow(x, d) - 2 * x - 1; }

inline RhoD rho_d(unsigned d, double tol = 1e-12) {
  if (d < 2) throw Error("d must be >= 2");
  // Newton in double from the upper end, then certify and tighten exactly
  double x = 2.5;
  for (int it = 0; it < 200; ++it) {
    double fx = std::pow(x, static_cast<int>(d)) - 2 * x - 1;
    double fpx = d * std::pow(x, static_cast<int>(d) - 1) - 2;
    double nx = x - fx / fpx;
    if (!(nx > 1.0)) nx = (x + 1.0) / 2;
    if (std::abs(nx - x) < 1e-15 * x) {
      x = nx;
      break;
    }
    x = nx;
  }
  // bracket with exact sign checks
  Rat lo(Int(std::llround(std::floor(x * 1e12) - 4)), Int(1000000000000LL));
  Rat hi(Int(std::llround(std::ceil(x * 1e12) + 4)), Int(1000000000000LL));
  while (fd_eval(d, lo) >= 0) lo -= Rat(1, 1000000);
  while (fd_eval(d, hi) <= 0) hi += Rat(1, 1000000);
  while (to_double(hi - lo) > tol) {
    Rat mid = (lo + hi) / 2;
    if (fd_eval(d, mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
  return {d, to_double(lo) * (1 - 1e-16), to_double(hi) * (1 + 1e-16)};
}

// ---- Fermat-Catalan bound ---------------------------------------------------

struct FermatCatalanReport {
  double lhs;            // max{m h(x), n h(y)}
  double bound;          // B1 * max{h(a), h(b)} + B2
  bool pass;
  bool trivial_exempt;   // g = 0 and all four heights vanish
  double silverman_lhs;  // (1 - 1/m - 1/n - 1/lcm) * lhs (function field)
  double silverman_rhs;  // 5 max{h(a), h(b)} + 2g - 2
};

inline bool fc_admissible(unsigned m, unsigned n) {
  unsigned lo = std::min(m, n), hi = std::max(m, n);
  return (lo >= 3 && hi >= 4) || (lo == 2 && hi >= 5);
}

inline FermatCatalanReport check_fermat_catalan_bound(const FieldElement& a, const FieldElement& b,
                                                      unsigned m, unsigned n,
                                                      const FieldElement& x, const FieldElement& y,
                                                      const EffectiveConstants& cst,
                                                      unsigned genus = 0) {
  FieldElement lhs_val = a * x.pow(m) + b * y.pow(n);
  FieldContext ctx{x.kind, x.kind == FieldKind::Cyclotomic ? x.cyc().n : 0, 0, {}};
  if (lhs_val != FieldElement::one(ctx)) throw NotASolution();
  if (!fc_admissible(m, n)) throw Error("(m, n) outside the admissible range");
  double hx = height(x).hi, hy = height(y).hi;
  double ha = height(a).hi, hb = height(b).hi;
  FermatCatalanReport r{};
  r.lhs = std::max(m * hx, n * hy);
  r.bound = cst.B1 * std::max(ha, hb) + cst.B2;
  r.pass = r.lhs <= r.bound + 1e-9;
  r.trivial_exempt = genus == 0 && hx == 0 && hy == 0 && ha == 0 && hb == 0;
  unsigned l = std::lcm(m, n);
  r.silverman_lhs = (1.0 - 1.0 / m - 1.0 / n - 1.0 / l) * r.lhs;
  r.silverman_rhs = 5 * std::max(ha, hb) + 2.0 * genus - 2.0;
  return r;
}

// exhaustive ansatz search over integer-coefficient polynomials in t
inline std::vector<std::pair<FieldElement, FieldElement>> fc_search_function_field(
    const FieldElement& a, const FieldElement& b, unsigned m, unsigned n, unsigned deg_bound,
    long coeff_bound) {
  if (!fc_admissible(m, n)) throw Error("(m, n) outside the admissible range");
  std::vector<QPoly> box;
  // enumerate all integer-coefficient polynomials of degree <= deg_bound
  std::vector<long> coeffs(deg_bound + 1, -coeff_bound);
  while (true) {
    std::vector<Rat> c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = Rat(coeffs[i]);
    box.push_back(QPoly(std::move(c)));
    std::size_t i = 0;
    while (i < coeffs.size() && coeffs[i] == coeff_bound) coeffs[i++] = -coeff_bound;
    if (i == coeffs.size()) break;
    ++coeffs[i];
  }
  FieldElement one = FieldElement::one(FieldContext::Qt());
  std::vector<std::pair<FieldElement, FieldElement>> out;
  for (const auto& xp : box) {
    FieldElement x(RationalFunction(xp, QPoly(Rat(1))));
    FieldElement axm = a * x.pow(m);
    for (const auto& yp : box) {
      FieldElement y(RationalFunction(yp, QPoly(Rat(1))));
      if (axm + b * y.pow(n) == one) out.emplace_back(x, y);
    }
  }
  return out;
}

}  // namespace unidyn
