#pragma once

#include <set>

#include "dynamics.hpp"

namespace unidyn {

struct CandidateBox {
  Int b = 1;  // forced denominator
  Int A = 0;  // numerator bound |a| <= A
  std::optional<std::string> empty_reason;

  bool empty() const { return empty_reason.has_value(); }
};

// Local constraints: every preperiodic a/b (reduced) has denominator exactly b
// and |a| <= A, where b is forced prime-by-prime and A comes from the
// archimedean window.
inline CandidateBox candidate_box_Q(unsigned d, const Rat& c, const FactorEffort& effort = {}) {
  CandidateBox box;
  Int cd = den(c);
  if (cd != 1) {
    for (const auto& [p, e] : factor_integer(cd, effort).factors) {
      if (e % d != 0) {
        box.empty_reason = "denominator valuation obstruction: v_" + p.str() + "(c) = -" +
                           std::to_string(e) + " not divisible by d";
        return box;
      }
      box.b *= int_pow(p, e / d);
    }
  }
  RhoD rho = rho_d(d, 1e-12);
  // A = ceil(b * rho_d * max(|c|,1)^(1/d)) with upper rounding
  Rat ac = c < 0 ? Rat(-c) : c;
  if (ac < 1) ac = 1;
  double root = std::exp((log_int(num(ac)) - log_int(den(ac))) / d);
  double Ad = to_double(box.b) * rho.hi * root * (1 + 1e-9);
  box.A = Int(static_cast<long long>(std::ceil(Ad))) + 1;
  return box;
}

struct PreperSet {
  std::vector<FieldElement> points;  // sorted by canonical encoding
  enum class Completeness { Complete, HeightZeroOnly, StructuralOnly } completeness;
  CandidateBox box;
  bool non_unique_source = false;  // classify_function_field / solve_fixed_source flag
};

inline void sort_points(std::vector<FieldElement>& pts) {
  std::sort(pts.begin(), pts.end(),
            [](const FieldElement& a, const FieldElement& b) { return a.str() < b.str(); });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const FieldElement& a, const FieldElement& b) { return a == b; }),
            pts.end());
}

inline PreperSet enumerate_preperiodic_Q(unsigned d, const Rat& c, const FactorEffort& effort = {}) {
  PreperSet out;
  out.completeness = PreperSet::Completeness::Complete;
  out.box = candidate_box_Q(d, c, effort);
  if (out.box.empty()) return out;
  UnicriticalMap phi(d, FieldElement(c), FieldContext::Q());
  for (Int a = -out.box.A; a <= out.box.A; ++a) {
    if (boost::multiprecision::gcd(iabs(a), out.box.b) != 1 && out.box.b != 1) continue;
    Rat cand(a, out.box.b);
    // candidates stay inside the box under iteration, so a modest step cap suffices
    if (orbit(phi, FieldElement(cand), 10000).preperiodic())
      out.points.push_back(FieldElement(cand));
  }
  sort_points(out.points);
  return out;
}

// ---- fixed-source solving: y - y^d = c --------------------------------------

struct FixedSource {
  std::optional<FieldElement> y;
  bool unique = true;
  std::vector<FieldElement> all;  // every solution found
};

namespace detail_fs {

// all rational solutions of y - y^d = c
inline std::vector<Rat> solve_Q(unsigned d, const Rat& c, const FactorEffort& effort) {
  // roots of Y^d - Y + c
  std::vector<Rat> coeffs(d + 1, Rat(0));
  coeffs[0] = c;
  coeffs[1] = -1;
  coeffs[d] = 1;
  return rational_roots(QPoly(std::move(coeffs)), effort);
}

// all polynomial solutions z of z^d - E z + P = 0 over Q[t], via a linear
// bottom-up coefficient recursion from each nondegenerate base root
inline std::vector<QPoly> solve_poly_equation(unsigned d, const QPoly& E, const QPoly& P,
                                              const FactorEffort& effort) {
  long degE = E.degree();
  long degP = P.degree();
  // candidate degrees for z: balance z^d against E z or against P
  std::set<long> degs;
  if (degP >= 0 && degP % d == 0) degs.insert(degP / d);
  if (degE >= 0 && d >= 2) degs.insert(degE / static_cast<long>(d - 1) +
                                       (degE % static_cast<long>(d - 1) ? 1 : 0));
  degs.insert(0);
  long D = degs.empty() ? 0 : *degs.rbegin();

  std::vector<QPoly> found;
  for (long shift = 0; shift < 8; ++shift) {
    Rat a(shift);
    QPoly Es = E.shifted(a), Ps = P.shifted(a);
    // base equation at t = 0 (after shift): z0^d - Es(0) z0 + Ps(0) = 0
    std::vector<Rat> base(d + 1, Rat(0));
    base[0] = Ps.coeff(0);
    base[1] = -Es.coeff(0);
    base[d] = base[d] + 1;
    QPoly basepoly(std::move(base));
    std::vector<Rat> roots;
    try {
      roots = rational_roots(basepoly, effort);
    } catch (const FactorizationTimeout&) {
      continue;  // unlucky shift made the constant term huge-and-hard; try next
    }
    QPoly basederiv = basepoly.derivative();
    bool degenerate = false;
    for (const Rat& z0 : roots)
      if (basederiv.eval(z0) == 0) degenerate = true;
    if (degenerate) continue;  // need the recursion unit to be invertible
    for (const Rat& z0 : roots) {
      std::vector<Rat> z(D + 1, Rat(0));
      z[0] = z0;
      Rat unit = basederiv.eval(z0);  // d z0^(d-1) - Es(0)
      QPoly acc(std::vector<Rat>{z0});
      for (long k = 1; k <= D; ++k) {
        // residual coefficient of t^k with z_k still zero
        QPoly G = acc.pow(d) - Es * acc + Ps;
        Rat diff = -G.coeff(k) / unit;
        z[k] = diff;
        acc = QPoly(std::vector<Rat>(z.begin(), z.begin() + k + 1));
      }
      QPoly G = acc.pow(d) - Es * acc + Ps;
      if (G.is_zero()) {
        // un-shift
        QPoly sol = acc.shifted(Rat(-shift));
        found.push_back(sol);
      }
    }
    if (!found.empty() || !degenerate) break;
  }
  std::sort(found.begin(), found.end(), poly_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

// all Q(t)-rational solutions of y - y^d = c
inline std::vector<RationalFunction> solve_Qt(unsigned d, const RationalFunction& c,
                                              const FactorEffort& effort) {
  // pole analysis: den(y)^d must account exactly for den(c)
  QPoly e(Rat(1));
  if (c.den_.degree() > 0) {
    for (const auto& [pi, mult] : factor_polynomial_Q(c.den_).factors) {
      if (mult % d != 0) return {};
      e = e * pi.pow(mult / d);
    }
  }
  // y = z/e: z^d - e^(d-1) z + num(c) * (e^d / den(c)) = 0
  QPoly ed = e.pow(d);
  QPoly scale = ed / c.den_;  // exact by construction
  QPoly P = c.num_ * scale;
  QPoly E = e.pow(d - 1);
  std::vector<RationalFunction> out;
  for (const auto& z : solve_poly_equation(d, E, P, effort)) out.emplace_back(z, e);
  return out;
}

}  // namespace detail_fs

// Solve y - y^d = c for y in K. Over cyclotomic fields the search is
// hint-driven: {0} union mu_K union q*mu_K for caller-provided rationals q.
inline FixedSource solve_fixed_source(unsigned d, const FieldElement& c, const FieldContext& ctx,
                                      const std::vector<Rat>& cyclotomic_hints = {},
                                      const FactorEffort& effort = {}) {
  FixedSource fs;
  std::vector<FieldElement> sols;
  switch (ctx.kind) {
    case FieldKind::Rationals: {
      for (const Rat& y : detail_fs::solve_Q(d, c.rat(), effort)) sols.push_back(FieldElement(y));
      break;
    }
    case FieldKind::FunctionField: {
      for (const auto& y : detail_fs::solve_Qt(d, c.rf(), effort)) sols.push_back(FieldElement(y));
      break;
    }
    case FieldKind::Cyclotomic: {
      std::vector<FieldElement> cands{FieldElement::zero(ctx)};
      for (const auto& z : all_roots_of_unity(ctx)) {
        cands.push_back(z);
        for (const Rat& q : cyclotomic_hints) cands.push_back(z * FieldElement::from_rational(ctx, q));
      }
      for (const auto& y : cands) {
        if (y - y.pow(d) == c) sols.push_back(y);
      }
      break;
    }
  }
  sort_points(sols);
  fs.all = sols;
  if (!sols.empty()) {
    fs.y = sols.front();
    fs.unique = sols.size() == 1;
  }
  if (!c.is_zero() || ctx.kind == FieldKind::Cyclotomic) return fs;
  // c = 0: y = 0 always works alongside roots of unity; flag non-uniqueness
  fs.y = FieldElement::zero(ctx);
  fs.unique = false;
  return fs;
}

inline PreperSet classify_function_field(unsigned d, const RationalFunction& c,
                                         const FactorEffort& effort = {}) {
  if (c.is_constant()) throw ConstantC();
  PreperSet out;
  out.completeness = d > 8 ? PreperSet::Completeness::Complete
                           : PreperSet::Completeness::StructuralOnly;
  FieldContext ctx = FieldContext::Qt();
  FixedSource fs = solve_fixed_source(d, FieldElement(c), ctx, {}, effort);
  if (!fs.y) return out;
  out.non_unique_source = !fs.unique;
  for (const auto& zeta : roots_of_unity_subgroup(ctx, d)) out.points.push_back(zeta * *fs.y);
  sort_points(out.points);
  return out;
}

// height-zero sweep over {0} union mu_K (cyclotomic)
inline PreperSet enumerate_height_zero(unsigned d, const CyclotomicElement& c) {
  FieldContext ctx = FieldContext::Qzeta(c.n);
  UnicriticalMap phi(d, FieldElement(c), ctx);
  PreperSet out;
  out.completeness = PreperSet::Completeness::HeightZeroOnly;
  std::vector<FieldElement> cands{FieldElement::zero(ctx)};
  for (const auto& z : all_roots_of_unity(ctx)) cands.push_back(z);
  for (const auto& a : cands) {
    if (orbit(phi, a, 4096).preperiodic()) out.points.push_back(a);
  }
  sort_points(out.points);
  return out;
}

}  // namespace unidyn
