#pragma once

#include <deque>
#include <map>

#include "preper.hpp"

namespace unidyn {

// ---- unit-power witnesses ---------------------------------------------------

struct UnitPowerWitness {
  FieldElement r;  // in {+1, -1, +4, -4} times a root of unity of K
  unsigned m = 2;
  FieldElement y;  // witnessed value equals r * y^m
};

namespace detail_irr {

inline std::vector<unsigned> divisors_ge2(unsigned d) {
  std::vector<unsigned> out;
  for (unsigned m = 2; m <= d; ++m)
    if (d % m == 0) out.push_back(m);
  return out;
}

// exponents worth testing when m is unconstrained: any m-th power with m past
// this bound forces |y| = 1, which the small exponents already cover
inline unsigned power_exponent_bound(const FieldElement& x) {
  switch (x.kind) {
    case FieldKind::Rationals: {
      const Rat& q = x.rat();
      Int a = std::max(iabs(num(q)), den(q));
      unsigned bits = a > 1 ? static_cast<unsigned>(boost::multiprecision::msb(a)) + 1 : 1;
      return std::max(2u, bits + 2);
    }
    case FieldKind::FunctionField:
      return std::max<unsigned>(2, static_cast<unsigned>(x.rf().height_deg()) + 2);
    case FieldKind::Cyclotomic: {
      FieldContext ctx = FieldContext::Qzeta(x.cyc().n);
      if (auto dec = as_rational_times_rou(x, ctx)) {
        Int a = std::max(iabs(num(dec->first)), den(dec->first));
        unsigned bits = a > 1 ? static_cast<unsigned>(boost::multiprecision::msb(a)) + 1 : 1;
        return std::max(2u, bits + 2) + static_cast<unsigned>(rou_group_order(x.cyc().n));
      }
      return 24;
    }
  }
  return 2;
}

inline std::vector<unsigned> exponent_range(const FieldElement& x) {
  std::vector<unsigned> out;
  for (unsigned m = 2; m <= power_exponent_bound(x); ++m) out.push_back(m);
  return out;
}

}  // namespace detail_irr

// Search for x = r * y^m with r in {+1,-1,+4,-4} * mu_K and m from the given
// list. First witness in deterministic order, or absent.
inline std::optional<UnitPowerWitness> detect_unit_power(const FieldElement& x,
                                                         const std::vector<unsigned>& exponents,
                                                         const FieldContext& ctx) {
  if (x.is_zero()) throw ZeroInput();
  std::vector<FieldElement> units;
  for (const Rat& q : {Rat(1), Rat(-1), Rat(4), Rat(-4)}) {
    for (const auto& z : all_roots_of_unity(ctx)) {
      FieldElement r = FieldElement::from_rational(ctx, q) * z;
      bool seen = false;
      for (const auto& u : units) seen = seen || u == r;
      if (!seen) units.push_back(r);
    }
  }
  for (unsigned m : exponents) {
    if (m < 2) continue;
    for (const auto& r : units) {
      if (auto y = nth_root_exact(x / r, m, ctx)) return UnitPowerWitness{r, m, *y};
    }
  }
  return std::nullopt;
}

// Capelli: x^d - a is reducible over K iff a = z^p for some prime p | d, or
// 4 | d and a = -4 z^4.
inline bool binomial_irreducible(unsigned d, const FieldElement& a, const FieldContext& ctx) {
  if (a.is_zero()) throw ZeroInput();
  for (unsigned p = 2; p <= d; ++p) {
    if (d % p != 0) continue;
    bool prime = true;
    for (unsigned q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    if (nth_root_exact(a, p, ctx)) return false;
  }
  if (d % 4 == 0) {
    FieldElement minus4 = FieldElement::from_rational(ctx, Rat(-4));
    if (nth_root_exact(a / minus4, 4, ctx)) return false;
  }
  return true;
}

// ---- words over a generating set --------------------------------------------

struct GeneratingSet {
  std::vector<UnicriticalMap> maps;
  FieldContext context;

  explicit GeneratingSet(std::vector<UnicriticalMap> ms)
      : maps(std::move(ms)), context(maps.at(0).context) {
    for (const auto& m : maps)
      if (!(m.context == context)) throw MixedFields();
  }
};

using Word = std::vector<int>;  // indices into the set, outermost first

inline Int word_degree(const GeneratingSet& S, const Word& w) {
  Int d = 1;
  for (int i : w) d *= S.maps.at(i).d;
  return d;
}

// value of the word at a point (apply innermost map first)
inline FieldElement word_evaluate(const GeneratingSet& S, const Word& w, const FieldElement& x) {
  FieldElement v = x;
  for (auto it = w.rbegin(); it != w.rend(); ++it) v = evaluate(S.maps.at(*it), v);
  return v;
}

// fully expanded polynomial over Q (rational maps only)
inline QPoly word_polynomial(const GeneratingSet& S, const Word& w) {
  if (S.context.kind != FieldKind::Rationals)
    throw UnsupportedDomain("word expansion implemented over Q");
  QPoly P = QPoly::x();
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const auto& phi = S.maps.at(*it);
    P = P.pow(phi.d) + QPoly(phi.c.rat());
  }
  return P;
}

// ---- composition certification ----------------------------------------------

enum class WordVerdict { Irreducible, Reducible, Inconclusive };

struct WordReport {
  WordVerdict verdict;
  std::string method;
  std::optional<UnitPowerWitness> witness;  // set when a power witness blocked certification
};

// One step: g irreducible and g(f(0)) not of the form r y^m (m | deg f, m >= 2)
// certifies g o f irreducible. A witness never certifies reducibility.
enum class CompositionVerdict { CertifiedIrreducible, Witness, GNotIrreducible };

struct CompositionReport {
  CompositionVerdict verdict;
  std::optional<UnitPowerWitness> witness;
};

inline CompositionReport composition_check(bool g_irreducible, const FieldElement& g_at_f0,
                                           unsigned deg_f, const FieldContext& ctx) {
  if (!g_irreducible) return {CompositionVerdict::GNotIrreducible, std::nullopt};
  auto w = detect_unit_power(g_at_f0, detail_irr::divisors_ge2(deg_f), ctx);
  if (w) return {CompositionVerdict::Witness, w};
  return {CompositionVerdict::CertifiedIrreducible, std::nullopt};
}

inline WordReport certify_word(const GeneratingSet& S, const Word& w,
                               std::map<Word, WordReport>* memo = nullptr) {
  if (w.empty()) throw Error("empty word");
  if (memo) {
    auto it = memo->find(w);
    if (it != memo->end()) return it->second;
  }
  WordReport rep;
  const auto& inner = S.maps.at(w.back());
  if (w.size() == 1) {
    bool irred = binomial_irreducible(inner.d, -inner.c, S.context);
    rep.verdict = irred ? WordVerdict::Irreducible : WordVerdict::Reducible;
    rep.method = "binomial criterion";
  } else {
    Word prefix(w.begin(), w.end() - 1);
    WordReport pre = certify_word(S, prefix, memo);
    if (pre.verdict == WordVerdict::Reducible) {
      // a reducible outer factor g = A*B splits g o f = (A o f)(B o f)
      rep.verdict = WordVerdict::Reducible;
      rep.method = "reducible outer factor";
    } else if (pre.verdict == WordVerdict::Inconclusive) {
      rep.verdict = WordVerdict::Inconclusive;
      rep.method = "prefix inconclusive";
      rep.witness = pre.witness;
    } else {
      FieldElement value = word_evaluate(S, prefix, evaluate(inner, FieldElement::zero(S.context)));
      CompositionReport cr = composition_check(true, value, inner.d, S.context);
      if (cr.verdict == CompositionVerdict::CertifiedIrreducible) {
        rep.verdict = WordVerdict::Irreducible;
        rep.method = "composition criterion";
      } else {
        rep.verdict = WordVerdict::Inconclusive;
        rep.method = "unit-power witness at the inner composition";
        rep.witness = cr.witness;
      }
    }
  }
  if (memo) (*memo)[w] = rep;
  return rep;
}

// ---- stability --------------------------------------------------------------

struct StabilityResult {
  enum class Kind { BaseReducible, PowerAtIterate, StableUpTo, StableInfinity } kind;
  long n = 0;                   // PowerAtIterate: blocking level; StableUpTo: N
  long certified_iterates = 0;  // phi^k irreducible for k <= this
  std::optional<UnitPowerWitness> witness;
};

inline StabilityResult stability_certificate(const UnicriticalMap& phi, unsigned N) {
  if (N < 1) throw Error("N must be >= 1");
  StabilityResult res{};
  if (!binomial_irreducible(phi.d, -phi.c, phi.context)) {
    res.kind = StabilityResult::Kind::BaseReducible;
    return res;
  }
  const auto& cst = phi.context.constants;
  if (phi.context.kind == FieldKind::FunctionField && phi.d >= cst.D4 &&
      height(phi.c).value() > cst.C4) {
    // irreducible iff stable above the thresholds
    res.kind = StabilityResult::Kind::StableInfinity;
    res.certified_iterates = -1;
    return res;
  }
  auto divisors = detail_irr::divisors_ge2(phi.d);
  FieldElement v = evaluate(phi, FieldElement::zero(phi.context));  // phi(0)
  for (long n = 2; n <= static_cast<long>(N) + 1; ++n) {
    v = evaluate(phi, v);  // phi^n(0) = (phi^{n-1})(f(0)) with f = phi
    auto w = detect_unit_power(v, divisors, phi.context);
    if (w) {
      res.kind = StabilityResult::Kind::PowerAtIterate;
      res.n = n;
      res.certified_iterates = n - 1;
      res.witness = w;
      return res;
    }
  }
  res.kind = StabilityResult::Kind::StableUpTo;
  res.n = N;
  res.certified_iterates = N + 1;
  return res;
}

// ---- powered fixed points ---------------------------------------------------

struct FixedPointInfo {
  FieldElement P;
  std::optional<UnitPowerWitness> witness;  // present iff powered

  bool powered() const { return witness.has_value(); }
};

inline std::vector<FixedPointInfo> powered_fixed_points(const UnicriticalMap& phi,
                                                        const std::vector<Rat>& cyclotomic_hints = {},
                                                        const FactorEffort& effort = {}) {
  // fixed points solve y - y^d = c, the fixed-source equation
  FixedSource fs = solve_fixed_source(phi.d, phi.c, phi.context, cyclotomic_hints, effort);
  std::vector<FixedPointInfo> out;
  for (const auto& P : fs.all) {
    FixedPointInfo info{P, std::nullopt};
    if (!P.is_zero())
      info.witness = detect_unit_power(P, detail_irr::exponent_range(P), phi.context);
    out.push_back(std::move(info));
  }
  return out;
}

inline bool ratio_is_root_of_unity(const FieldElement& P1, const FieldElement& P2) {
  return is_root_of_unity(P1 / P2).has_value();
}

// ---- semigroup counting -----------------------------------------------------

struct GrowthExponent {
  double lo = 0, hi = 0;
  bool degenerate = false;  // single-generator set

  double value() const { return (lo + hi) / 2; }
};

inline GrowthExponent semigroup_growth_exponent(const std::vector<unsigned>& degrees) {
  for (unsigned d : degrees)
    if (d < 2) throw Error("degrees must be >= 2");
  if (degrees.size() < 2) return {0, 0, true};
  bool equal = true;
  for (unsigned d : degrees) equal = equal && d == degrees.front();
  if (equal) {
    double rho = std::log(static_cast<double>(degrees.size())) / std::log(degrees.front());
    return {rho - 1e-12, rho + 1e-12, false};
  }
  auto F = [&](double rho) {
    double s = 0;
    for (unsigned d : degrees) s += std::pow(static_cast<double>(d), -rho);
    return s - 1.0;  // strictly decreasing in rho
  };
  double lo = 0, hi = 1;
  while (F(hi) > 0) hi *= 2;
  while (hi - lo > 1e-10) {
    double mid = (lo + hi) / 2;
    if (F(mid) > 0)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi, false};
}

// all words of degree <= B, breadth-first by length, lexicographic within
inline std::vector<Word> enumerate_words(const GeneratingSet& S, const Int& B) {
  std::vector<Word> out;
  std::deque<std::pair<Word, Int>> queue;
  for (int i = 0; i < static_cast<int>(S.maps.size()); ++i) {
    Int d = S.maps[i].d;
    if (d <= B) queue.emplace_back(Word{i}, d);
  }
  while (!queue.empty()) {
    auto [w, deg] = queue.front();
    queue.pop_front();
    out.push_back(w);
    for (int i = 0; i < static_cast<int>(S.maps.size()); ++i) {
      Int nd = deg * S.maps[i].d;
      if (nd <= B) {
        Word nw = w;
        nw.push_back(i);
        queue.emplace_back(std::move(nw), nd);
      }
    }
  }
  return out;
}

enum class ProportionMethod { CertifyOnly, FactorFallback };

struct ProportionReport {
  long certified_irreducible = 0;
  long certified_reducible = 0;
  long inconclusive = 0;
  long total = 0;
};

inline ProportionReport irreducible_proportion(const GeneratingSet& S, const Int& B,
                                               ProportionMethod method = ProportionMethod::CertifyOnly,
                                               const FactorEffort& effort = {}) {
  ProportionReport rep;
  std::map<Word, WordReport> memo;
  for (const auto& w : enumerate_words(S, B)) {
    ++rep.total;
    WordReport r = certify_word(S, w, &memo);
    if (r.verdict == WordVerdict::Inconclusive && method == ProportionMethod::FactorFallback &&
        S.context.kind == FieldKind::Rationals && word_degree(S, w) <= 1024) {
      bool irred = poly_irreducible_Q(word_polynomial(S, w));
      r.verdict = irred ? WordVerdict::Irreducible : WordVerdict::Reducible;
    }
    switch (r.verdict) {
      case WordVerdict::Irreducible: ++rep.certified_irreducible; break;
      case WordVerdict::Reducible: ++rep.certified_reducible; break;
      case WordVerdict::Inconclusive: ++rep.inconclusive; break;
    }
  }
  return rep;
}

// ---- guard prefixes ---------------------------------------------------------

struct GuardResult {
  std::optional<Word> guard;
  std::string rationale;
  bool exceptional_family = false;
  std::string shape_report;
};

inline GuardResult guard_prefix(const GeneratingSet& S, unsigned N_power,
                                const std::vector<Rat>& cyclotomic_hints = {},
                                const FactorEffort& effort = {}) {
  const auto& cst = S.context.constants;
  if (S.context.kind == FieldKind::FunctionField) {
    for (const auto& phi : S.maps) {
      if (phi.d < cst.D3 || height(phi.c).value() <= cst.C3) throw ThresholdsNotMet();
    }
  } else if (!cst.configured) {
    throw ThresholdsNotMet();
  }

  std::vector<bool> irred(S.maps.size());
  std::vector<std::vector<FixedPointInfo>> fps(S.maps.size());
  for (std::size_t i = 0; i < S.maps.size(); ++i) {
    irred[i] = binomial_irreducible(S.maps[i].d, -S.maps[i].c, S.context);
    fps[i] = powered_fixed_points(S.maps[i], cyclotomic_hints, effort);
  }
  auto powered_of = [&](std::size_t i) -> std::optional<FieldElement> {
    for (const auto& f : fps[i])
      if (f.powered()) return f.P;
    return std::nullopt;
  };

  GuardResult out;
  // branch 1: an irreducible map with no powered fixed point guards by itself
  for (std::size_t i = 0; i < S.maps.size(); ++i) {
    if (!irred[i] || powered_of(i)) continue;
    out.guard = Word(N_power, static_cast<int>(i));
    out.rationale = "irreducible generator " + S.maps[i].str() +
                    " has no powered fixed point; its " + std::to_string(N_power) +
                    "-th iterate guards the semigroup";
    return out;
  }
  // branch 2: two irreducibles with powered fixed points whose ratio is not a
  // root of unity (strengthened intersection test)
  for (std::size_t i = 0; i < S.maps.size(); ++i) {
    auto Pi = irred[i] ? powered_of(i) : std::nullopt;
    if (!Pi) continue;
    for (std::size_t j = 0; j < S.maps.size(); ++j) {
      if (j == i || !irred[j]) continue;
      auto Pj = powered_of(j);
      if (!Pj || Pj->is_zero()) continue;
      if (!ratio_is_root_of_unity(*Pi, *Pj)) {
        Word w(N_power, static_cast<int>(i));
        w.push_back(static_cast<int>(j));
        out.guard = w;
        out.rationale = "powered fixed points " + Pi->str() + " and " + Pj->str() +
                        " have non-root-of-unity ratio";
        return out;
      }
    }
  }
  // branch 3: an irreducible-with-powered-fixed-point and a reducible partner
  // with P / c_2 not a root of unity
  for (std::size_t i = 0; i < S.maps.size(); ++i) {
    auto Pi = irred[i] ? powered_of(i) : std::nullopt;
    if (!Pi) continue;
    for (std::size_t j = 0; j < S.maps.size(); ++j) {
      if (j == i || irred[j] || S.maps[j].c.is_zero()) continue;
      if (!ratio_is_root_of_unity(*Pi, S.maps[j].c)) {
        Word w(N_power, static_cast<int>(i));
        for (unsigned k = 0; k < N_power; ++k) w.push_back(static_cast<int>(j));
        out.guard = w;
        out.rationale = "powered fixed point " + Pi->str() + " and reducible partner with c = " +
                        S.maps[j].c.str() + " have non-root-of-unity ratio";
        return out;
      }
    }
  }
  // remaining shape: every irreducible generator has a powered fixed point and
  // all such fixed points agree up to roots of unity (the exceptional family)
  out.exceptional_family = true;
  std::ostringstream os;
  os << "no guard found; generators match the exceptional one-parameter shape:";
  for (std::size_t i = 0; i < S.maps.size(); ++i) {
    os << " [" << S.maps[i].str() << (irred[i] ? " irreducible" : " reducible");
    if (auto P = powered_of(i)) os << ", powered fixed point " << P->str();
    os << "]";
  }
  out.shape_report = os.str();
  return out;
}

}  // namespace unidyn
