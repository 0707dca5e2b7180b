#pragma once

#include <unordered_map>

#include "heights.hpp"

namespace unidyn {

struct UnicriticalMap {
  unsigned d;
  FieldElement c;
  FieldContext context;

  UnicriticalMap(unsigned degree, FieldElement cc, FieldContext ctx)
      : d(degree), c(std::move(cc)), context(std::move(ctx)) {
    if (d < 2) throw Error("degree must be >= 2");
  }

  std::string str() const { return "x^" + std::to_string(d) + " + (" + c.str() + ")"; }
};

inline FieldElement evaluate(const UnicriticalMap& phi, const FieldElement& alpha) {
  if (alpha.kind != phi.c.kind) throw MixedFields();
  return alpha.pow(phi.d) + phi.c;
}

struct OrbitResult {
  enum class Kind { Preperiodic, Escaping } kind;
  long tail = 0;    // Preperiodic: minimal m with phi^(m+n)(a) = phi^m(a)
  long period = 0;  // Preperiodic: minimal n
  long escape_index = -1;  // Escaping: first index whose height exceeds the window
  std::vector<FieldElement> orbit;

  bool preperiodic() const { return kind == Kind::Preperiodic; }
};

// Escape window: no preperiodic point has height above (1/d) h(c) + log rho_d
// (number field; exact equality d*h = h(c) over the function field).
inline OrbitResult orbit(const UnicriticalMap& phi, const FieldElement& alpha,
                         long max_steps = 1000000) {
  OrbitResult res;
  res.orbit.push_back(alpha);
  std::unordered_map<std::string, long> seen;
  seen[alpha.str()] = 0;

  const bool ff = phi.context.kind == FieldKind::FunctionField;
  double window_hi = 0;
  Int hc_ff = 0;
  if (ff) {
    hc_ff = height(phi.c).exact;
  } else {
    RhoD rho = rho_d(phi.d, 1e-12);
    window_hi = height(phi.c).hi / phi.d + std::log(rho.hi) + 1e-9;
  }

  FieldElement cur = alpha;
  for (long step = 0; step <= max_steps; ++step) {
    // escape certificate check
    if (ff) {
      HeightValue h = height(cur);
      if (h.exact * phi.d != hc_ff) {
        res.kind = OrbitResult::Kind::Escaping;
        res.escape_index = step;
        return res;
      }
    } else {
      HeightValue h = height(cur, 1e-6);
      if (h.lo > window_hi) {
        res.kind = OrbitResult::Kind::Escaping;
        res.escape_index = step;
        return res;
      }
    }
    if (step == max_steps) break;
    cur = evaluate(phi, cur);
    auto key = cur.str();
    auto it = seen.find(key);
    if (it != seen.end()) {
      res.kind = OrbitResult::Kind::Preperiodic;
      res.tail = it->second;
      res.period = static_cast<long>(res.orbit.size()) - it->second;
      return res;
    }
    seen[key] = static_cast<long>(res.orbit.size());
    res.orbit.push_back(cur);
  }
  throw StepBudgetExhausted();
}

inline bool is_preperiodic(const UnicriticalMap& phi, const FieldElement& alpha,
                           long max_steps = 1000000) {
  return orbit(phi, alpha, max_steps).preperiodic();
}

// Canonical height enclosure: h(phi^n(alpha))/d^n +/- (h(c)+log2)/((d-1) d^n)
struct CanonicalHeight {
  double lo, hi;
  double value() const { return (lo + hi) / 2; }
};

inline CanonicalHeight canonical_height(const UnicriticalMap& phi, const FieldElement& alpha,
                                        unsigned iters) {
  FieldElement cur = alpha;
  for (unsigned i = 0; i < iters; ++i) cur = evaluate(phi, cur);
  double dn = std::pow(static_cast<double>(phi.d), static_cast<double>(iters));
  HeightValue h = height(cur);
  double center_lo = h.lo / dn, center_hi = h.hi / dn;
  double E = (height(phi.c).hi + std::log(2.0)) / ((phi.d - 1) * dn);
  double lo = center_lo - E;
  if (lo < 0) lo = 0;
  return {lo, center_hi + E};
}

// |h(f(P))/deg f - h(P)| against the composition-height bound
struct HeightRatioReport {
  double defect;
  double bound;
  bool within;  // must always hold
};

inline HeightRatioReport height_ratio_defect(const std::vector<UnicriticalMap>& word,
                                             const FieldElement& P) {
  if (word.empty()) throw Error("empty word");
  FieldElement val = P;
  double degf = 1;
  double max_hc = 0;
  unsigned min_d = word.front().d;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {  // innermost first
    val = evaluate(*it, val);
    degf *= it->d;
    max_hc = std::max(max_hc, height(it->c).hi);
    min_d = std::min(min_d, it->d);
  }
  HeightRatioReport r{};
  r.defect = std::abs(height(val).value() / degf - height(P).value());
  r.bound = (max_hc + std::log(2.0)) / (min_d - 1);
  r.within = r.defect <= r.bound + 1e-9;
  return r;
}

}  // namespace unidyn
