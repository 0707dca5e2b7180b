#pragma once

#include <array>
#include <random>
#include <thread>

#include "irreducibility.hpp"

namespace unidyn {

// ---- sequence prefixes ------------------------------------------------------

struct SequencePrefix {
  std::vector<UnicriticalMap> maps;  // theta_1 ... theta_n, outermost first
  std::vector<FieldElement> crit;    // gamma_m(0) for m = 1..n
};

inline std::vector<FieldElement> critical_values(const std::vector<UnicriticalMap>& maps) {
  std::vector<FieldElement> out;
  for (std::size_t m = 1; m <= maps.size(); ++m) {
    FieldElement v = FieldElement::zero(maps.front().context);
    for (std::size_t i = m; i-- > 0;) v = evaluate(maps[i], v);
    out.push_back(v);
  }
  return out;
}

inline SequencePrefix make_sequence(std::vector<UnicriticalMap> maps) {
  if (maps.empty()) throw Error("empty sequence");
  SequencePrefix s;
  s.crit = critical_values(maps);
  s.maps = std::move(maps);
  return s;
}

// ---- good primitive prime divisors ------------------------------------------

enum class PrimitiveMode { GcdCoprime, ValuationOne };

struct GoodPrimeReport {
  Place place;
  long valuation_n = 0;
  std::array<bool, 4> conditions{};  // the four certificate conditions

  bool good() const { return conditions[0] && conditions[1] && conditions[2] && conditions[3]; }
};

namespace detail_galois {

inline std::vector<Place> candidate_places(const FieldElement& value, const FactorEffort& effort) {
  std::vector<Place> out;
  switch (value.kind) {
    case FieldKind::Rationals: {
      Int n = iabs(num(value.rat()));
      if (n <= 1) return out;
      for (const auto& [p, e] : factor_integer(n, effort).factors)
        out.push_back(Place::finite_prime(p));
      return out;
    }
    case FieldKind::FunctionField: {
      const QPoly& n = value.rf().num_;
      if (n.degree() < 1) return out;
      for (const auto& [pi, e] : factor_polynomial_Q(n).factors)
        out.push_back(Place::finite_poly(pi));
      return out;
    }
    case FieldKind::Cyclotomic:
      throw UnsupportedDomain("prime search over Q(zeta_n) is out of scope");
  }
  return out;
}

}  // namespace detail_galois

// Places satisfying, at level n:
//   (1) every degree d_r is a unit,
//   (2) every c_r is integral,
//   (3) v(gamma_n(0)) > 0 with gcd(v, d) = 1 (GcdCoprime) or v = 1 (ValuationOne),
//   (4) v(gamma_m(0)) = 0 for all m < n.
inline std::vector<GoodPrimeReport> good_primitive_primes(const SequencePrefix& gamma, std::size_t n,
                                                          PrimitiveMode mode,
                                                          const FactorEffort& effort = {}) {
  if (n < 1 || n > gamma.maps.size()) throw Error("level n out of range");
  const FieldElement& value = gamma.crit[n - 1];
  if (value.is_zero()) throw ZeroInput();
  unsigned d = gamma.maps.front().d;
  std::vector<GoodPrimeReport> out;
  for (const Place& pl : detail_galois::candidate_places(value, effort)) {
    GoodPrimeReport rep{pl, 0, {}};
    FieldContext ctx = gamma.maps.front().context;
    rep.conditions[0] = true;
    rep.conditions[1] = true;
    for (const auto& theta : gamma.maps) {
      FieldElement deg = FieldElement::from_rational(ctx, Rat(theta.d));
      if (valuation(deg, pl) != 0) rep.conditions[0] = false;
      if (!theta.c.is_zero() && valuation(theta.c, pl) < 0) rep.conditions[1] = false;
    }
    rep.valuation_n = valuation(value, pl);
    long v = rep.valuation_n;
    rep.conditions[2] =
        v > 0 && (mode == PrimitiveMode::ValuationOne
                      ? v == 1
                      : boost::multiprecision::gcd(Int(v), Int(d)) == 1);
    rep.conditions[3] = true;
    for (std::size_t m = 1; m < n; ++m) {
      if (gamma.crit[m - 1].is_zero() || valuation(gamma.crit[m - 1], pl) != 0)
        rep.conditions[3] = false;
    }
    if (rep.good()) out.push_back(rep);
  }
  return out;
}

// ---- maximality certificates ------------------------------------------------

inline bool contains_primitive_dth_root(const FieldContext& ctx, unsigned d) {
  if (d <= 2) return true;
  if (ctx.kind == FieldKind::Cyclotomic) return rou_group_order(ctx.n) % d == 0;
  return false;
}

struct MaximalityCertificate {
  std::size_t n;
  Place prime;
  std::array<bool, 4> conditions;
  std::string irreducibility_evidence;
};

// Sufficient-condition certificate for a maximal subextension at level n;
// absence is never a disproof.
inline std::optional<MaximalityCertificate> maximality_certificate(const SequencePrefix& gamma,
                                                                   std::size_t n,
                                                                   const FactorEffort& effort = {}) {
  if (n < 1 || n > gamma.maps.size()) throw Error("level n out of range");
  unsigned d = gamma.maps.front().d;
  for (const auto& theta : gamma.maps)
    if (theta.d != d) throw DegreeMismatch();
  if (!contains_primitive_dth_root(gamma.maps.front().context, d)) return std::nullopt;

  // certify gamma_n irreducible through the composition machinery
  std::vector<UnicriticalMap> prefix(gamma.maps.begin(), gamma.maps.begin() + n);
  GeneratingSet S(prefix);
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<int>(i);
  WordReport rep = certify_word(S, w);
  if (rep.verdict != WordVerdict::Irreducible) return std::nullopt;

  auto primes = good_primitive_primes(gamma, n, PrimitiveMode::GcdCoprime, effort);
  if (primes.empty()) return std::nullopt;
  return MaximalityCertificate{n, primes.front().place, primes.front().conditions, rep.method};
}

// ---- Newton polygons --------------------------------------------------------

struct NewtonPolygon {
  Place place;
  std::vector<std::pair<long, long>> vertices;  // lower hull of (i, v(a_i))
  std::vector<std::pair<Rat, long>> slopes;     // (slope, horizontal length)
};

inline NewtonPolygon newton_polygon(const QPoly& f, const Place& place) {
  if (f.is_zero()) throw ZeroInput();
  std::vector<std::pair<long, long>> pts;
  for (long i = 0; i <= f.degree(); ++i) {
    Rat a = f.coeff(i);
    if (a == 0) continue;
    long v;
    if (place.kind == Place::Kind::FinitePrime)
      v = valuation_rat(a, place.p);
    else
      throw UnsupportedDomain("newton_polygon expects a finite rational prime");
    pts.emplace_back(i, v);
  }
  // lower convex hull, left to right (points already sorted by i)
  std::vector<std::pair<long, long>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull[hull.size() - 1];
      // keep (x2, y2) only if it lies strictly below segment (x1,y1)-(p)
      if (Int(y2 - y1) * Int(p.first - x1) < Int(p.second - y1) * Int(x2 - x1)) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  NewtonPolygon np{place, hull, {}};
  for (std::size_t i = 1; i < hull.size(); ++i) {
    long dx = hull[i].first - hull[i - 1].first;
    long dy = hull[i].second - hull[i - 1].second;
    np.slopes.emplace_back(Rat(dy, dx), dx);
  }
  return np;
}

// ---- ramification certificates ----------------------------------------------

constexpr long kExpansionDegreeCap = 4096;

struct RamificationCertificate {
  Place place;
  std::size_t n;
  long ell = 0;              // first-segment width; > 1 forces a non-integral slope
  bool polygon_certified = false;
};

inline QPoly sequence_polynomial(const SequencePrefix& gamma, std::size_t n) {
  if (gamma.maps.front().context.kind != FieldKind::Rationals)
    throw UnsupportedDomain("polynomial expansion implemented over Q");
  Int deg = 1;
  for (std::size_t i = 0; i < n; ++i) deg *= gamma.maps[i].d;
  if (deg > kExpansionDegreeCap) throw ExpansionTooLarge();
  QPoly P = QPoly::x();
  for (std::size_t i = n; i-- > 0;) {
    P = P.pow(gamma.maps[i].d) + QPoly(gamma.maps[i].c.rat());
  }
  return P;
}

// Primes ramifying in K_n(gamma) for the first time, certified through the
// first segment (0,1) -> (ell, 0) of the Newton polygon.
inline std::vector<RamificationCertificate> new_ramified_prime(const SequencePrefix& gamma,
                                                               std::size_t n,
                                                               const FactorEffort& effort = {}) {
  std::vector<RamificationCertificate> out;
  auto primes = good_primitive_primes(gamma, n, PrimitiveMode::ValuationOne, effort);
  if (primes.empty()) return out;
  QPoly f = sequence_polynomial(gamma, n);
  for (const auto& rep : primes) {
    NewtonPolygon np = newton_polygon(f, rep.place);
    if (np.vertices.size() < 2) continue;
    auto [x0, y0] = np.vertices[0];
    auto [x1, y1] = np.vertices[1];
    if (x0 == 0 && y0 == 1 && y1 == 0 && x1 > 1) {
      // slope -1/ell with ell > 1 is non-integral, so the prime ramifies at
      // level n; conditions (1)-(4) rule out ramification from lower levels
      out.push_back({rep.place, n, x1, true});
    }
  }
  return out;
}

// ---- Monte-Carlo big-Galois sampling ----------------------------------------

struct MonteCarloTrial {
  std::vector<int> sequence;  // sampled indices, outermost position 1 first
  bool stable = false;        // every prefix certified irreducible
  long maximal_levels = 0;    // levels with a maximality certificate
};

struct MonteCarloReport {
  long trials = 0;
  long stable_count = 0;
  long success_count = 0;  // stable and at least min_maximal_levels certificates
  double success_fraction = 0;
  std::vector<MonteCarloTrial> per_trial;
};

namespace detail_galois {

// platform-independent weighted choice from a uniform 64-bit draw
inline int weighted_pick(const std::vector<double>& cumulative, std::uint64_t draw) {
  double u = static_cast<double>(draw >> 11) * (1.0 / 9007199254740992.0);  // [0,1)
  for (std::size_t i = 0; i < cumulative.size(); ++i)
    if (u < cumulative[i]) return static_cast<int>(i);
  return static_cast<int>(cumulative.size()) - 1;
}

}  // namespace detail_galois

inline MonteCarloReport monte_carlo_big_galois(const GeneratingSet& S,
                                               const std::vector<double>& weights, long trials,
                                               unsigned horizon, std::uint64_t seed,
                                               long min_maximal_levels = 1, unsigned jobs = 1,
                                               const FactorEffort& effort = {}) {
  if (weights.size() != S.maps.size()) throw Error("one weight per generator required");
  unsigned d = S.maps.front().d;
  for (const auto& m : S.maps)
    if (m.d != d) throw DegreeMismatch();
  double total = 0;
  for (double w : weights) {
    if (w <= 0) throw Error("weights must be positive");
    total += w;
  }
  std::vector<double> cumulative(weights.size());
  double acc = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i] / total;
    cumulative[i] = acc;
  }

  MonteCarloReport rep;
  rep.trials = trials;
  rep.per_trial.resize(trials);

  auto run_trial = [&](long t) {
    // per-trial stream keyed by (seed, trial index): deterministic under any schedule
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (t + 1)));
    MonteCarloTrial trial;
    for (unsigned i = 0; i < horizon; ++i)
      trial.sequence.push_back(detail_galois::weighted_pick(cumulative, rng()));
    // prefix-wise stability
    std::map<Word, WordReport> memo;
    trial.stable = true;
    for (unsigned n = 1; n <= horizon && trial.stable; ++n) {
      Word w(trial.sequence.begin(), trial.sequence.begin() + n);
      trial.stable = certify_word(S, w, &memo).verdict == WordVerdict::Irreducible;
    }
    if (trial.stable) {
      std::vector<UnicriticalMap> maps;
      for (int idx : trial.sequence) maps.push_back(S.maps[idx]);
      SequencePrefix gamma = make_sequence(std::move(maps));
      for (unsigned n = 1; n <= horizon; ++n) {
        try {
          if (maximality_certificate(gamma, n, effort)) ++trial.maximal_levels;
        } catch (const FactorizationTimeout&) {
          // unknown level: not counted
        } catch (const ZeroInput&) {
          // vanishing critical value: no primitive prime at this level
        }
      }
    }
    rep.per_trial[t] = std::move(trial);
  };

  if (jobs <= 1) {
    for (long t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        for (long t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) run_trial(t);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& trial : rep.per_trial) {
    if (trial.stable) ++rep.stable_count;
    if (trial.stable && trial.maximal_levels >= min_maximal_levels) ++rep.success_count;
  }
  rep.success_fraction = trials > 0 ? static_cast<double>(rep.success_count) / trials : 0;
  return rep;
}

}  // namespace unidyn
