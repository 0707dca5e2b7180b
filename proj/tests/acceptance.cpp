// Acceptance suite: one pass/fail line per criterion.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "unidyn/unidyn.hpp"

using namespace unidyn;
using Clock = std::chrono::steady_clock;

namespace {

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
  int id;
  bool pass;
  std::string detail;
};

std::vector<Criterion> results;

void report(int id, bool pass, const std::string& detail) {
  results.push_back({id, pass, detail});
  std::cout << "Criterion " << id << ": " << (pass ? "PASS" : "FAIL") << " — " << detail
            << std::endl;
}

// ---- 1: rho_d ---------------------------------------------------------------

void criterion1() {
  auto t0 = Clock::now();
  bool ok = true;
  RhoD r2 = rho_d(2, 1e-12), r3 = rho_d(3, 1e-12);
  ok = ok && r2.lo >= 2.41421356 && r2.hi <= 2.41421357;
  ok = ok && r3.lo >= 1.61803398 && r3.hi <= 1.61803399;
  double prev = 1e300;
  for (unsigned d = 2; d <= 64; ++d) {
    RhoD r = rho_d(d, 1e-12);
    double mid = (r.lo + r.hi) / 2;
    ok = ok && mid < prev && std::abs(std::pow(mid, d) - (2 * mid + 1)) <= 1e-9;
    prev = mid;
  }
  double t = elapsed(t0);
  ok = ok && t < 1.0;
  std::ostringstream os;
  os << "rho_d intervals, monotonicity, defining identity for d <= 64 (" << t << " s)";
  report(1, ok, os.str());
}

// ---- 2: preperiodic grid vs brute-force oracle ------------------------------

std::set<Rat> oracle_preperiodic(unsigned d, const Rat& c, const std::vector<Rat>& cands) {
  std::set<Rat> out;
  Rat R = (c < 0 ? Rat(-c) : c) + 2;
  Int cap = 1000000;  // preperiodic orbits stay tiny; huge values are escapes
  for (const Rat& x0 : cands) {
    Rat x = x0;
    std::set<Rat> seen;
    for (int i = 0; i < 200; ++i) {
      if ((x < 0 ? Rat(-x) : x) > R) break;  // |phi(x)| >= |x|^d - |c| > |x| here
      if (iabs(num(x)) > cap || den(x) > cap) break;
      if (!seen.insert(x).second) {
        out.insert(x0);
        break;
      }
      x = rat_pow(x, d) + c;
    }
  }
  return out;
}

void criterion2() {
  auto t0 = Clock::now();
  std::vector<Rat> cands;
  for (long b = 1; b <= 50; ++b)
    for (long a = -200; a <= 200; ++a)
      if (std::gcd(std::abs(a), b) == 1) cands.emplace_back(a, b);
  long maps = 0, mismatches = 0;
  for (unsigned d = 2; d <= 5; ++d) {
    for (long b = 1; b <= 6; ++b) {
      for (long a = -20; a <= 20; ++a) {
        if (std::gcd(std::abs(a), b) != 1) continue;
        ++maps;
        Rat c(a, b);
        std::set<Rat> lib;
        for (const auto& p : enumerate_preperiodic_Q(d, c).points) lib.insert(p.rat());
        if (lib != oracle_preperiodic(d, c, cands)) ++mismatches;
      }
    }
  }
  double t = elapsed(t0);
  bool ok = mismatches == 0 && t < 120.0;
  std::ostringstream os;
  os << maps << " maps, " << mismatches << " oracle discrepancies (" << t << " s)";
  report(2, ok, os.str());
}

// ---- 3: portrait classification ---------------------------------------------

void criterion3() {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream os;
  {
    FieldContext Q = FieldContext::Q();
    struct Case { unsigned d; Rat c; SkeletonLabel want; };
    for (const auto& [d, c, want] :
         std::vector<Case>{{2, Rat(-1), SkeletonLabel::L2b}, {3, Rat(-6), SkeletonLabel::L1a}}) {
      UnicriticalMap phi(d, FieldElement(c), Q);
      auto lab =
          classify_skeleton(skeletonize(build_portrait(phi, enumerate_preperiodic_Q(d, c)), phi));
      auto pred = predicted_skeleton(d, FieldElement(c), Q);
      ok = ok && lab == want && pred.label == want;
    }
  }
  for (auto [n, want] : std::vector<std::pair<unsigned long, SkeletonLabel>>{
           {18, SkeletonLabel::L3}, {12, SkeletonLabel::L22}}) {
    FieldContext K = FieldContext::Qzeta(n);
    FieldElement c(CyclotomicElement::zeta(n));
    auto pred = predicted_skeleton(7, c, K);
    UnicriticalMap phi(7, c, K);
    auto lab = classify_skeleton(skeletonize(build_portrait(phi, enumerate_height_zero(7, c.cyc())), phi));
    ok = ok && pred.label == want && lab == want;
    if (n == 18) ok = ok && !pred.conditions.empty();  // certificate conditions reported
  }
  double t = elapsed(t0);
  ok = ok && t < 30.0;
  os << "(2,-1)->(2)b, (3,-6)->(1)a, (7,zeta_18)->(3), (7,zeta_12)->(2,2), oracle agreement ("
     << t << " s)";
  report(3, ok, os.str());
}

// ---- 4: two-image property --------------------------------------------------

void criterion4() {
  bool ok = true;
  long checked = 0;
  for (unsigned long n : {6ul, 12ul}) {
    FieldContext K = FieldContext::Qzeta(n);
    std::vector<FieldElement> cs;
    for (const auto& z : all_roots_of_unity(K)) cs.push_back(z);
    for (int a : {0, 1, -1, 2, -2}) cs.push_back(FieldElement::from_rational(K, Rat(a)));
    for (unsigned d = 2; d <= 12; ++d) {
      for (const auto& c : cs) {
        UnicriticalMap phi(d, c, K);
        try {
          auto imgs = two_images_check(phi, K);  // throws ViolationDetected on failure
          if (c.is_zero()) {
            // degenerate case: phi(mu_K) is exactly the subgroup mu_K^d
            std::vector<FieldElement> want;
            for (const auto& z : all_roots_of_unity(K)) {
              FieldElement p = z.pow(d);
              if (std::find(want.begin(), want.end(), p) == want.end()) want.push_back(p);
            }
            ok = ok && imgs.size() == want.size();
            for (const auto& img : imgs)
              ok = ok && std::find(want.begin(), want.end(), img) != want.end();
          } else {
            ok = ok && imgs.size() <= 2;
            if (imgs.size() == 2) ok = ok && imgs[0] + imgs[1] == c;
          }
          ++checked;
        } catch (const ViolationDetected&) {
          ok = false;
        }
      }
    }
  }
  std::ostringstream os;
  os << checked << " (d, c, K) cases: |phi(mu_K) cap mu_K| <= 2 for c != 0, "
     << "size-2 sums equal c; c = 0 image equals mu_K^d";
  report(4, ok, os.str());
}

// ---- 5: function-field preperiodic classification ---------------------------

void criterion5() {
  auto t0 = Clock::now();
  bool ok = true;
  RationalFunction t = RationalFunction::t();
  FieldContext Qt = FieldContext::Qt();
  std::vector<RationalFunction> ys{t, t + RationalFunction(Rat(1)), t.pow(2),
                                   t.pow(3) * RationalFunction(Rat(2))};
  for (unsigned d : {9u, 11u, 15u}) {
    for (const auto& y : ys) {
      RationalFunction c = y - y.pow(d);
      auto cls = classify_function_field(d, c);
      // odd d: mu_{Q,d} = {1}, so the preperiodic set is exactly {y}
      ok = ok && cls.completeness == PreperSet::Completeness::Complete;
      ok = ok && cls.points.size() == 1 && cls.points[0].rf() == y;
      auto fs = solve_fixed_source(d, FieldElement(c), Qt);
      ok = ok && fs.y.has_value() && fs.y->rf() == y && fs.unique;
    }
    for (const auto& c : {t.pow(2) + RationalFunction(Rat(1)),
                          t.pow(3) + t + RationalFunction(Rat(1))}) {
      ok = ok && classify_function_field(d, c).points.empty();
    }
  }
  double tm = elapsed(t0);
  ok = ok && tm < 30.0;
  std::ostringstream os;
  os << "d in {9,11,15}: exact {zeta y} fibers and degree-obstruction empties (" << tm << " s)";
  report(5, ok, os.str());
}

// ---- 6: Fermat-Catalan bound ------------------------------------------------

void criterion6() {
  bool ok = true;
  RationalFunction t = RationalFunction::t();
  FieldContext Qt = FieldContext::Qt();
  long passed = 0, total = 0;
  std::vector<std::pair<unsigned, unsigned>> exps{{2, 5}, {2, 7}, {3, 4}, {3, 5}, {4, 3}, {5, 2}};
  std::vector<RationalFunction> xs{t, t + RationalFunction(Rat(1)), t.pow(2)};
  std::vector<RationalFunction> ys{t + RationalFunction(Rat(2)), t.pow(2) + t,
                                   t.pow(3) + RationalFunction(Rat(1))};
  // constructed solutions: pick x, y, b and solve a = (1 - b y^n) / x^m
  for (const auto& [m, n] : exps) {
    for (const auto& xr : xs) {
      for (const auto& yr : ys) {
        if (total >= 44) break;
        FieldElement x(xr), y(yr);
        FieldElement b = FieldElement::from_rational(Qt, Rat(total % 2 + 1));
        FieldElement a = (FieldElement::one(Qt) - b * y.pow(n)) / x.pow(m);
        ++total;
        try {
          if (check_fermat_catalan_bound(a, b, m, n, x, y, Qt.constants, 0).pass) ++passed;
        } catch (const Error&) {
        }
      }
    }
  }
  // preperiodic pairs: fixed-point solutions y of y - y^d = c give unit
  // relations 1 = (1/c) * y - (1/c) * y^d when c != 0; rescale into the
  // a x^m + b y^n = 1 shape with x = y, m = 1 replaced by admissible powers:
  // use y and y^2 with exponents (2, 5): 1 = a (y)^2 + b (y^5) where
  // a = (1 - b y^5) / y^2 for preperiodic sources y of small height
  for (unsigned d : {9u, 10u, 11u, 12u, 13u, 15u}) {
    RationalFunction y = t - t.pow(2) + RationalFunction(Rat(d));
    FieldElement ye(y);
    FieldElement b = FieldElement::one(Qt);
    FieldElement a = (FieldElement::one(Qt) - ye.pow(5)) / ye.pow(2);
    ++total;
    try {
      if (check_fermat_catalan_bound(a, b, 2, 5, ye, ye, Qt.constants, 0).pass) ++passed;
    } catch (const Error&) {
    }
  }
  ok = total >= 50 && passed == total;
  std::ostringstream os;
  os << passed << "/" << total << " constructed solutions pass with B1 = 30, B2 = 0";
  report(6, ok, os.str());
}

// ---- 7: irreducibility / stability ------------------------------------------

void criterion7() {
  auto t0 = Clock::now();
  bool ok = true;
  FieldContext Q = FieldContext::Q();
  // x^2 + 1 stable to depth 8, confirmed by factoring the expanded iterates
  auto st = stability_certificate(UnicriticalMap(2, FieldElement(Rat(1)), Q), 8);
  ok = ok && st.kind == StabilityResult::Kind::StableUpTo && st.n == 8;
  QPoly P = QPoly::x();
  for (int k = 1; k <= 5; ++k) {  // degrees 2..32
    P = P * P + QPoly(Rat(1));
    ok = ok && poly_irreducible_Q(P);
  }
  // x^4 + 4 reducible by the binomial criterion and by factorization
  ok = ok && !binomial_irreducible(4, FieldElement(Rat(-4)), Q);
  ok = ok && factor_polynomial_Q(QPoly::x().pow(4) + QPoly(Rat(4))).factors.size() == 2;
  // contrapositive grid: no unit-power witness forces irreducibility of g o f
  long grid = 0, violations = 0;
  for (unsigned d1 = 2; d1 <= 8; ++d1) {
    for (unsigned d2 = 2; d2 <= 8; ++d2) {
      if (d1 * d2 > 16) continue;
      for (int c1 = -10; c1 <= 10; ++c1) {
        if (c1 == 0) continue;
        for (int c2 = -10; c2 <= 10; ++c2) {
          if (c2 == 0) continue;
          if (!binomial_irreducible(d2, FieldElement(Rat(-c2)), Q)) continue;
          ++grid;
          Rat v = rat_pow(Rat(c1), d2) + Rat(c2);  // g(f(0))
          bool witness =
              v == 0 ||
              detect_unit_power(FieldElement(v), detail_irr::divisors_ge2(d1), Q).has_value();
          if (witness) continue;  // reducibility would be allowed; nothing to refute
          QPoly gf = (QPoly::x().pow(d1) + QPoly(Rat(c1))).pow(d2) + QPoly(Rat(c2));
          if (!poly_irreducible_Q(gf)) ++violations;
        }
      }
    }
  }
  double tm = elapsed(t0);
  ok = ok && violations == 0 && tm < 120.0;
  std::ostringstream os;
  os << "StableUpTo(8) + factoring to degree 32; x^4 + 4 splits; " << grid
     << " composites, " << violations << " contrapositive violations (" << tm << " s)";
  report(7, ok, os.str());
}

// ---- 8: powered fixed points ------------------------------------------------

void criterion8() {
  bool ok = true;
  FieldContext Q = FieldContext::Q();
  auto f1 = powered_fixed_points(UnicriticalMap(5, FieldElement(Rat(-1020)), Q));
  ok = ok && f1.size() == 1 && f1[0].P.rat() == 4 && f1[0].powered() &&
       f1[0].witness->r.rat() == 1 && f1[0].witness->y.rat() == 2 && f1[0].witness->m == 2;
  auto f2 = powered_fixed_points(UnicriticalMap(3, FieldElement(Rat(-6)), Q));
  ok = ok && f2.size() == 1 && f2[0].P.rat() == 2 && !f2[0].powered();
  FieldContext Qt = FieldContext::Qt();
  RationalFunction t = RationalFunction::t();
  auto f3 = powered_fixed_points(UnicriticalMap(9, FieldElement(t.pow(2) - t.pow(18)), Qt));
  bool found = false;
  for (const auto& f : f3)
    if (!f.P.is_zero() && f.P.rf() == t.pow(2) && f.powered()) found = true;
  ok = ok && found;
  report(8, ok, "x^5 - 1020 -> (r=1, y=2, m=2); x^3 - 6 unpowered; x^9 + (t^2 - t^18) -> t^2");
}

// ---- 9: semigroup counting --------------------------------------------------

void criterion9() {
  FieldContext Q = FieldContext::Q();
  GeneratingSet S({UnicriticalMap(2, FieldElement(Rat(1)), Q),
                   UnicriticalMap(3, FieldElement(Rat(1)), Q)});
  auto g = semigroup_growth_exponent({2, 3});
  bool ok = std::abs(g.value() - 0.7878849) < 1e-5;
  double rmin = 1e300, rmax = 0;
  for (int k = 4; k <= 10; ++k) {
    Int B = Int(1) << k;
    double ratio = enumerate_words(S, B).size() / std::pow(to_double(B), g.value());
    rmin = std::min(rmin, ratio);
    rmax = std::max(rmax, ratio);
  }
  ok = ok && rmax / rmin <= 3.0;
  std::ostringstream os;
  os << "counts for B = 2^4..2^10 lie in a factor-" << rmax / rmin
     << " band around B^rho, rho = " << g.value();
  report(9, ok, os.str());
}

// ---- 10: galois certificates ------------------------------------------------

void criterion10() {
  auto t0 = Clock::now();
  bool ok = true;
  FieldContext Q = FieldContext::Q();
  UnicriticalMap phi(2, FieldElement(Rat(1)), Q);
  auto gamma = make_sequence({phi, phi, phi, phi});
  ok = ok && good_primitive_primes(gamma, 2, PrimitiveMode::GcdCoprime).empty();
  auto p3 = good_primitive_primes(gamma, 3, PrimitiveMode::GcdCoprime);
  ok = ok && p3.size() == 1 && p3[0].place.p == 5;
  auto p4 = good_primitive_primes(gamma, 4, PrimitiveMode::GcdCoprime);
  ok = ok && p4.size() == 1 && p4[0].place.p == 13;
  auto c3 = maximality_certificate(gamma, 3);
  auto c4 = maximality_certificate(gamma, 4);
  ok = ok && c3 && c3->prime.p == 5 && c4 && c4->prime.p == 13;
  auto r4 = new_ramified_prime(gamma, 4);
  ok = ok && r4.size() == 1 && r4[0].place.p == 13 && r4[0].ell > 1 && r4[0].polygon_certified;
  ok = ok && new_ramified_prime(gamma, 2).empty();
  double tm = elapsed(t0);
  ok = ok && tm < 10.0;
  std::ostringstream os;
  os << "p=5 at n=3, p=13 at n=4, none at n=2; certificates at 3,4; p=13 ramified via polygon ("
     << tm << " s)";
  report(10, ok, os.str());
}

// ---- 11: CLI determinism ----------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion11() {
#ifndef UNIDYN_CLI_PATH
  report(11, false, "CLI path not configured");
#else
  const std::string cli = UNIDYN_CLI_PATH;
  std::vector<std::string> commands{
      "preper --d 2 --c -1 --field Q",
      "portrait --d 7 --c z --field zeta:18 --predict",
      "stability --d 2 --c 1 --N 4 --field Q",
      "semigroup scan --set-spec 2:1,3:1 --bound 64 --field Q",
      "galois sim --set-spec 2:1,2:3 --trials 8 --horizon 3 --seed 42 --field Q",
  };
  bool ok = true;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string f1 = "accept_cli_" + std::to_string(i) + "_a.json";
    std::string f2 = "accept_cli_" + std::to_string(i) + "_b.json";
    std::string base = cli + " " + commands[i];
    int r1 = std::system((base + " --jobs 1 > " + f1 + " 2>/dev/null").c_str());
    int r2 = std::system((base + " --jobs 4 > " + f2 + " 2>/dev/null").c_str());
    std::string o1 = slurp(f1), o2 = slurp(f2);
    ok = ok && r1 == r2 && !o1.empty() && o1 == o2;
    // second identical run
    int r3 = std::system((base + " --jobs 1 > " + f2 + " 2>/dev/null").c_str());
    ok = ok && r1 == r3 && o1 == slurp(f2);
    std::remove(f1.c_str());
    std::remove(f2.c_str());
  }
  report(11, ok, std::to_string(commands.size()) +
                     " CLI commands byte-identical across reruns and --jobs 1 vs 4");
#endif
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  int failures = 0;
  for (const auto& r : results)
    if (!r.pass) ++failures;
  std::cout << (results.size() - failures) << "/" << results.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
