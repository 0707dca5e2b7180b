// Irreducibility, stability, guard prefixes, and dynamical-Galois
// certificates, cross-checked against direct factorization oracles.
#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "unidyn/unidyn.hpp"

using namespace unidyn;

TEST_CASE("unit power detection") {
  FieldContext Q = FieldContext::Q();
  CHECK(!detect_unit_power(FieldElement(Rat(-1020)), {5}, Q));
  auto w = detect_unit_power(FieldElement(Rat(4)), {2}, Q);
  REQUIRE(w.has_value());
  CHECK(w->r.rat() == 1);
  CHECK(w->y.rat() == 2);
  CHECK(w->m == 2);
  // witnesses verify: x = r * y^m, on random powered inputs
  for (long q = 2; q <= 7; ++q) {
    for (unsigned m : {2u, 3u, 4u}) {
      for (Rat r : {Rat(1), Rat(-1), Rat(4), Rat(-4)}) {
        FieldElement x(r * rat_pow(Rat(q, 5), m));
        auto ww = detect_unit_power(x, {m}, Q);
        REQUIRE(ww.has_value());
        CHECK(ww->r * ww->y.pow(ww->m) == x);
      }
    }
  }
  CHECK_THROWS_AS(detect_unit_power(FieldElement(Rat(0)), {2}, Q), ZeroInput);
}

TEST_CASE("binomial criterion agrees with direct factorization") {
  FieldContext Q = FieldContext::Q();
  for (unsigned d = 2; d <= 8; ++d) {
    for (int c = -10; c <= 10; ++c) {
      if (c == 0) continue;
      QPoly f = QPoly::x().pow(d) + QPoly(Rat(c));
      CHECK(binomial_irreducible(d, FieldElement(Rat(-c)), Q) == poly_irreducible_Q(f));
    }
  }
}

TEST_CASE("word certification is sound") {
  FieldContext Q = FieldContext::Q();
  GeneratingSet S({UnicriticalMap(2, FieldElement(Rat(1)), Q),
                   UnicriticalMap(2, FieldElement(Rat(-2)), Q),
                   UnicriticalMap(3, FieldElement(Rat(-1)), Q)});
  std::map<Word, WordReport> memo;
  for (const auto& w : enumerate_words(S, Int(32))) {
    WordReport rep = certify_word(S, w, &memo);
    if (word_degree(S, w) > 16) continue;  // keep the factorization oracle cheap
    bool truth = poly_irreducible_Q(word_polynomial(S, w));
    if (rep.verdict == WordVerdict::Irreducible) CHECK(truth);
    if (rep.verdict == WordVerdict::Reducible) CHECK(!truth);
  }
}

TEST_CASE("stability certificates") {
  FieldContext Q = FieldContext::Q();
  auto st = stability_certificate(UnicriticalMap(2, FieldElement(Rat(1)), Q), 8);
  CHECK(st.kind == StabilityResult::Kind::StableUpTo);
  CHECK(st.certified_iterates == 9);
  auto base = stability_certificate(UnicriticalMap(4, FieldElement(Rat(-4)), Q), 4);
  CHECK(base.kind == StabilityResult::Kind::BaseReducible);
  // a power witness at an iterate: x^2 - 2 has phi^2(0) = 2, phi(0) = -2;
  // phi^n(0) = 2 for n >= 2 and 2 is not r y^2, so this stays stable;
  // x^2 - 3: phi(0) = -3, phi^2(0) = 6, phi^3(0) = 33, phi^4(0) = 1086, ...
  auto st2 = stability_certificate(UnicriticalMap(2, FieldElement(Rat(-2)), Q), 6);
  CHECK(st2.kind == StabilityResult::Kind::StableUpTo);
  // function-field threshold: StableInfinity above (D4, C4)
  FieldContext Qt = FieldContext::Qt();
  RationalFunction t = RationalFunction::t();
  auto ff = stability_certificate(UnicriticalMap(15, FieldElement(t), Qt), 3);
  CHECK(ff.kind == StabilityResult::Kind::StableInfinity);
  // below the degree threshold it falls back to iterate checks
  auto low = stability_certificate(UnicriticalMap(3, FieldElement(t), Qt), 3);
  CHECK(low.kind == StabilityResult::Kind::StableUpTo);
}

TEST_CASE("stability witnesses block certification honestly") {
  // c chosen so that phi^2(0) = c^2 + c is a perfect square: c = 8 gives 72?
  // no; use d = 2, c = -9/4? keep it integral: c^2 + c = y^2 has no integer
  // solutions with c > 0, so build a witness through r = 4: c^2 + c = 4 y^2
  // at c = -4: 12, no. Direct: x^4 + 4 is the base case; for an iterate
  // witness use d = 2, c = -6: phi^2(0) = 30, phi^3(0) = 894, phi^4(0) =
  // 798430, none powered; instead verify on x^2 - 2 composed values that a
  // manufactured power is caught.
  FieldContext Q = FieldContext::Q();
  // phi = x^2 + c with c = -1: phi^2(0) = 0 would divide; library treats the
  // orbit hitting 0 as a genuine power witness is not expected here - instead
  // check that PowerAtIterate reports a verifying witness when present.
  for (int c = -50; c <= 50; ++c) {
    if (c == 0) continue;
    UnicriticalMap phi(2, FieldElement(Rat(c)), Q);
    if (!binomial_irreducible(2, FieldElement(Rat(-c)), Q)) continue;
    auto st = stability_certificate(phi, 3);
    if (st.kind == StabilityResult::Kind::PowerAtIterate) {
      REQUIRE(st.witness.has_value());
      // recompute phi^n(0) and confirm the witness factors it
      FieldElement v = FieldElement::zero(Q);
      for (long i = 0; i < st.n; ++i) v = evaluate(phi, v);
      CHECK(st.witness->r * st.witness->y.pow(st.witness->m) == v);
    }
  }
}

TEST_CASE("powered fixed points") {
  FieldContext Q = FieldContext::Q();
  auto f1 = powered_fixed_points(UnicriticalMap(5, FieldElement(Rat(-1020)), Q));
  REQUIRE(f1.size() == 1);
  CHECK(f1[0].P.rat() == 4);
  REQUIRE(f1[0].powered());
  CHECK(f1[0].witness->m == 2);
  auto f2 = powered_fixed_points(UnicriticalMap(3, FieldElement(Rat(-6)), Q));
  REQUIRE(f2.size() == 1);
  CHECK(!f2[0].powered());
  FieldContext Qt = FieldContext::Qt();
  RationalFunction t = RationalFunction::t();
  auto f3 = powered_fixed_points(UnicriticalMap(9, FieldElement(t.pow(2) - t.pow(18)), Qt));
  bool found = false;
  for (const auto& f : f3)
    if (!f.P.is_zero() && f.P.rf() == t.pow(2)) {
      found = true;
      CHECK(f.powered());
    }
  CHECK(found);
}

TEST_CASE("growth exponent") {
  auto g = semigroup_growth_exponent({2, 3});
  CHECK(g.hi - g.lo < 1e-9);
  // oracle: 2^-rho + 3^-rho = 1 at the reported value
  double s = std::pow(2.0, -g.value()) + std::pow(3.0, -g.value());
  CHECK(s == Catch::Approx(1.0).margin(1e-8));
  CHECK(semigroup_growth_exponent({2, 2}).value() == Catch::Approx(1.0).margin(1e-9));
  CHECK(semigroup_growth_exponent({4, 4, 4, 4}).value() == Catch::Approx(1.0).margin(1e-9));
  CHECK(semigroup_growth_exponent({2}).degenerate);
  CHECK_THROWS_AS(semigroup_growth_exponent({1, 2}), Error);
}

TEST_CASE("word enumeration counts") {
  FieldContext Q = FieldContext::Q();
  GeneratingSet S1({UnicriticalMap(2, FieldElement(Rat(1)), Q)});
  CHECK(enumerate_words(S1, Int(16)).size() == 4);
  GeneratingSet S2({UnicriticalMap(2, FieldElement(Rat(1)), Q),
                    UnicriticalMap(2, FieldElement(Rat(-2)), Q)});
  CHECK(enumerate_words(S2, Int(8)).size() == 14);
  // every enumerated word respects the bound; none is missing (oracle count
  // by direct recursion)
  GeneratingSet S3({UnicriticalMap(2, FieldElement(Rat(1)), Q),
                    UnicriticalMap(3, FieldElement(Rat(1)), Q)});
  std::function<long(Int)> cnt = [&](Int b) -> long {
    long c = 0;
    if (b >= 2) c += 1 + cnt(b / 2);
    if (b >= 3) c += 1 + cnt(b / 3);
    return c;
  };
  // oracle over-counts words of bounded degree? no: each word maps uniquely to
  // a choice sequence, and floor division preserves the product bound exactly
  // for integer degrees
  CHECK(static_cast<long>(enumerate_words(S3, Int(30)).size()) == cnt(Int(30)));
}

TEST_CASE("irreducible proportion with factor fallback") {
  FieldContext Q = FieldContext::Q();
  GeneratingSet S({UnicriticalMap(2, FieldElement(Rat(1)), Q),
                   UnicriticalMap(2, FieldElement(Rat(-2)), Q)});
  auto rep = irreducible_proportion(S, Int(16), ProportionMethod::FactorFallback);
  CHECK(rep.total == rep.certified_irreducible + rep.certified_reducible + rep.inconclusive);
  CHECK(rep.inconclusive == 0);  // fallback resolves everything at this size
}

TEST_CASE("guard prefixes and thresholds") {
  FieldContext Qt = FieldContext::Qt();
  RationalFunction t = RationalFunction::t();
  GeneratingSet S({UnicriticalMap(15, FieldElement(t), Qt),
                   UnicriticalMap(15, FieldElement(t * RationalFunction(Rat(2))), Qt)});
  auto g = guard_prefix(S, 8);
  REQUIRE(g.guard.has_value());
  CHECK(g.guard->size() == 8);
  CHECK(!g.exceptional_family);
  // below the degree threshold the certificate is refused, not faked
  GeneratingSet low({UnicriticalMap(3, FieldElement(t), Qt)});
  CHECK_THROWS_AS(guard_prefix(low, 8), ThresholdsNotMet);
  // number fields need configured constants
  FieldContext Q = FieldContext::Q();
  GeneratingSet nf({UnicriticalMap(2, FieldElement(Rat(1)), Q)});
  CHECK_THROWS_AS(guard_prefix(nf, 8), ThresholdsNotMet);
  FieldContext Qc = FieldContext::Q();
  Qc.constants.configured = true;
  GeneratingSet nf2({UnicriticalMap(2, FieldElement::from_rational(Qc, Rat(1)), Qc)});
  auto g2 = guard_prefix(nf2, 8);
  CHECK(g2.guard.has_value());  // x^2 + 1: irreducible, fixed points irrational
}

TEST_CASE("critical values and good primitive primes") {
  FieldContext Q = FieldContext::Q();
  UnicriticalMap phi(2, FieldElement(Rat(1)), Q);
  auto gamma = make_sequence({phi, phi, phi, phi});
  CHECK(gamma.crit[0].rat() == 1);
  CHECK(gamma.crit[1].rat() == 2);
  CHECK(gamma.crit[2].rat() == 5);
  CHECK(gamma.crit[3].rat() == 26);
  CHECK(good_primitive_primes(gamma, 2, PrimitiveMode::GcdCoprime).empty());
  auto p3 = good_primitive_primes(gamma, 3, PrimitiveMode::GcdCoprime);
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].place.p == 5);
  auto p4 = good_primitive_primes(gamma, 4, PrimitiveMode::GcdCoprime);
  REQUIRE(p4.size() == 1);
  CHECK(p4[0].place.p == 13);
  // a vanishing critical value is an error, not a silent skip
  UnicriticalMap m1(2, FieldElement(Rat(-1)), Q);
  auto bad = make_sequence({m1, m1});
  CHECK_THROWS_AS(good_primitive_primes(bad, 2, PrimitiveMode::GcdCoprime), ZeroInput);
}

TEST_CASE("maximality certificates and degree checks") {
  FieldContext Q = FieldContext::Q();
  UnicriticalMap phi(2, FieldElement(Rat(1)), Q);
  auto gamma = make_sequence({phi, phi, phi, phi});
  CHECK(!maximality_certificate(gamma, 2));
  auto c3 = maximality_certificate(gamma, 3);
  REQUIRE(c3.has_value());
  CHECK(c3->prime.p == 5);
  auto c4 = maximality_certificate(gamma, 4);
  REQUIRE(c4.has_value());
  CHECK(c4->prime.p == 13);
  // mixed degrees are a structural error for this certificate
  UnicriticalMap cub(3, FieldElement(Rat(1)), Q);
  auto mixed = make_sequence({phi, cub});
  CHECK_THROWS_AS(maximality_certificate(mixed, 2), DegreeMismatch);
  // d = 3 needs zeta_3, which Q lacks
  auto cubic = make_sequence({cub, cub});
  CHECK(!maximality_certificate(cubic, 2));
}

TEST_CASE("newton polygons") {
  // Eisenstein at 2: x^3 + 2x + 2 -> single segment (0,1) to (3,0)
  QPoly f(std::vector<Rat>{2, 2, 0, 1});
  auto np = newton_polygon(f, Place::finite_prime(Int(2)));
  REQUIRE(np.vertices.size() == 2);
  CHECK(np.vertices[0] == std::make_pair(0L, 1L));
  CHECK(np.vertices[1] == std::make_pair(3L, 0L));
  CHECK(np.slopes[0].first == Rat(-1, 3));
  // x^2 + x + 4 at 2: vertices (0,2), (1,0), (2,0)
  QPoly g(std::vector<Rat>{4, 1, 1});
  auto np2 = newton_polygon(g, Place::finite_prime(Int(2)));
  REQUIRE(np2.vertices.size() == 3);
  CHECK(np2.slopes[0].first == Rat(-2));
  CHECK(np2.slopes[1].first == Rat(0));
}

TEST_CASE("ramified primes through the polygon") {
  FieldContext Q = FieldContext::Q();
  UnicriticalMap phi(2, FieldElement(Rat(1)), Q);
  auto gamma = make_sequence({phi, phi, phi, phi});
  auto r4 = new_ramified_prime(gamma, 4);
  REQUIRE(r4.size() == 1);
  CHECK(r4[0].place.p == 13);
  CHECK(r4[0].ell == 2);
  CHECK(r4[0].polygon_certified);
  CHECK(new_ramified_prime(gamma, 2).empty());
  // the expansion cap is enforced
  UnicriticalMap big(8, FieldElement(Rat(1)), Q);
  auto long_seq = make_sequence(std::vector<UnicriticalMap>(5, big));
  CHECK_THROWS_AS(sequence_polynomial(long_seq, 5), ExpansionTooLarge);
}

TEST_CASE("monte carlo sampling is schedule independent") {
  FieldContext Q = FieldContext::Q();
  GeneratingSet S({UnicriticalMap(2, FieldElement(Rat(1)), Q),
                   UnicriticalMap(2, FieldElement(Rat(3)), Q)});
  auto r1 = monte_carlo_big_galois(S, {1.0, 2.0}, 12, 3, 99, 1, 1);
  auto r4 = monte_carlo_big_galois(S, {1.0, 2.0}, 12, 3, 99, 1, 4);
  REQUIRE(r1.per_trial.size() == r4.per_trial.size());
  for (std::size_t i = 0; i < r1.per_trial.size(); ++i) {
    CHECK(r1.per_trial[i].sequence == r4.per_trial[i].sequence);
    CHECK(r1.per_trial[i].stable == r4.per_trial[i].stable);
    CHECK(r1.per_trial[i].maximal_levels == r4.per_trial[i].maximal_levels);
  }
  // different seeds give different sequences
  auto r2 = monte_carlo_big_galois(S, {1.0, 2.0}, 12, 3, 100, 1, 1);
  bool differs = false;
  for (std::size_t i = 0; i < r1.per_trial.size(); ++i)
    differs = differs || r1.per_trial[i].sequence != r2.per_trial[i].sequence;
  CHECK(differs);
}
