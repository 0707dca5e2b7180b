// Core arithmetic: big rationals, polynomials, factorization, rational
// functions, cyclotomic elements, field elements, and parsing.
#include <catch2/catch_amalgamated.hpp>

#include "unidyn/unidyn.hpp"

using namespace unidyn;

namespace {

// small deterministic generator, independent of the library under test
struct Lcg {
  std::uint64_t s = 0x243f6a8885a308d3ULL;
  std::uint64_t next() { return s = s * 6364136223846793005ULL + 1442695040888963407ULL; }
  long small(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
};

QPoly random_poly(Lcg& rng, long max_deg) {
  long d = rng.small(0, max_deg);
  std::vector<Rat> c(d + 1);
  for (long i = 0; i <= d; ++i) c[i] = Rat(rng.small(-9, 9), rng.small(1, 4));
  return QPoly(std::move(c));
}

}  // namespace

TEST_CASE("integer roots and rational powers") {
  CHECK(iroot_exact(Int(1024), 10) == Int(2));
  CHECK(!iroot_exact(Int(1000), 10));
  CHECK(!iroot_exact(Int(-27), 3));  // sign handling lives in rat_root_exact
  CHECK(rat_root_exact(Rat(-27), 3) == Rat(-3));
  CHECK(!rat_root_exact(Rat(-16), 4));
  CHECK(rat_root_exact(Rat(4, 9), 2) == Rat(2, 3));
  CHECK(!rat_root_exact(Rat(2), 2));
  CHECK(rat_pow(Rat(2, 3), 3) == Rat(8, 27));
}

TEST_CASE("polynomial ring axioms on random inputs") {
  Lcg rng;
  for (int i = 0; i < 40; ++i) {
    QPoly a = random_poly(rng, 5), b = random_poly(rng, 5), c = random_poly(rng, 5);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("polynomial division identity") {
  Lcg rng;
  for (int i = 0; i < 40; ++i) {
    QPoly f = random_poly(rng, 7);
    QPoly g = random_poly(rng, 4);
    if (g.is_zero()) continue;
    auto [q, r] = poly_divmod(f, g);
    CHECK(f == q * g + r);
    CHECK(r.degree() < g.degree());
  }
}

TEST_CASE("polynomial gcd divides both arguments") {
  Lcg rng;
  for (int i = 0; i < 25; ++i) {
    QPoly a = random_poly(rng, 5), b = random_poly(rng, 5);
    if (a.is_zero() || b.is_zero()) continue;
    QPoly g = poly_gcd(a, b);
    CHECK((a % g).is_zero());
    CHECK((b % g).is_zero());
  }
}

TEST_CASE("composition evaluates pointwise") {
  Lcg rng;
  for (int i = 0; i < 15; ++i) {
    QPoly f = random_poly(rng, 4), g = random_poly(rng, 3);
    Rat x(rng.small(-5, 5), rng.small(1, 3));
    CHECK(f.compose(g).eval(x) == f.eval(g.eval(x)));
  }
}

TEST_CASE("integer factorization round trip") {
  for (long n : {2L, 17L, 1020L, 1024L, 104729L, 600851475143L, 999999999989L}) {
    auto fac = factor_integer(Int(n));
    Int prod = 1;
    for (const auto& [p, e] : fac.factors) {
      CHECK(is_probable_prime(p));
      prod *= int_pow(p, e);
    }
    CHECK(prod == n);
  }
}

TEST_CASE("primality agrees with a sieve oracle") {
  std::vector<bool> sieve(2000, true);
  sieve[0] = sieve[1] = false;
  for (std::size_t i = 2; i < sieve.size(); ++i)
    if (sieve[i])
      for (std::size_t j = i * i; j < sieve.size(); j += i) sieve[j] = false;
  for (std::size_t n = 2; n < sieve.size(); ++n)
    CHECK(is_probable_prime(Int(n)) == sieve[n]);
}

TEST_CASE("polynomial factorization round trip and known splits") {
  // (x^2-2x+2)(x^2+2x+2) = x^4 + 4
  QPoly x4p4 = QPoly::x().pow(4) + QPoly(Rat(4));
  auto fac = factor_polynomial_Q(x4p4);
  REQUIRE(fac.factors.size() == 2);
  QPoly prod(fac.unit);
  for (const auto& [g, m] : fac.factors)
    for (long i = 0; i < m; ++i) prod = prod * g;
  CHECK(prod == x4p4);

  CHECK(poly_irreducible_Q(QPoly::x().pow(2) + QPoly(Rat(1))));
  CHECK(!poly_irreducible_Q(QPoly::x().pow(6) - QPoly(Rat(64))));

  // x^n - 1 factors into the cyclotomic polynomials of the divisors of n
  for (unsigned long n : {6ul, 12ul}) {
    QPoly f = QPoly::x().pow(n) - QPoly(Rat(1));
    auto cf = factor_polynomial_Q(f);
    std::vector<QPoly> expected;
    for (unsigned long m = 1; m <= n; ++m)
      if (n % m == 0) expected.push_back(cyclotomic_polynomial(m));
    std::sort(expected.begin(), expected.end(), poly_less);
    REQUIRE(cf.factors.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(cf.factors[i].first == expected[i]);
  }
}

TEST_CASE("rational roots") {
  // (2x-1)(x+3)(x^2+1)
  QPoly f = (QPoly(std::vector<Rat>{-1, 2})) * (QPoly(std::vector<Rat>{3, 1})) *
            (QPoly(std::vector<Rat>{1, 0, 1}));
  auto roots = rational_roots(f);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == Rat(-3));
  CHECK(roots[1] == Rat(1, 2));
}

TEST_CASE("rational function invariants") {
  Lcg rng;
  for (int i = 0; i < 25; ++i) {
    QPoly n = random_poly(rng, 4), d = random_poly(rng, 3);
    if (d.is_zero()) continue;
    RationalFunction r(n, d);
    CHECK(r.den_.lead() == Rat(1));
    if (!r.num_.is_zero()) CHECK(poly_gcd(r.num_, r.den_).degree() == 0);
    // evaluation consistency at a shared point
    Rat x(rng.small(-4, 4));
    auto rv = r.eval(x);
    if (rv && d.eval(x) != 0) CHECK(*rv == n.eval(x) / d.eval(x));
  }
}

TEST_CASE("rational function field axioms") {
  RationalFunction t = RationalFunction::t();
  RationalFunction a = (t + RationalFunction(Rat(1))) / (t - RationalFunction(Rat(2)));
  RationalFunction b = t.pow(2) / (t + RationalFunction(Rat(3)));
  CHECK(a + b == b + a);
  CHECK(a * (b + t) == a * b + a * t);
  CHECK((a / b) * b == a);
  CHECK((t - t).is_zero());
}

TEST_CASE("cyclotomic polynomial degrees and values") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(18) == 6);
  for (unsigned long n : {1ul, 2ul, 3ul, 4ul, 6ul, 9ul, 12ul, 18ul})
    CHECK(static_cast<unsigned long>(cyclotomic_polynomial(n).degree()) == euler_phi(n));
  CHECK(cyclotomic_polynomial(6) == QPoly(std::vector<Rat>{1, -1, 1}));
}

TEST_CASE("cyclotomic element arithmetic") {
  for (unsigned long n : {5ul, 6ul, 12ul, 18ul}) {
    CyclotomicElement z = CyclotomicElement::zeta(n);
    CHECK(z.pow(n) == CyclotomicElement::from_rational(n, Rat(1)));
    CHECK(z.pow(n / 1) * z == z);
    CyclotomicElement a = z + CyclotomicElement::from_rational(n, Rat(2));
    CHECK(a * a.inverse() == CyclotomicElement::from_rational(n, Rat(1)));
    CHECK((a - a).r.is_zero());
  }
}

TEST_CASE("roots of unity group structure") {
  CHECK(all_roots_of_unity(FieldContext::Q()).size() == 2);
  CHECK(all_roots_of_unity(FieldContext::Qt()).size() == 2);
  CHECK(all_roots_of_unity(FieldContext::Qzeta(12)).size() == 12);
  CHECK(all_roots_of_unity(FieldContext::Qzeta(9)).size() == 18);  // -zeta_9 has order 18
  FieldContext K = FieldContext::Qzeta(12);
  for (const auto& z : all_roots_of_unity(K)) {
    auto ord = is_root_of_unity(z);
    REQUIRE(ord.has_value());
    CHECK(z.pow(*ord) == FieldElement::one(K));
  }
}

TEST_CASE("exact nth roots by field") {
  FieldContext Q = FieldContext::Q();
  CHECK(nth_root_exact(FieldElement(Rat(27, 8)), 3, Q) == FieldElement(Rat(3, 2)));
  CHECK(!nth_root_exact(FieldElement(Rat(2)), 2, Q));
  FieldContext Qt = FieldContext::Qt();
  RationalFunction t = RationalFunction::t();
  FieldElement cube(t.pow(3) * RationalFunction(Rat(-8)));
  auto r = nth_root_exact(cube, 3, Qt);
  REQUIRE(r.has_value());
  CHECK(r->pow(3) == cube);
  FieldContext K = FieldContext::Qzeta(12);
  FieldElement qz = FieldElement::from_rational(K, Rat(9, 4)) *
                    FieldElement(CyclotomicElement::zeta(12)).pow(2);
  auto rz = nth_root_exact(qz, 2, K);
  REQUIRE(rz.has_value());
  CHECK(rz->pow(2) == qz);
}

TEST_CASE("element parsing round trip") {
  FieldContext Q = FieldContext::Q();
  FieldContext Qt = FieldContext::Qt();
  FieldContext K = FieldContext::Qzeta(18);
  RationalFunction t = RationalFunction::t();
  std::vector<FieldElement> samples{
      FieldElement(Rat(0)),       FieldElement(Rat(-17, 6)),
      FieldElement(Rat(1020)),    FieldElement(t - t.pow(9)),
      FieldElement(t.pow(2) / (t + RationalFunction(Rat(1)))),
      FieldElement(CyclotomicElement::zeta(18)),
      FieldElement(CyclotomicElement::zeta(18).pow(5) * CyclotomicElement::from_rational(18, Rat(-3, 2)))};
  for (const auto& e : samples) {
    const FieldContext& ctx = e.kind == FieldKind::Rationals     ? Q
                              : e.kind == FieldKind::FunctionField ? Qt
                                                                   : K;
    CHECK(parse_element(e.str(), ctx) == e);
  }
  CHECK_THROWS_AS(parse_element("t + $", Qt), ParseError);
  CHECK_THROWS_AS(parse_element("z", Qt), ParseError);
}

TEST_CASE("field element mixed arithmetic is rejected") {
  FieldElement q(Rat(1));
  FieldElement f(RationalFunction::t());
  CHECK_THROWS_AS(q + f, MixedFields);
}

TEST_CASE("division by zero is rejected") {
  CHECK_THROWS_AS(FieldElement(Rat(1)) / FieldElement(Rat(0)), DivisionByZero);
  RationalFunction t = RationalFunction::t();
  CHECK_THROWS_AS(RationalFunction(Rat(1)) / (t - t), DivisionByZero);
}
