#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "intfactor.hpp"
#include "poly.hpp"

namespace unidyn {

// ---- arithmetic over F_p (p a small odd prime) ------------------------------

namespace fp {

using Poly = std::vector<std::uint64_t>;  // c[i] coeff of x^i, no trailing zeros

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline long deg(const Poly& a) { return static_cast<long>(a.size()) - 1; }

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // extended Euclid
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a % p);
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

inline Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i] % p) % p;
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, std::uint64_t p) {
  Poly q;
  long db = deg(b);
  std::uint64_t binv = inv_mod(b.back(), p);
  if (deg(a) >= db) q.assign(deg(a) - db + 1, 0);
  while (deg(a) >= db) {
    long k = deg(a) - db;
    std::uint64_t f = a.back() * binv % p;
    q[k] = f;
    for (long i = 0; i <= db; ++i) a[k + i] = (a[k + i] + p * p - f * b[i] % p) % p;
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline Poly mod(const Poly& a, const Poly& b, std::uint64_t p) { return divmod(Poly(a), b, p).second; }

inline Poly monic(const Poly& a, std::uint64_t p) {
  if (a.empty()) return a;
  Poly r = a;
  std::uint64_t inv = inv_mod(r.back(), p);
  for (auto& x : r) x = x * inv % p;
  return r;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

inline std::tuple<Poly, Poly, Poly> xgcd(Poly a, Poly b, std::uint64_t p) {
  Poly u0{1}, u1, v0, v1{1};
  while (!b.empty()) {
    auto [q, r] = divmod(a, b, p);
    Poly u2 = sub(u0, mul(q, u1, p), p);
    Poly v2 = sub(v0, mul(q, v1, p), p);
    a = std::move(b);
    b = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (a.empty()) return {a, u0, v0};
  std::uint64_t inv = inv_mod(a.back(), p);
  for (auto& x : a) x = x * inv % p;
  for (auto& x : u0) x = x * inv % p;
  for (auto& x : v0) x = x * inv % p;
  return {a, u0, v0};
}

inline Poly derivative(const Poly& a, std::uint64_t p) {
  Poly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * (i % p) % p);
  trim(r);
  return r;
}

// Berlekamp factorization of a squarefree monic polynomial mod p
inline std::vector<Poly> berlekamp(const Poly& f, std::uint64_t p) {
  long n = deg(f);
  if (n <= 1) return {f};
  // xp = x^p mod f
  Poly xp{0, 1};
  {
    Poly base{0, 1}, acc{1};
    std::uint64_t e = p;
    while (e) {
      if (e & 1) acc = mod(mul(acc, base, p), f, p);
      base = mod(mul(base, base, p), f, p);
      e >>= 1;
    }
    xp = acc;
  }
  // rows A[i] = x^{ip} mod f
  std::vector<Poly> A(n);
  A[0] = Poly{1};
  for (long i = 1; i < n; ++i) A[i] = mod(mul(A[i - 1], xp, p), f, p);
  // M = (A - I)^T, nullspace gives the Berlekamp subalgebra
  std::vector<std::vector<std::uint64_t>> M(n, std::vector<std::uint64_t>(n, 0));
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      std::uint64_t aij = static_cast<std::size_t>(j) < A[i].size() ? A[i][j] : 0;
      if (i == j) aij = (aij + p - 1) % p;
      M[j][i] = aij;  // transpose
    }
  }
  // Gaussian elimination; record pivot columns
  std::vector<long> pivot_col(n, -1);
  long rank = 0;
  for (long col = 0; col < n && rank < n; ++col) {
    long piv = -1;
    for (long r = rank; r < n; ++r)
      if (M[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[rank], M[piv]);
    std::uint64_t inv = inv_mod(M[rank][col], p);
    for (long j = 0; j < n; ++j) M[rank][j] = M[rank][j] * inv % p;
    for (long r = 0; r < n; ++r) {
      if (r != rank && M[r][col] != 0) {
        std::uint64_t f2 = M[r][col];
        for (long j = 0; j < n; ++j) M[r][j] = (M[r][j] + p * p - f2 * M[rank][j] % p) % p;
      }
    }
    pivot_col[rank++] = col;
  }
  // nullspace basis
  std::vector<Poly> basis;
  std::vector<bool> is_pivot(n, false);
  for (long r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
  for (long col = 0; col < n; ++col) {
    if (is_pivot[col]) continue;
    Poly v(n, 0);
    v[col] = 1;
    for (long r = 0; r < rank; ++r) v[pivot_col[r]] = (p - M[r][col]) % p;
    trim(v);
    basis.push_back(v);
  }
  std::size_t r_count = basis.size();
  std::vector<Poly> factors{monic(f, p)};
  if (r_count <= 1) return factors;
  for (const auto& v : basis) {
    if (factors.size() >= r_count) break;
    if (deg(v) < 1) continue;  // constants split nothing
    for (std::uint64_t s = 0; s < p && factors.size() < r_count; ++s) {
      Poly vs = v;
      if (vs.empty()) vs = Poly{0};
      // v - s
      if (vs.empty())
        vs = Poly{(p - s) % p};
      else
        vs[0] = (vs[0] + p - s) % p;
      trim(vs);
      std::vector<Poly> next;
      for (auto& u : factors) {
        if (deg(u) <= 1) {
          next.push_back(u);
          continue;
        }
        Poly g = gcd(u, vs, p);
        if (deg(g) > 0 && deg(g) < deg(u)) {
          next.push_back(g);
          next.push_back(divmod(u, g, p).first);
        } else {
          next.push_back(u);
        }
      }
      factors = std::move(next);
    }
  }
  for (auto& u : factors) u = monic(u, p);
  return factors;
}

}  // namespace fp

// ---- arithmetic on integer polynomials mod p^K ------------------------------

namespace zmod {

using Poly = std::vector<Int>;  // coeff of x^i, reduced into [0, M)

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline long deg(const Poly& a) { return static_cast<long>(a.size()) - 1; }

inline Poly reduce(Poly a, const Int& M) {
  for (auto& x : a) {
    x %= M;
    if (x < 0) x += M;
  }
  trim(a);
  return a;
}

inline Poly add(const Poly& a, const Poly& b, const Int& M) {
  Poly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % M;
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b, const Int& M) {
  Poly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) {
    r[i] = (r[i] - b[i]) % M;
    if (r[i] < 0) r[i] += M;
  }
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, const Int& M) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % M;
  trim(r);
  return r;
}

// division by a monic polynomial
inline std::pair<Poly, Poly> divmod_monic(Poly a, const Poly& b, const Int& M) {
  Poly q;
  long db = deg(b);
  if (deg(a) >= db) q.assign(deg(a) - db + 1, Int(0));
  while (deg(a) >= db) {
    long k = deg(a) - db;
    Int f = a.back();
    q[k] = f;
    for (long i = 0; i <= db; ++i) {
      a[k + i] = (a[k + i] - f * b[i]) % M;
      if (a[k + i] < 0) a[k + i] += M;
    }
    trim(a);
  }
  trim(q);
  return {q, a};
}

// symmetric representative in (-M/2, M/2]
inline QPoly symmetric_lift(const Poly& a, const Int& M) {
  std::vector<Rat> c(a.size());
  Int half = M / 2;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Int x = a[i];
    if (x > half) x -= M;
    c[i] = Rat(x);
  }
  return QPoly(std::move(c));
}

inline Poly from_qpoly(const QPoly& f, const Int& M) {
  Poly a(f.c.size());
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    // caller guarantees integer coefficients
    Int x = num(f.c[i]) % M;
    if (x < 0) x += M;
    a[i] = x;
  }
  trim(a);
  return a;
}

inline Poly from_fp(const fp::Poly& f) {
  Poly a(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) a[i] = Int(f[i]);
  trim(a);
  return a;
}

}  // namespace zmod

// ---- Hensel lifting ---------------------------------------------------------

namespace detail_hensel {

// One quadratic step: f = A*B (mod M), u*A + v*B = 1 (mod M) -> same mod M^2.
// A, B monic; all inputs reduced mod M^2 on entry where needed.
inline void hensel_step(const zmod::Poly& f, zmod::Poly& A, zmod::Poly& B, zmod::Poly& u,
                        zmod::Poly& v, const Int& M2) {
  using namespace zmod;
  Poly e = sub(f, mul(A, B, M2), M2);
  auto [q, r] = divmod_monic(mul(v, e, M2), A, M2);
  Poly A1 = add(A, r, M2);
  Poly B1 = add(B, add(mul(u, e, M2), mul(q, B, M2), M2), M2);
  Poly d = sub(add(mul(u, A1, M2), mul(v, B1, M2), M2), Poly{Int(1)}, M2);
  auto [q2, r2] = divmod_monic(mul(u, d, M2), B1, M2);
  Poly u1 = sub(u, r2, M2);
  Poly v1 = sub(v, add(mul(v, d, M2), mul(q2, A1, M2), M2), M2);
  A = std::move(A1);
  B = std::move(B1);
  u = std::move(u1);
  v = std::move(v1);
}

// Lift the factorization f = prod(mods) from mod p to mod p^K (monic f).
inline void hensel_tree(const zmod::Poly& f, const std::vector<fp::Poly>& mods, std::size_t lo,
                        std::size_t hi, std::uint64_t p, const Int& PK,
                        std::vector<zmod::Poly>& out) {
  using namespace zmod;
  if (hi - lo == 1) {
    out.push_back(f);
    return;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  fp::Poly A0{1}, B0{1};
  for (std::size_t i = lo; i < mid; ++i) A0 = fp::mul(A0, mods[i], p);
  for (std::size_t i = mid; i < hi; ++i) B0 = fp::mul(B0, mods[i], p);
  auto [g, up, vp] = fp::xgcd(A0, B0, p);
  // mods are pairwise coprime mod p, so g = 1
  Poly A = from_fp(A0), B = from_fp(B0), u = from_fp(up), v = from_fp(vp);
  Int M = p;
  while (M < PK) {
    Int M2 = M * M;  // may overshoot PK; reduced afterwards
    Poly fr = reduce(f, M2);
    A = reduce(A, M2);
    B = reduce(B, M2);
    u = reduce(u, M2);
    v = reduce(v, M2);
    hensel_step(fr, A, B, u, v, M2);
    M = M2;
  }
  A = reduce(A, PK);
  B = reduce(B, PK);
  hensel_tree(A, mods, lo, mid, p, PK, out);
  hensel_tree(B, mods, mid, hi, p, PK, out);
}

}  // namespace detail_hensel

// ---- Zassenhaus over Z (monic squarefree input) -----------------------------

namespace detail_zass {

inline fp::Poly to_fp(const QPoly& f, std::uint64_t p) {
  fp::Poly a(f.c.size());
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    Int x = num(f.c[i]) % Int(p);
    if (x < 0) x += Int(p);
    a[i] = x.convert_to<std::uint64_t>();
  }
  fp::trim(a);
  return a;
}

// all monic integer irreducible factors of a monic squarefree integer poly
inline std::vector<QPoly> factor_monic_squarefree(const QPoly& f) {
  long n = f.degree();
  if (n <= 1) return {f};
  // choose a prime keeping f squarefree; among the first few, fewest factors
  static const std::uint64_t primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                         43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
                                         101, 103, 107, 109, 113, 127, 131, 137, 139, 149};
  std::uint64_t best_p = 0;
  std::vector<fp::Poly> best_factors;
  int good_seen = 0;
  for (std::uint64_t p : primes) {
    fp::Poly fp_f = to_fp(f, p);
    if (fp::deg(fp_f) != n) continue;  // p divides the leading coefficient (monic: impossible)
    fp::Poly g = fp::gcd(fp_f, fp::derivative(fp_f, p), p);
    if (fp::deg(g) != 0) continue;  // not squarefree mod p
    auto factors = fp::berlekamp(fp::monic(fp_f, p), p);
    if (best_p == 0 || factors.size() < best_factors.size()) {
      best_p = p;
      best_factors = std::move(factors);
    }
    if (++good_seen >= 4 || best_factors.size() == 1) break;
  }
  if (best_p == 0) throw Error("no good prime found for factorization");
  if (best_factors.size() == 1) return {f};
  std::uint64_t p = best_p;
  // Mignotte-style bound on factor coefficients: 2^n * ||f||_2
  Rat norm2 = 0;
  for (const auto& a : f.c) norm2 += a * a;
  Int l2 = boost::multiprecision::sqrt(num(norm2));
  l2 += 1;
  Int bound = (Int(1) << static_cast<unsigned>(n)) * l2;
  Int PK = p;
  while (PK <= 2 * bound) PK *= p;
  // lift
  std::vector<zmod::Poly> lifted;
  std::sort(best_factors.begin(), best_factors.end(),
            [](const fp::Poly& a, const fp::Poly& b) { return a.size() < b.size(); });
  detail_hensel::hensel_tree(zmod::from_qpoly(f, PK), best_factors, 0, best_factors.size(), p, PK,
                             lifted);
  // recombination
  std::vector<QPoly> result;
  QPoly rem = f;
  std::vector<std::size_t> alive(lifted.size());
  std::iota(alive.begin(), alive.end(), std::size_t(0));
  std::size_t subset_size = 1;
  while (alive.size() > 0 && subset_size <= alive.size()) {
    bool found = false;
    std::vector<std::size_t> idx(subset_size);
    std::iota(idx.begin(), idx.end(), std::size_t(0));
    while (true) {
      zmod::Poly prod{Int(1)};
      for (std::size_t k : idx) prod = zmod::mul(prod, lifted[alive[k]], PK);
      QPoly cand = zmod::symmetric_lift(prod, PK);
      auto [q, r] = poly_divmod(rem, cand);
      if (r.is_zero()) {
        bool integral = true;
        for (const auto& a : q.c)
          if (den(a) != 1) {
            integral = false;
            break;
          }
        if (integral) {
          result.push_back(cand);
          rem = q;
          std::vector<std::size_t> next_alive;
          for (std::size_t i2 = 0, k2 = 0; i2 < alive.size(); ++i2) {
            if (k2 < idx.size() && idx[k2] == i2)
              ++k2;
            else
              next_alive.push_back(alive[i2]);
          }
          alive = std::move(next_alive);
          found = true;
          break;
        }
      }
      // next combination
      long pos = static_cast<long>(subset_size) - 1;
      while (pos >= 0 && idx[pos] == alive.size() - subset_size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (std::size_t j = pos + 1; j < subset_size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++subset_size;
    if (2 * subset_size > alive.size() + 1) break;  // remainder is irreducible
  }
  if (rem.degree() > 0) result.push_back(rem);
  std::sort(result.begin(), result.end(), poly_less);
  return result;
}

}  // namespace detail_zass

// ---- public interface -------------------------------------------------------

struct PolyFactorization {
  Rat unit = 1;
  std::vector<std::pair<QPoly, unsigned>> factors;  // monic irreducible over Q

  QPoly value() const {
    QPoly v(unit);
    for (const auto& [f, e] : factors) v *= f.pow(e);
    return v;
  }
};

// Yun squarefree decomposition of a monic polynomial: returns (g_i, i) with
// f = prod g_i^i, g_i monic squarefree pairwise coprime
inline std::vector<std::pair<QPoly, unsigned>> squarefree_decomposition(const QPoly& f) {
  std::vector<std::pair<QPoly, unsigned>> out;
  QPoly g = poly_monic(f);
  if (g.degree() < 1) return out;
  QPoly gp = g.derivative();
  QPoly a = poly_gcd(g, gp);
  QPoly b = g / a;
  QPoly c = gp / a;
  QPoly d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    QPoly P = poly_gcd(b, d);
    if (P.degree() > 0) out.emplace_back(P, i);
    b = b / P;
    c = d / P;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

inline PolyFactorization factor_polynomial_Q(const QPoly& f) {
  if (f.is_zero()) throw ZeroInput();
  PolyFactorization out;
  out.unit = f.lead();
  if (f.degree() < 1) return out;
  for (const auto& [g, mult] : squarefree_decomposition(f)) {
    // monicize the primitive integer form: M(x) = l^(n-1) * P(x/l), integer monic
    QPoly P = poly_primitive(g);
    Int l = num(P.lead());
    long n = P.degree();
    QPoly M;
    {
      std::vector<Rat> c(P.c.size());
      // coefficient of x^i in M is a_i * l^(n-1-i); the leading term becomes 1
      for (long i2 = 0; i2 < n; ++i2) c[i2] = P.c[i2] * Rat(int_pow(l, n - 1 - i2));
      c[n] = 1;
      M = QPoly(std::move(c));
    }
    for (const auto& Mj : detail_zass::factor_monic_squarefree(M)) {
      // map back x -> l*x and re-monicize
      QPoly back;
      {
        std::vector<Rat> c(Mj.c.size());
        for (std::size_t i2 = 0; i2 < Mj.c.size(); ++i2) c[i2] = Mj.c[i2] * Rat(int_pow(l, i2));
        back = poly_monic(QPoly(std::move(c)));
      }
      out.factors.emplace_back(back, mult);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  return out;
}

inline bool poly_irreducible_Q(const QPoly& f) {
  if (f.degree() < 1) return false;
  auto fac = factor_polynomial_Q(f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

// all rational roots of a nonzero polynomial over Q
inline std::vector<Rat> rational_roots(const QPoly& f, const FactorEffort& effort = {}) {
  std::vector<Rat> roots;
  QPoly g = poly_primitive(f);
  // strip x^k
  std::size_t k = 0;
  while (k < g.c.size() && g.c[k] == 0) ++k;
  if (k > 0) {
    roots.push_back(Rat(0));
    std::vector<Rat> c(g.c.begin() + k, g.c.end());
    g = QPoly(std::move(c));
  }
  if (g.degree() < 1) return roots;
  Int a0 = iabs(num(g.constant_term()));
  Int an = iabs(num(g.lead()));
  auto d0 = divisors_of(factor_integer(a0, effort));
  auto dn = divisors_of(factor_integer(an, effort));
  for (const Int& u : d0) {
    for (const Int& w : dn) {
      if (boost::multiprecision::gcd(u, w) != 1) continue;
      for (int s : {1, -1}) {
        Rat cand(s * u, w);
        if (g.eval(cand) == 0) roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace unidyn
