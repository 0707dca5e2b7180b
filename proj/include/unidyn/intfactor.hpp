#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "common.hpp"

namespace unidyn {

struct IntFactorization {
  int unit = 1;  // +1 or -1
  std::vector<std::pair<Int, unsigned>> factors;  // (positive prime, multiplicity), primes ascending

  Int value() const {
    Int v = unit;
    for (const auto& [p, e] : factors) v *= int_pow(p, e);
    return v;
  }
};

struct FactorEffort {
  unsigned long trial_limit = 1000000;   // trial division bound
  unsigned long rho_iterations = 1000000;  // Pollard-rho iterations per composite
};

inline Int mulmod(const Int& a, const Int& b, const Int& m) { return a * b % m; }

inline Int powmod(Int b, Int e, const Int& m) {
  Int r = 1;
  b %= m;
  while (e > 0) {
    if (boost::multiprecision::bit_test(e, 0)) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// deterministic for n < 3.3e24 via fixed witness set; strong-probable-prime
// beyond that (inputs at that size never carry certificates here)
inline bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  unsigned long s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
    Int x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned long r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Pollard rho (Brent variant) with a hard iteration budget
inline std::optional<Int> pollard_rho(const Int& n, unsigned long budget) {
  if (n % 2 == 0) return Int(2);
  for (Int c = 1; c < 20; ++c) {
    Int x = 2, y = 2, d = 1;
    unsigned long it = 0;
    Int prod = 1;
    while (d == 1 && it < budget) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Int diff = x >= y ? Int(x - y) : Int(y - x);
      if (diff == 0) break;
      prod = prod * diff % n;
      if (++it % 64 == 0 || it >= budget) {
        d = boost::multiprecision::gcd(prod, n);
        prod = 1;
      }
    }
    if (d == 1) {
      Int g = boost::multiprecision::gcd(prod, n);
      if (g > 1 && g < n) return g;
    }
    if (d > 1 && d < n) return d;
    if (it >= budget) return std::nullopt;
  }
  return std::nullopt;
}

inline void factor_rec(const Int& n, std::map<Int, unsigned>& out, const FactorEffort& effort) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n] += 1;
    return;
  }
  auto d = pollard_rho(n, effort.rho_iterations);
  if (!d) throw FactorizationTimeout();
  factor_rec(*d, out, effort);
  factor_rec(n / *d, out, effort);
}

inline IntFactorization factor_integer(Int n, const FactorEffort& effort = {}) {
  if (n == 0) throw ZeroInput();
  IntFactorization f;
  if (n < 0) {
    f.unit = -1;
    n = -n;
  }
  std::map<Int, unsigned> m;
  for (unsigned long p = 2; p <= effort.trial_limit && Int(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
    while (n % p == 0) {
      m[Int(p)] += 1;
      n /= p;
    }
  }
  factor_rec(n, m, effort);
  for (auto& [p, e] : m) f.factors.emplace_back(p, e);
  return f;
}

// all positive divisors, ascending
inline std::vector<Int> divisors_of(const IntFactorization& f) {
  std::vector<Int> ds{1};
  for (const auto& [p, e] : f.factors) {
    std::size_t sz = ds.size();
    Int pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline long valuation_int(const Int& x, const Int& p) {
  if (x == 0) throw ZeroInput();
  long v = 0;
  Int y = x;
  while (y % p == 0) {
    y /= p;
    ++v;
  }
  return v;
}

inline long valuation_rat(const Rat& q, const Int& p) {
  if (q == 0) throw ZeroInput();
  long v = 0;
  if (num(q) % p == 0) return valuation_int(num(q), p);
  if (den(q) % p == 0) return -valuation_int(den(q), p);
  return v;
}

}  // namespace unidyn
