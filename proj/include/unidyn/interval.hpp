#pragma once

#include <mpfr.h>

#include <vector>

#include "common.hpp"

namespace unidyn {

// Minimal interval arithmetic on MPFR numbers with directed rounding.
// Only what the Mahler-measure engine needs: +, -, *, abs bounds, log.
class MpfrInterval {
 public:
  mpfr_t lo, hi;
  static constexpr mpfr_prec_t kPrec = 192;

  // Graeffe squaring reaches magnitudes ~M^(2^48); widen the exponent range
  // once per process so those values stay finite.
  static void extend_exponent_range() {
    static const bool done = [] {
      mpfr_set_emax(mpfr_get_emax_max());
      mpfr_set_emin(mpfr_get_emin_min());
      return true;
    }();
    (void)done;
  }

  MpfrInterval() {
    extend_exponent_range();
    mpfr_init2(lo, kPrec);
    mpfr_init2(hi, kPrec);
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
  }
  explicit MpfrInterval(const Int& v) : MpfrInterval() {
    std::string s = v.str();
    mpfr_set_str(lo, s.c_str(), 10, MPFR_RNDD);
    mpfr_set_str(hi, s.c_str(), 10, MPFR_RNDU);
  }
  MpfrInterval(const MpfrInterval& o) : MpfrInterval() {
    mpfr_set(lo, o.lo, MPFR_RNDD);
    mpfr_set(hi, o.hi, MPFR_RNDU);
  }
  MpfrInterval& operator=(const MpfrInterval& o) {
    if (this != &o) {
      mpfr_set(lo, o.lo, MPFR_RNDD);
      mpfr_set(hi, o.hi, MPFR_RNDU);
    }
    return *this;
  }
  ~MpfrInterval() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }

  friend MpfrInterval operator+(const MpfrInterval& a, const MpfrInterval& b) {
    MpfrInterval r;
    mpfr_add(r.lo, a.lo, b.lo, MPFR_RNDD);
    mpfr_add(r.hi, a.hi, b.hi, MPFR_RNDU);
    return r;
  }
  friend MpfrInterval operator-(const MpfrInterval& a, const MpfrInterval& b) {
    MpfrInterval r;
    mpfr_sub(r.lo, a.lo, b.hi, MPFR_RNDD);
    mpfr_sub(r.hi, a.hi, b.lo, MPFR_RNDU);
    return r;
  }
  friend MpfrInterval operator*(const MpfrInterval& a, const MpfrInterval& b) {
    MpfrInterval r;
    mpfr_t t;
    mpfr_init2(t, kPrec);
    // lower bound: min of the four products rounded down
    mpfr_mul(r.lo, a.lo, b.lo, MPFR_RNDD);
    mpfr_mul(t, a.lo, b.hi, MPFR_RNDD);
    mpfr_min(r.lo, r.lo, t, MPFR_RNDD);
    mpfr_mul(t, a.hi, b.lo, MPFR_RNDD);
    mpfr_min(r.lo, r.lo, t, MPFR_RNDD);
    mpfr_mul(t, a.hi, b.hi, MPFR_RNDD);
    mpfr_min(r.lo, r.lo, t, MPFR_RNDD);
    // upper bound: max of the four products rounded up
    mpfr_mul(r.hi, a.lo, b.lo, MPFR_RNDU);
    mpfr_mul(t, a.lo, b.hi, MPFR_RNDU);
    mpfr_max(r.hi, r.hi, t, MPFR_RNDU);
    mpfr_mul(t, a.hi, b.lo, MPFR_RNDU);
    mpfr_max(r.hi, r.hi, t, MPFR_RNDU);
    mpfr_mul(t, a.hi, b.hi, MPFR_RNDU);
    mpfr_max(r.hi, r.hi, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
  }

  MpfrInterval operator-() const {
    MpfrInterval r;
    mpfr_neg(r.lo, hi, MPFR_RNDD);
    mpfr_neg(r.hi, lo, MPFR_RNDU);
    return r;
  }

  // certified lower bound on |x| over the interval (0 when it straddles 0)
  void abs_lower(mpfr_t out) const {
    if (mpfr_sgn(lo) > 0) {
      mpfr_set(out, lo, MPFR_RNDD);
    } else if (mpfr_sgn(hi) < 0) {
      mpfr_neg(out, hi, MPFR_RNDD);
    } else {
      mpfr_set_zero(out, 1);
    }
  }
  // certified upper bound on |x|
  void abs_upper(mpfr_t out) const {
    mpfr_t t;
    mpfr_init2(t, kPrec);
    mpfr_abs(out, lo, MPFR_RNDU);
    mpfr_abs(t, hi, MPFR_RNDU);
    mpfr_max(out, out, t, MPFR_RNDU);
    mpfr_clear(t);
  }
};

}  // namespace unidyn
