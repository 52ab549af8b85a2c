#pragma once

// Real-valued bounds with directed rounding on top of MPFR. Only the
// monotone operations needed here are provided; every operand of mul, div
// and log must be positive.

#include <mpfr.h>

#include <string>

#include "padet/padic.hpp"

namespace padet {

inline constexpr mpfr_prec_t kBoundPrecision = 256;

class Interval {
 public:
  Interval() {
    mpfr_init2(lo_, kBoundPrecision);
    mpfr_init2(hi_, kBoundPrecision);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  explicit Interval(const Integer& n) : Interval() {
    mpfr_set_z(lo_, n.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_, n.get_mpz_t(), MPFR_RNDU);
  }
  explicit Interval(const Rational& q) : Interval() {
    mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
  }
  Interval(const Interval& o) : Interval() {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Interval& operator=(const Interval& o) {
    if (this != &o) {
      mpfr_set(lo_, o.lo_, MPFR_RNDD);
      mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
  }
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval out;
    mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval out;
    mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return out;
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    a.require_nonnegative();
    b.require_nonnegative();
    Interval out;
    mpfr_mul(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    a.require_nonnegative();
    if (mpfr_sgn(b.lo_) <= 0) throw std::domain_error("interval division by a non-positive interval");
    Interval out;
    mpfr_div(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_div(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return out;
  }

  friend Interval log(const Interval& a) {
    if (mpfr_sgn(a.lo_) <= 0) throw std::domain_error("interval log of a non-positive interval");
    Interval out;
    mpfr_log(out.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(out.hi_, a.hi_, MPFR_RNDU);
    return out;
  }
  friend Interval exp(const Interval& a) {
    Interval out;
    mpfr_exp(out.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(out.hi_, a.hi_, MPFR_RNDU);
    return out;
  }

  // Sign of the interval when decided: +1, -1, or 0 when it straddles 0.
  int certain_sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
  }

  // n <= x certainly / certainly not / undecided.
  enum class Cmp { Holds, Fails, Undecided };
  Cmp integer_at_most(const Integer& n) const {
    if (mpfr_cmp_z(lo_, n.get_mpz_t()) >= 0) return Cmp::Holds;
    if (mpfr_cmp_z(hi_, n.get_mpz_t()) < 0) return Cmp::Fails;
    return Cmp::Undecided;
  }

 private:
  void require_nonnegative() const {
    if (mpfr_sgn(lo_) < 0) throw std::domain_error("interval operand is not non-negative");
  }

  mpfr_t lo_, hi_;
};

// log_p H for H >= 1.
inline Interval log_base(const Integer& h, Prime p) {
  if (h == 1) return Interval(Integer(0));
  return log(Interval(h)) / log(Interval(Integer(p)));
}

// x^q for x >= 1 and rational q >= 0.
inline Interval rational_power(const Integer& x, const Rational& q) {
  if (x == 1 || q == 0) return Interval(Integer(1));
  return exp(Interval(q) * log(Interval(x)));
}

}  // namespace padet
