#pragma once

// Exact rationals with p-adic valuation, heights and norm comparison.
//
// Elements of the valued field are modelled as rationals inside Q_p. The
// prime is carried by the caller, never by the value, so one rational can be
// inspected under several primes.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "padet/errors.hpp"

namespace padet {

using Integer = mpz_class;
// Canonical form (gcd 1, positive denominator, 0 == 0/1) is maintained by
// every arithmetic operation of mpq_class; parse_rational canonicalizes input.
using Rational = mpq_class;
using Prime = unsigned long;

// Integer or +infinity. Used for valuations, where +inf is v(0).
class ExtInt {
 public:
  constexpr ExtInt() = default;
  constexpr ExtInt(std::int64_t v) : value_(v) {}  // NOLINT: implicit on purpose

  static constexpr ExtInt infinity() {
    ExtInt e;
    e.inf_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }

  // Precondition: finite.
  std::int64_t value() const {
    if (inf_) throw std::logic_error("ExtInt::value on +inf");
    return value_;
  }

  friend constexpr bool operator==(const ExtInt& a, const ExtInt& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.value_ <=> b.value_;
  }
  friend constexpr ExtInt operator+(const ExtInt& a, const ExtInt& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtInt(a.value_ + b.value_);
  }
  friend constexpr ExtInt operator-(const ExtInt& a, std::int64_t b) {
    if (a.inf_) return infinity();
    return ExtInt(a.value_ - b);
  }
  friend constexpr ExtInt operator*(std::int64_t k, const ExtInt& a) {
    if (a.inf_) return k == 0 ? ExtInt(0) : infinity();
    return ExtInt(k * a.value_);
  }

  std::string str() const { return inf_ ? std::string("inf") : std::to_string(value_); }

  friend std::ostream& operator<<(std::ostream& os, const ExtInt& e) { return os << e.str(); }

 private:
  std::int64_t value_ = 0;
  bool inf_ = false;
};

inline ExtInt min(const ExtInt& a, const ExtInt& b) { return a < b ? a : b; }

// Norm value p^(-exponent); exponent +inf is |0|.
struct GammaElement {
  ExtInt exponent;

  friend bool operator==(const GammaElement&, const GammaElement&) = default;
};

inline GammaElement operator*(const GammaElement& a, const GammaElement& b) {
  return {a.exponent + b.exponent};
}

// |a| <= |b| in Gamma. Larger exponent means smaller norm.
inline bool ultrametric_leq(const GammaElement& a, const GammaElement& b) {
  return a.exponent >= b.exponent;
}

inline bool is_prime(Prime p) {
  if (p < 2) return false;
  for (Prime q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

inline void require_prime(Prime p) {
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

// v_p of a nonzero integer; +inf for zero.
inline ExtInt valuation(const Integer& n, Prime p) {
  if (n == 0) return ExtInt::infinity();
  Integer rest;
  Integer prime(p);
  auto count = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t());
  return ExtInt(static_cast<std::int64_t>(count));
}

inline ExtInt valuation(const Rational& q, Prime p) {
  if (q == 0) return ExtInt::infinity();
  return ExtInt(valuation(q.get_num(), p).value() - valuation(q.get_den(), p).value());
}

inline GammaElement norm(const Rational& q, Prime p) { return {valuation(q, p)}; }

inline bool is_p_integral(const Rational& q, Prime p) {
  return mpz_divisible_ui_p(q.get_den().get_mpz_t(), p) == 0;
}

inline Integer height(const Rational& q) {
  Integer num = abs(q.get_num());
  return num > q.get_den() ? num : Integer(q.get_den());
}

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline Integer ipow(Prime base, unsigned long exp) { return ipow(Integer(base), exp); }

// p^k for any integer k, as a rational.
// a/b in lowest terms; b != 0.
inline Rational fraction(long a, long b) {
  if (b == 0) throw std::invalid_argument("zero denominator");
  Rational q(a, b);
  q.canonicalize();
  return q;
}

inline Rational ppow(Prime p, std::int64_t k) {
  if (k >= 0) return Rational(ipow(p, static_cast<unsigned long>(k)));
  return Rational(Integer(1), ipow(p, static_cast<unsigned long>(-k)));
}

// Legendre: v_p(n!) = sum floor(n / p^i).
inline std::int64_t factorial_valuation(std::uint64_t n, Prime p) {
  std::int64_t total = 0;
  for (std::uint64_t q = n / p; q > 0; q /= p) total += static_cast<std::int64_t>(q);
  return total;
}

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

// Unit part u = q p^(-v(q)) reduced to an integer in [0, p^e).
// Precondition: q != 0.
inline Integer unit_residue(const Rational& q, Prime p, std::uint64_t e) {
  Integer modulus = ipow(p, e);
  if (e == 0) return 0;
  auto v = valuation(q, p).value();
  Rational u = q / ppow(p, v);
  Integer inv;
  Integer den = u.get_den();
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw std::logic_error("unit_residue: denominator not invertible");
  Integer out = (Integer(u.get_num()) * inv) % modulus;
  if (out < 0) out += modulus;
  return out;
}

// Reduction of a p-integral rational modulo p^e into [0, p^e).
inline Integer residue_mod(const Rational& q, Prime p, std::uint64_t e) {
  if (!is_p_integral(q, p)) throw DomainError("residue_mod: value is not p-integral");
  Integer modulus = ipow(p, e);
  if (e == 0) return 0;
  Integer inv;
  Integer den = q.get_den();
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
  Integer out = (Integer(q.get_num()) * inv) % modulus;
  if (out < 0) out += modulus;
  return out;
}

// Accepts "n", "-n", "n/d". Rejects zero denominators and junk.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num, true) || !valid(den, false))
    throw std::invalid_argument("not a rational: '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

// "num/den", denominator omitted when 1.
inline std::string format_rational(const Rational& q) { return q.get_str(); }

// Total order on rationals used for deterministic output.
struct RationalLess {
  bool operator()(const Rational& a, const Rational& b) const { return cmp(a, b) < 0; }
};

}  // namespace padet
