#pragma once

// Open balls, RV_N residue classes and the "N-next to c" relation.
//
// The value group is Z, so the open ball of radius p^(-k) around a is the
// coset a + p^(k+1) Z_p and every partition below is a finite enumeration.
// For N = M p^nu with p not dividing M only nu = v_p(N) matters; M is
// accepted for readability at call sites but has norm 1.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "padet/padic.hpp"

namespace padet {

struct Ball {
  Rational center;
  std::int64_t radius_exp = 0;  // open ball of radius p^(-radius_exp)

  bool contains(const Rational& x, Prime p) const {
    return valuation(x - center, p) > ExtInt(radius_exp);
  }

  // Same point set. Any member is a valid centre.
  bool same_set(const Ball& other, Prime p) const {
    return radius_exp == other.radius_exp && contains(other.center, p);
  }

  bool subset_of(const Ball& other, Prime p) const {
    return radius_exp >= other.radius_exp && other.contains(center, p);
  }
};

inline Ball valuation_ring() { return {Rational(0), -1}; }
inline Ball maximal_ideal() { return {Rational(0), 0}; }

// Smallest non-negative integer representative when the ball meets Z.
// Otherwise the centre is t / p^s with s = -v(center) and 0 <= t < p^(s+k+1).
inline Ball canonical(const Ball& b, Prime p) {
  if (b.contains(Rational(0), p)) return {Rational(0), b.radius_exp};
  std::int64_t s = std::max<std::int64_t>(0, -valuation(b.center, p).value());
  auto e = static_cast<std::uint64_t>(s + b.radius_exp + 1);
  Rational shifted = b.center * ppow(p, s);
  return {Rational(residue_mod(shifted, p, e)) / ppow(p, s), b.radius_exp};
}

// Deterministic order on canonical balls: radius first, then centre.
struct BallLess {
  bool operator()(const Ball& a, const Ball& b) const {
    if (a.radius_exp != b.radius_exp) return a.radius_exp < b.radius_exp;
    return cmp(a.center, b.center) < 0;
  }
};

struct RvClass {
  bool zero = false;
  std::int64_t v = 0;     // v_p(x - c)
  Integer residue;        // unit part of x - c modulo `modulus`
  Integer modulus;        // p^(nu + 1), nu = v_p(N)

  friend bool operator==(const RvClass& a, const RvClass& b) {
    if (a.zero || b.zero) return a.zero == b.zero;
    return a.v == b.v && a.residue == b.residue && a.modulus == b.modulus;
  }
};

struct RvClassLess {
  bool operator()(const RvClass& a, const RvClass& b) const {
    if (a.zero != b.zero) return a.zero;
    if (a.v != b.v) return a.v < b.v;
    if (a.modulus != b.modulus) return a.modulus < b.modulus;
    return a.residue < b.residue;
  }
};

inline std::int64_t nu_of(const Integer& n, Prime p) {
  if (n <= 0) throw std::invalid_argument("N must be a positive integer");
  return valuation(n, p).value();
}

inline RvClass rv_class(const Rational& x, const Rational& c, const Integer& n, Prime p) {
  auto nu = nu_of(n, p);
  RvClass out;
  out.modulus = ipow(p, static_cast<unsigned long>(nu + 1));
  Rational diff = x - c;
  if (diff == 0) {
    out.zero = true;
    return out;
  }
  out.v = valuation(diff, p).value();
  out.residue = unit_residue(diff, p, static_cast<std::uint64_t>(nu + 1));
  return out;
}

// The ball N-next to c making up a nonzero class.
inline Ball ball_of_class(const RvClass& k, const Rational& c, Prime p) {
  if (k.zero) throw std::invalid_argument("the zero class is not a ball");
  auto radius = k.v + static_cast<std::int64_t>(valuation(k.modulus, p).value()) - 1;
  return {c + ppow(p, k.v) * Rational(k.residue), radius};
}

// The ball N-next to c through x (x != c).
inline Ball ball_next_to(const Rational& x, const Rational& c, const Integer& n, Prime p) {
  if (x == c) throw MembershipError("x coincides with the centre");
  return {x, valuation(x - c, p).value() + nu_of(n, p)};
}

// x, y lie in the same ball N-next to C iff v(x-y) > v(x-c) + v(N) for all c.
inline bool same_ball_next_to(const Rational& x, const Rational& y, std::span<const Rational> centres,
                              const Integer& n, Prime p) {
  auto nu = nu_of(n, p);
  for (const auto& c : centres)
    if (x == c || y == c) throw MembershipError("point lies in the finite set C");
  ExtInt gap = valuation(x - y, p);
  return std::all_of(centres.begin(), centres.end(), [&](const Rational& c) {
    return gap > valuation(x - c, p) + ExtInt(nu);
  });
}

inline constexpr std::uint64_t kMaxPartition = std::uint64_t(1) << 22;

// The p^(k - radius) sub-balls of radius p^(-k), ascending by representative.
inline std::vector<Ball> partition_into_small_balls(const Ball& domain, std::int64_t k, Prime p) {
  if (k < domain.radius_exp) throw BadRadius("partition radius is coarser than the domain");
  auto levels = static_cast<unsigned long>(k - domain.radius_exp);
  Integer count = ipow(p, levels);
  if (count > kMaxPartition) throw BadRadius("partition too large to enumerate");
  Ball base = canonical(domain, p);
  Rational step = ppow(p, domain.radius_exp + 1);
  std::vector<Ball> out;
  auto n = count.get_ui();
  out.reserve(n);
  for (unsigned long t = 0; t < n; ++t)
    out.push_back(canonical(Ball{base.center + Rational(t) * step, k}, p));
  std::sort(out.begin(), out.end(), BallLess{});
  return out;
}

}  // namespace padet
