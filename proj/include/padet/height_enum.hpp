#pragma once

// Rationals of bounded height, the ball census and the separation lemma.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "padet/bounds.hpp"
#include "padet/geometry.hpp"

namespace padet {

// Constraint v_p(x) >= k, as a ball.
inline Ball min_valuation(std::int64_t k) { return {Rational(0), k - 1}; }

namespace detail {

inline bool height_less(const Rational& a, const Rational& b) {
  auto ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  if (a.get_num() != b.get_num()) return a.get_num() < b.get_num();
  return a.get_den() < b.get_den();
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

// Calls visit(a, b) for each reduced a/b of height <= h satisfying the
// constraint, grouped by denominator. For constraints inside O_K only the
// numerators in the right residue class modulo p^(k+1) are generated.
template <class Visit>
void for_each_rational(long h, const std::optional<Ball>& constraint, Prime p, Visit&& visit) {
  if (h < 1) return;
  const bool progression = constraint && constraint->subset_of(valuation_ring(), p);
  Integer step(1);
  if (progression) step = ipow(p, static_cast<unsigned long>(constraint->radius_exp + 1));
  const Integer bound(h);
  for (long b = 1; b <= h; ++b) {
    if (progression) {
      if (b % static_cast<long>(p) == 0) continue;
      Integer t = residue_mod(constraint->center * Rational(b), p, static_cast<std::uint64_t>(constraint->radius_exp + 1));
      Integer a = t - detail::floor_div(t + bound, step) * step;
      for (; a <= bound; a += step) {
        long ai = a.get_si();
        if (ai == 0 ? b != 1 : std::gcd(std::abs(ai), b) != 1) continue;
        visit(ai, b);
      }
    } else {
      for (long a = -h; a <= h; ++a) {
        if (a == 0 ? b != 1 : std::gcd(std::abs(a), b) != 1) continue;
        if (constraint && !constraint->contains(Rational(a, b), p)) continue;
        visit(a, b);
      }
    }
  }
}

// Reduced a/b with height <= h inside the constraint, sorted by
// (height, numerator, denominator).
inline std::vector<Rational> enum_rationals(long h, const std::optional<Ball>& constraint, Prime p) {
  std::vector<Rational> out;
  for_each_rational(h, constraint, p, [&](long a, long b) { out.emplace_back(a, b); });
  std::sort(out.begin(), out.end(), detail::height_less);
  return out;
}

struct CensusReport {
  std::vector<RvClass> classes;
  Interval bound;  // 2 M p^(N+1) (1 + 2 log_p H)
  bool ok = true;

  std::size_t count() const { return classes.size(); }
};

// 2 M p^(N+1) (1 + 2 log_p H).
inline Interval census_bound(const Integer& m, long n, long h, Prime p) {
  Interval scale(Integer(Integer(2) * m * ipow(p, static_cast<unsigned long>(n + 1))));
  return scale * (Interval(Integer(1)) + Interval(Integer(2)) * log_base(Integer(h), p));
}

// count <= D (1 + 2 log_p H), D = 2 M p^(N+1), decided exactly:
// equivalent to p^(count - D) <= H^(2D) when count > D.
inline bool census_bound_holds(std::size_t count, const Integer& m, long n, long h, Prime p, const Interval& bound) {
  Integer d = Integer(2) * m * ipow(p, static_cast<unsigned long>(n + 1));
  Integer q(static_cast<unsigned long>(count));
  if (q <= d) return true;
  switch (bound.integer_at_most(q)) {
    case Interval::Cmp::Holds: return true;
    case Interval::Cmp::Fails: return false;
    case Interval::Cmp::Undecided: break;
  }
  if (!d.fits_ulong_p() || d > 1'000'000) throw IndeterminateBound("census bound too close to call");
  Integer excess = q - d;
  return ipow(p, excess.get_ui()) <= ipow(Integer(h), 2 * d.get_ui());
}

// Nonzero RV classes w.r.t. (c, M p^N) holding a rational of height <= H.
inline CensusReport ball_census(const Rational& c, const Integer& m, long n, long h, Prime p,
                                const std::optional<Ball>& domain = std::nullopt) {
  if (m <= 0 || n < 0 || h < 1) throw std::invalid_argument("ball_census: need M >= 1, N >= 0, H >= 1");
  Integer modulus_n = m * ipow(p, static_cast<unsigned long>(n));
  std::set<RvClass, RvClassLess> seen;
  for_each_rational(h, domain, p, [&](long a, long b) {
    Rational x(a, b);
    if (x != c) seen.insert(rv_class(x, c, modulus_n, p));
  });
  CensusReport out;
  out.classes.assign(seen.begin(), seen.end());
  out.bound = census_bound(m, n, h, p);
  out.ok = census_bound_holds(out.count(), m, n, h, p, out.bound);
  return out;
}

struct PairWitness {
  Rational x, y;
  std::string reason;
};

struct SeparationReport {
  std::size_t m = 0;
  Integer bound;  // p^(N+1)
  std::vector<PairWitness> hypothesis_failures;
  bool hypotheses_hold() const { return hypothesis_failures.empty(); }
  bool conclusion_holds = true;  // meaningful only when the hypotheses hold
};

// Pairwise: |x_i - x_j| >= |p^N| |x_i - c| and |x_i - c| = |x_j - c|.
inline bool separation_compatible(const Rational& x, const Rational& y, const Rational& c, long n, Prime p) {
  auto vx = valuation(x - c, p);
  if (vx != valuation(y - c, p)) return false;
  return valuation(x - y, p) <= vx + ExtInt(n);
}

// The points are treated as a set; duplicates are dropped first.
inline SeparationReport check_separation(std::vector<Rational> points, const Rational& c, long n, Prime p) {
  std::sort(points.begin(), points.end(), RationalLess{});
  points.erase(std::unique(points.begin(), points.end()), points.end());
  SeparationReport out;
  out.m = points.size();
  out.bound = ipow(p, static_cast<unsigned long>(n + 1));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const auto& x = points[i];
      const auto& y = points[j];
      if (valuation(x - c, p) != valuation(y - c, p))
        out.hypothesis_failures.push_back({x, y, "|x-c| != |y-c|"});
      else if (valuation(x - y, p) > valuation(x - c, p) + ExtInt(n))
        out.hypothesis_failures.push_back({x, y, "|x-y| < |p^N||x-c|"});
    }
  }
  if (out.hypotheses_hold()) out.conclusion_holds = Integer(static_cast<unsigned long>(out.m)) <= out.bound;
  return out;
}

struct BallGroup {
  Ball ball;
  std::vector<Rational> points;
};

// Points grouped by the radius-p^(-k) ball containing them, in canonical
// ball order; input order is kept inside each group.
inline std::vector<BallGroup> group_by_small_ball(std::span<const Rational> points, const Ball& domain, std::int64_t k,
                                                  Prime p) {
  if (k < domain.radius_exp) throw BadRadius("grouping radius is coarser than the domain");
  std::map<Ball, std::vector<Rational>, BallLess> groups;
  for (const auto& x : points) {
    if (!domain.contains(x, p)) throw DomainError("point " + format_rational(x) + " lies outside the domain");
    groups[canonical(Ball{x, k}, p)].push_back(x);
  }
  std::vector<BallGroup> out;
  out.reserve(groups.size());
  for (auto& [ball, pts] : groups) out.push_back({ball, std::move(pts)});
  return out;
}

}  // namespace padet
