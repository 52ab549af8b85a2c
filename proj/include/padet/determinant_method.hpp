#pragma once

// The Bombieri-Pila style determinant method for graphs of parametrizing
// maps: explicit constants, monomial determinants, the valuation estimate
// for determinants of T_r functions, and catching every rational point of
// height <= H on few algebraic curves of degree <= d.

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "padet/bounds.hpp"
#include "padet/function_model.hpp"
#include "padet/height_enum.hpp"
#include "padet/linalg.hpp"
#include "padet/parallel.hpp"

namespace padet {

struct Point {
  Rational x, y;

  friend bool operator==(const Point&, const Point&) = default;
};

struct PointLess {
  bool operator()(const Point& a, const Point& b) const {
    if (int s = cmp(a.x, b.x)) return s < 0;
    return cmp(a.y, b.y) < 0;
  }
};

struct MethodConstants {
  unsigned d = 1;
  unsigned r = 1;  // binom(d+2, 2), number of monomials of degree <= d
  unsigned e = 0;  // binom(r, 2)
  Rational epsilon;  // 6rd/e

  Rational alpha() const { return epsilon / 2; }  // 3rd/e
};

inline MethodConstants constants(unsigned d) {
  if (d < 1) throw std::invalid_argument("degree d must be at least 1");
  MethodConstants k;
  k.d = d;
  k.r = (d + 2) * (d + 1) / 2;
  k.e = k.r * (k.r - 1) / 2;
  k.epsilon = Rational(6 * k.r * d, k.e);
  k.epsilon.canonicalize();
  return k;
}

// r! H^(3rd), the archimedean bound on the cleared determinant.
inline Integer cleared_determinant_bound(unsigned d, long h) {
  auto k = constants(d);
  return factorial(k.r) * ipow(Integer(h), 3ul * k.r * d);
}

// Least N with p^(N e) > r! H^(3rd).
inline long threshold_N(unsigned d, long h, Prime p) {
  if (h < 1) throw std::invalid_argument("height bound must be at least 1");
  auto k = constants(d);
  Integer target = cleared_determinant_bound(d, h);
  Integer step = ipow(p, k.e);
  Integer acc = step;
  long n = 1;
  while (acc <= target) {
    acc *= step;
    ++n;
  }
  return n;
}

// (j, k) for monomials x^j y^k, j + k <= d: total degree ascending, then j descending.
inline std::vector<std::pair<unsigned, unsigned>> monomials(unsigned d) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned t = 0; t <= d; ++t)
    for (unsigned j = t + 1; j-- > 0;) out.emplace_back(j, t - j);
  return out;
}

inline RationalMatrix monomial_matrix(std::span<const Point> points, unsigned d) {
  auto mons = monomials(d);
  RationalMatrix m(points.size(), mons.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t c = 0; c < mons.size(); ++c) {
      Rational v(1);
      for (unsigned a = 0; a < mons[c].first; ++a) v *= points[i].x;
      for (unsigned b = 0; b < mons[c].second; ++b) v *= points[i].y;
      m(i, c) = v;
    }
  }
  return m;
}

// Integer polynomial sum c_jk x^j y^k of degree <= d; content 1 and the
// leading coefficient (last nonzero in monomial order) positive.
class AlgebraicCurve {
 public:
  AlgebraicCurve(unsigned d, std::vector<Integer> coeffs) : d_(d), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != monomials(d).size()) throw std::invalid_argument("coefficient count does not match degree");
    normalize();
  }

  static AlgebraicCurve from_terms(unsigned d, const std::map<std::pair<unsigned, unsigned>, Integer>& terms) {
    auto mons = monomials(d);
    std::vector<Integer> c(mons.size());
    for (const auto& [jk, v] : terms) {
      auto it = std::find(mons.begin(), mons.end(), jk);
      if (it == mons.end()) throw std::invalid_argument("monomial exceeds the degree bound");
      c[static_cast<std::size_t>(it - mons.begin())] = v;
    }
    return AlgebraicCurve(d, std::move(c));
  }

  unsigned degree_bound() const { return d_; }
  const std::vector<Integer>& coefficients() const { return coeffs_; }

  Rational operator()(const Rational& x, const Rational& y) const {
    auto mons = monomials(d_);
    Rational acc(0);
    for (std::size_t i = 0; i < mons.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      Rational t(coeffs_[i]);
      for (unsigned a = 0; a < mons[i].first; ++a) t *= x;
      for (unsigned b = 0; b < mons[i].second; ++b) t *= y;
      acc += t;
    }
    return acc;
  }

  // x -> P(x, g(x)).
  poly::Coeffs substitute(const poly::Coeffs& g) const {
    auto mons = monomials(d_);
    std::vector<poly::Coeffs> gpow{{Rational(1)}};
    for (unsigned k = 1; k <= d_; ++k) gpow.push_back(poly::mul(gpow.back(), g));
    poly::Coeffs out;
    for (std::size_t i = 0; i < mons.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      poly::Coeffs term(mons[i].first + 1, Rational(0));
      term[mons[i].first] = Rational(coeffs_[i]);
      out = poly::add(out, poly::mul(term, gpow[mons[i].second]));
    }
    return out;
  }

  friend bool operator==(const AlgebraicCurve& a, const AlgebraicCurve& b) {
    return a.d_ == b.d_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator<(const AlgebraicCurve& a, const AlgebraicCurve& b) {
    if (a.d_ != b.d_) return a.d_ < b.d_;
    return a.coeffs_ < b.coeffs_;
  }

 private:
  void normalize() {
    Integer g(0);
    for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 0) throw std::invalid_argument("the zero polynomial is not a curve");
    std::size_t lead = coeffs_.size();
    while (coeffs_[lead - 1] == 0) --lead;
    if (coeffs_[lead - 1] < 0) g = -g;
    for (auto& c : coeffs_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }

  unsigned d_;
  std::vector<Integer> coeffs_;
};

// A curve of degree <= d through all points: the kernel vector of the
// monomial matrix attached to the first free column.
inline AlgebraicCurve fit_vanishing_curve(std::span<const Point> points, unsigned d) {
  auto kernel = first_kernel_vector(monomial_matrix(points, d));
  if (!kernel)
    throw RankFull("monomial matrix of " + std::to_string(points.size()) + " points has full rank for degree " +
                   std::to_string(d));
  return AlgebraicCurve(d, std::move(*kernel));
}

struct DetReport {
  Rational det;
  ExtInt valuation;
  std::int64_t required = 0;  // k e
  ExtInt slack() const { return valuation - required; }
  bool ok = true;
};

// |det(f_i(x_j))| <= lambda^e for T_r functions on a ball of radius
// lambda = p^(-k). Polynomial models with p-integral coefficients are T_r on
// every ball inside O_K, so only polynomial models are accepted.
inline DetReport det_valuation_check(std::span<const FunctionModel> functions, const Ball& ball,
                                     std::span<const Rational> points) {
  if (functions.empty() || functions.size() != points.size())
    throw std::invalid_argument("need r >= 1 functions and exactly r points");
  const Prime p = functions.front().prime();
  if (!ball.subset_of(valuation_ring(), p)) throw DomainError("ball is not contained in O_K");
  for (const auto& f : functions)
    if (!f.is_polynomial()) throw DomainError("determinant estimate is checked on polynomial models only");
  for (const auto& x : points)
    if (!ball.contains(x, p)) throw DomainError("point " + format_rational(x) + " lies outside the ball");
  const auto r = functions.size();
  RationalMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m(i, j) = poly::eval(functions[i].coefficients(), points[j]);
  DetReport out;
  out.det = determinant(m);
  out.valuation = valuation(out.det, p);
  auto e = static_cast<std::int64_t>(r * (r - 1) / 2);
  out.required = ball.radius_exp * e;
  out.ok = out.valuation >= ExtInt(out.required);
  return out;
}

// The constant m(d, p): least m with 4 p^3 r! (1 + 2 log_p H) <= m H^(3rd/e)
// for all real H >= 1. With u = ln H the left side over H^alpha peaks at
// u* = 1/alpha - ln(p)/2 when that is positive, else at H = 1.
struct MConstant {
  bool attained_at_one = true;
  Integer exact;   // valid when attained_at_one
  Interval value;  // always valid
};

inline MConstant constant_m(unsigned d, Prime p) {
  auto k = constants(d);
  Integer base = Integer(4) * ipow(p, 3) * factorial(k.r);
  Interval alpha(k.alpha());
  Interval lnp = log(Interval(Integer(p)));
  Interval slope = alpha * lnp - Interval(Integer(2));
  MConstant out;
  switch (slope.certain_sign()) {
    case 1:
      out.exact = base;
      out.value = Interval(base);
      return out;
    case -1:
      break;
    default:
      throw IndeterminateBound("cannot decide where (1 + 2 log_p H) H^(-3rd/e) peaks");
  }
  out.attained_at_one = false;
  Interval two(Integer(2));
  Interval peak = two / (alpha * lnp) * exp(alpha * lnp / two - Interval(Integer(1)));
  out.value = Interval(base) * peak;
  return out;
}

struct BoundCheck {
  Interval bound;
  bool holds = true;
};

// count <= scale * m * H^epsilon. Exact integer comparison when m is an
// integer, directed rounding otherwise.
inline BoundCheck curve_bound(std::size_t count, const MConstant& m, const Integer& scale, long h, const Rational& epsilon) {
  BoundCheck out;
  out.bound = m.value * Interval(scale) * rational_power(Integer(h), epsilon);
  Integer n(static_cast<unsigned long>(count));
  if (m.attained_at_one) {
    auto b = epsilon.get_den().get_ui();
    auto a = epsilon.get_num().get_ui();
    out.holds = ipow(n, b) <= ipow(m.exact * scale, b) * ipow(Integer(h), a);
    return out;
  }
  switch (out.bound.integer_at_most(n)) {
    case Interval::Cmp::Holds: out.holds = true; break;
    case Interval::Cmp::Fails: out.holds = false; break;
    case Interval::Cmp::Undecided: throw IndeterminateBound("curve count lies inside the rounding gap of the bound");
  }
  return out;
}

struct CatchGroup {
  Ball outer;      // ball pM-next to c
  Rational anchor; // the point a of the scaling map
  Ball inner;      // open radius p^(-N) ball of M_K in scaled coordinates
  std::vector<Point> points;
  std::size_t rank = 0;  // rank of the monomial matrix of the points
  std::optional<AlgebraicCurve> curve;
};

struct CatchReport {
  MethodConstants constants;
  long n_threshold = 0;
  std::vector<Point> graph_points;
  std::vector<CatchGroup> groups;
  std::vector<AlgebraicCurve> curves;  // distinct, sorted
  MConstant m;
  BoundCheck bound;  // curves.size() <= m M H^epsilon
  bool coverage_ok = true;
  bool approximate = false;  // series model: points come from the truncation

  std::size_t curve_count() const { return curves.size(); }
};

// Graph points (x, f(x)), x in the domain balls, both of height <= H. Series
// models contribute their stored truncation.
inline std::vector<Point> graph_points_in(const ParametrizationData& data, long h) {
  const Prime p = data.f.prime();
  std::vector<Point> out;
  for (const auto& ball : data.domain) {
    for_each_rational(h, ball, p, [&](long a, long b) {
      Rational x(a, b);
      Rational y = poly::eval(data.f.coefficients(), x);
      if (height(y) <= h) out.push_back({x, y});
    });
  }
  std::sort(out.begin(), out.end(), PointLess{});
  return out;
}

inline CatchReport catch_curves(const ParametrizationData& data, unsigned d, long h, unsigned jobs = 1) {
  validate(data);
  const Prime p = data.f.prime();
  CatchReport rep;
  rep.constants = constants(d);
  if (data.order < rep.constants.r)
    throw std::invalid_argument("parametrization order " + std::to_string(data.order) + " is below r = " +
                                std::to_string(rep.constants.r));
  rep.approximate = !data.f.is_polynomial();
  rep.n_threshold = threshold_N(d, h, p);
  rep.graph_points = graph_points_in(data, h);

  const Integer pm = Integer(p) * data.m;
  std::map<Ball, std::vector<Point>, BallLess> by_outer;
  for (const auto& pt : rep.graph_points)
    by_outer[canonical(ball_next_to(pt.x, data.centre, pm, p), p)].push_back(pt);

  for (auto& [outer, pts] : by_outer) {
    ScalingMap s(outer.center, data.centre, data.m, p);
    std::vector<Rational> scaled;
    std::map<Rational, Point, RationalLess> back;
    for (const auto& pt : pts) {
      auto t = s.invert(pt.x);
      scaled.push_back(t);
      back.emplace(t, pt);
    }
    for (auto& g : group_by_small_ball(scaled, maximal_ideal(), rep.n_threshold, p)) {
      CatchGroup cg{outer, outer.center, g.ball, {}, 0, std::nullopt};
      for (const auto& t : g.points) cg.points.push_back(back.at(t));
      rep.groups.push_back(std::move(cg));
    }
  }

  parallel_for(jobs, rep.groups.size(), [&](std::size_t i) {
    auto& g = rep.groups[i];
    g.rank = rank(monomial_matrix(g.points, d));
    g.curve = fit_vanishing_curve(g.points, d);
  });

  std::set<AlgebraicCurve> distinct;
  std::size_t covered = 0;
  for (const auto& g : rep.groups) {
    for (const auto& pt : g.points)
      if ((*g.curve)(pt.x, pt.y) != 0) rep.coverage_ok = false;
    covered += g.points.size();
    distinct.insert(*g.curve);
  }
  if (covered != rep.graph_points.size()) rep.coverage_ok = false;
  rep.curves.assign(distinct.begin(), distinct.end());
  rep.m = constant_m(d, p);
  rep.bound = curve_bound(rep.curve_count(), rep.m, data.m, h, rep.constants.epsilon);
  return rep;
}

}  // namespace padet
