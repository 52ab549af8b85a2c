#pragma once

// End-to-end counting of rational points of height <= H on the graph of a
// function model: catch the points on curves, intersect every curve with
// the graph exactly, and compare against a brute-force enumeration.

#include <set>
#include <vector>

#include "padet/determinant_method.hpp"
#include "padet/verifiers.hpp"

namespace padet {

// Independent oracle: plain double loop over numerators and denominators.
// Series models are read through their stored truncation, as the pipeline
// does, so the comparison is between candidate sets.
inline std::vector<Point> bruteforce_points(const FunctionModel& f, long h, const Ball& domain) {
  const Prime p = f.prime();
  if (!domain.subset_of(valuation_ring(), p)) throw DomainError("brute-force domain must lie in O_K");
  std::vector<Point> out;
  for (long b = 1; b <= h; ++b) {
    for (long a = -h; a <= h; ++a) {
      if (std::gcd(std::abs(a), b) != 1) continue;
      Rational x(a, b);
      if (!domain.contains(x, p)) continue;
      Rational y = poly::eval(f.coefficients(), x);
      if (height(y) <= h) out.push_back({x, y});
    }
  }
  std::sort(out.begin(), out.end(), PointLess{});
  return out;
}

// Rational x of height <= H in the domain with P(x, f(x)) = 0, found by the
// rational root theorem on the substituted polynomial.
inline std::vector<Point> intersect_curve_graph(const FunctionModel& f, const AlgebraicCurve& curve, long h,
                                                const Ball& domain) {
  const Prime p = f.prime();
  poly::Coeffs q = curve.substitute(f.coefficients());
  if (q.empty()) throw ContainsGraph("curve vanishes identically on the graph");
  Integer l(1);
  for (const auto& c : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Integer> z;
  for (const auto& c : q) {
    Rational scaled = c * Rational(l);
    z.push_back(scaled.get_num());
  }
  std::size_t low = 0;
  while (z[low] == 0) ++low;
  const Integer& lead = z.back();
  const Integer& trail = z[low];

  std::set<Rational, RationalLess> roots;
  if (low > 0) roots.insert(Rational(0));
  auto divides = [](long k, const Integer& n) { return mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(k)) != 0; };
  auto is_root = [&](const Rational& x) {
    Rational acc(0);
    for (std::size_t i = z.size(); i-- > low;) acc = acc * x + Rational(z[i]);
    return acc == 0;
  };
  for (long b = 1; b <= h; ++b) {
    if (!divides(b, lead)) continue;
    for (long a = 1; a <= h; ++a) {
      if (std::gcd(a, b) != 1 || !divides(a, trail)) continue;
      for (long sign : {1L, -1L}) {
        Rational x(sign * a, b);
        if (is_root(x)) roots.insert(x);
      }
    }
  }
  std::vector<Point> out;
  for (const auto& x : roots) {
    if (height(x) > h || !domain.contains(x, p) || !is_p_integral(x, p)) continue;
    Rational y = poly::eval(f.coefficients(), x);
    if (height(y) <= h) out.push_back({x, y});
  }
  return out;
}

struct CurvePoints {
  AlgebraicCurve curve;
  std::vector<Point> points;
};

struct CountCertificate {
  // input
  FunctionModel f;
  Rational centre;
  Integer m;
  unsigned d = 1;
  long h = 1;

  Report parametrization_check;
  CatchReport catch_report;
  std::optional<Point> centre_point;  // (c, f(c)) when on the graph; lies in no ball M-next to c
  std::vector<CurvePoints> per_curve;
  std::vector<Point> pipeline_points;
  std::vector<Point> oracle_points;
  std::vector<Point> uncovered;  // oracle points on no curve
  std::size_t intersection_bound = 0;  // d * deg f, Bezout
  Interval bound_cprime;               // m * intersection_bound * M * H^epsilon
  bool bezout_ok = true;
  bool bound_ok = true;
  bool approximate = false;

  std::size_t pipeline_count() const { return pipeline_points.size(); }
  std::size_t oracle_count() const { return oracle_points.size(); }
  std::size_t curve_count() const { return per_curve.size(); }
  bool oracle_match() const { return pipeline_points == oracle_points; }
  bool ok() const {
    return oracle_match() && uncovered.empty() && bezout_ok && bound_ok && catch_report.coverage_ok &&
           catch_report.bound.holds && parametrization_check.ok();
  }
};

struct CountOptions {
  unsigned jobs = 1;
  Sampling verification{8, 64, 0, 1000};
  bool strict = true;  // throw OracleMismatch instead of returning a failed certificate
};

// Balls M-next to c inside O_K that hold a rational of height <= H.
inline std::vector<Ball> prepared_domain(const Rational& c, const Integer& m, long h, Prime p) {
  std::set<Ball, BallLess> balls;
  for_each_rational(h, valuation_ring(), p, [&](long a, long b) {
    Rational x(a, b);
    if (x != c) balls.insert(canonical(ball_next_to(x, c, m, p), p));
  });
  return {balls.begin(), balls.end()};
}

inline CountCertificate count_points(const FunctionModel& f, const Rational& c, const Integer& m, unsigned d, long h,
                                     const CountOptions& opt = {}) {
  const Prime p = f.prime();
  auto k = constants(d);
  ParametrizationData data{f, c, m, prepared_domain(c, m, h, p), k.r};

  CountCertificate cert{f, c, m, d, h, {}, {}, std::nullopt, {}, {}, {}, {}, 0, {}, true, true, !f.is_polynomial()};
  cert.parametrization_check = check_r_parametrizing(data, opt.verification);
  cert.catch_report = catch_curves(data, d, h, opt.jobs);

  std::set<AlgebraicCurve> curves(cert.catch_report.curves.begin(), cert.catch_report.curves.end());
  Rational fc = poly::eval(f.coefficients(), c);
  if (height(c) <= h && height(fc) <= h) {
    cert.centre_point = Point{c, fc};
    std::vector<Point> one{*cert.centre_point};
    curves.insert(fit_vanishing_curve(one, d));
  }

  const Ball domain = valuation_ring();
  for (const auto& curve : curves) cert.per_curve.push_back({curve, {}});
  parallel_for(opt.jobs, cert.per_curve.size(), [&](std::size_t i) {
    cert.per_curve[i].points = intersect_curve_graph(f, cert.per_curve[i].curve, h, domain);
  });

  cert.intersection_bound = static_cast<std::size_t>(d) * static_cast<std::size_t>(std::max(f.degree(), 0L));
  std::set<Point, PointLess> found;
  for (const auto& cp : cert.per_curve) {
    if (cp.points.size() > cert.intersection_bound) cert.bezout_ok = false;
    found.insert(cp.points.begin(), cp.points.end());
  }
  cert.pipeline_points.assign(found.begin(), found.end());
  cert.oracle_points = bruteforce_points(f, h, domain);
  for (const auto& pt : cert.oracle_points) {
    bool on_curve = std::any_of(cert.per_curve.begin(), cert.per_curve.end(),
                                [&](const CurvePoints& cp) { return cp.curve(pt.x, pt.y) == 0; });
    if (!on_curve) cert.uncovered.push_back(pt);
  }

  Integer scale = Integer(static_cast<unsigned long>(cert.intersection_bound)) * m;
  auto cprime = curve_bound(cert.pipeline_count(), cert.catch_report.m, scale, h, k.epsilon);
  cert.bound_cprime = cprime.bound;
  cert.bound_ok = cprime.holds && cert.pipeline_count() <= cert.curve_count() * cert.intersection_bound;

  if (opt.strict && !cert.approximate && !cert.oracle_match())
    throw OracleMismatch("pipeline found " + std::to_string(cert.pipeline_count()) + " points, brute force " +
                         std::to_string(cert.oracle_count()));
  return cert;
}

struct ScalingRow {
  long h = 1;
  std::size_t count = 0;
  Interval bound;  // c' H^epsilon
  double ratio = 0;  // count / bound, rounded up
  bool ok = true;
};

inline std::vector<ScalingRow> scaling_table(const FunctionModel& f, const Rational& c, const Integer& m, unsigned d,
                                             std::span<const long> heights, const CountOptions& opt = {}) {
  std::vector<ScalingRow> rows;
  for (long h : heights) {
    auto cert = count_points(f, c, m, d, h, opt);
    ScalingRow row;
    row.h = h;
    row.count = cert.pipeline_count();
    row.bound = cert.bound_cprime;
    Interval ratio = Interval(Integer(static_cast<unsigned long>(row.count))) / row.bound;
    row.ratio = ratio.upper();
    row.ok = cert.bound_ok && cert.oracle_match();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace padet
