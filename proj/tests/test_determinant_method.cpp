#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padet/determinant_method.hpp"
#include "padet/suites.hpp"

using namespace padet;

namespace {

std::vector<Point> pts(std::initializer_list<std::pair<long, long>> xy) {
  std::vector<Point> out;
  for (auto [x, y] : xy) out.push_back({Rational(x), Rational(y)});
  return out;
}

FunctionModel poly_of(std::vector<long> c, Prime p) {
  poly::Coeffs q;
  for (long v : c) q.emplace_back(v);
  return FunctionModel::polynomial(q, p);
}

}  // namespace

TEST(Constants, Table) {
  struct Row {
    unsigned d, r, e;
    Rational eps;
  };
  for (auto [d, r, e, eps] : {Row{1, 3, 3, Rational(6)}, Row{2, 6, 15, fraction(24, 5)}, Row{3, 10, 45, Rational(4)}}) {
    auto k = constants(d);
    EXPECT_EQ(k.r, r);
    EXPECT_EQ(k.e, e);
    EXPECT_EQ(k.epsilon, eps);
    EXPECT_EQ(static_cast<long long>(k.r), oracle::binom(d + 2, 2));
    EXPECT_EQ(static_cast<long long>(k.e), oracle::binom(k.r, 2));
  }
  EXPECT_THROW(constants(0), std::invalid_argument);
}

TEST(Threshold, Examples) {
  EXPECT_EQ(cleared_determinant_bound(1, 4), 1572864);
  EXPECT_EQ(threshold_N(1, 4, 2), 7);
  EXPECT_EQ(threshold_N(1, 1, 2), 1);
  EXPECT_EQ(threshold_N(1, 1, 7), 1);
  EXPECT_THROW(threshold_N(1, 0, 2), std::invalid_argument);
}

TEST(Threshold, MinimalByDirectPowers) {
  for (unsigned d = 1; d <= 3; ++d) {
    auto r = static_cast<unsigned long>(oracle::binom(d + 2, 2));
    auto e = static_cast<unsigned long>(oracle::binom(r, 2));
    mpz_class fact(1);
    for (unsigned long i = 2; i <= r; ++i) fact *= i;
    for (unsigned long h = 1; h <= 64; ++h) {
      mpz_class hp;
      mpz_ui_pow_ui(hp.get_mpz_t(), h, 3 * r * d);
      mpz_class target = fact * hp;
      for (unsigned long p : {2ul, 3ul, 5ul}) {
        auto n = static_cast<unsigned long>(threshold_N(d, static_cast<long>(h), p));
        mpz_class above, below;
        mpz_ui_pow_ui(above.get_mpz_t(), p, n * e);
        mpz_ui_pow_ui(below.get_mpz_t(), p, (n - 1) * e);
        ASSERT_GT(above, target);
        ASSERT_LE(below, target);
      }
    }
  }
}

TEST(Monomials, GradedOrder) {
  using P = std::pair<unsigned, unsigned>;
  EXPECT_EQ(monomials(1), (std::vector<P>{{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_EQ(monomials(2), (std::vector<P>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}));
  EXPECT_EQ(monomials(3).size(), 10u);
}

TEST(MonomialMatrix, Examples) {
  auto one = pts({{2, 3}});
  auto m = monomial_matrix(one, 1);
  EXPECT_EQ(m(0, 0), 1);
  EXPECT_EQ(m(0, 1), 2);
  EXPECT_EQ(m(0, 2), 3);
  auto three = pts({{0, 0}, {1, 1}, {2, 4}});
  auto m3 = monomial_matrix(three, 1);
  EXPECT_EQ(m3.rows(), 3u);
  EXPECT_EQ(m3.cols(), 3u);
  std::vector<std::vector<Rational>> rows(3, std::vector<Rational>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) rows[i][j] = m3(i, j);
  EXPECT_EQ(oracle::leibniz_det(rows), 2);
  EXPECT_EQ(determinant(m3), 2);
}

TEST(FitCurve, Examples) {
  auto line = fit_vanishing_curve(pts({{0, 0}, {1, 1}}), 1);
  EXPECT_EQ(line, AlgebraicCurve::from_terms(1, {{{1, 0}, Integer(-1)}, {{0, 1}, Integer(1)}}));
  EXPECT_THROW(fit_vanishing_curve(pts({{0, 0}, {1, 1}, {2, 4}}), 1), RankFull);
  auto vertical = fit_vanishing_curve(pts({{5, 7}}), 1);
  EXPECT_EQ(vertical, AlgebraicCurve::from_terms(1, {{{0, 0}, Integer(-5)}, {{1, 0}, Integer(1)}}));
  // A conic through five points of y = x^2 is y - x^2, up to the chosen kernel vector.
  auto conic = fit_vanishing_curve(pts({{0, 0}, {1, 1}, {2, 4}, {-1, 1}, {3, 9}}), 2);
  for (long x = -5; x <= 5; ++x) EXPECT_EQ(conic(Rational(x), Rational(x * x)), 0);
}

TEST(Curve, Normalization) {
  AlgebraicCurve c(1, {Integer(4), Integer(-6), Integer(-2)});
  EXPECT_EQ(c.coefficients(), (std::vector<Integer>{-2, 3, 1}));
  EXPECT_THROW(AlgebraicCurve(1, {Integer(0), Integer(0), Integer(0)}), std::invalid_argument);
  EXPECT_THROW(AlgebraicCurve(1, {Integer(1)}), std::invalid_argument);
  // substitute agrees with evaluation
  auto q = c.substitute({Rational(1), Rational(0), Rational(1)});
  for (long x = -3; x <= 3; ++x) EXPECT_EQ(poly::eval(q, Rational(x)), c(Rational(x), Rational(x * x + 1)));
}

TEST(DetCheck, Examples) {
  auto f = poly_of({1, 2, 3}, 2);
  std::vector<FunctionModel> same(3, f);
  std::vector<Rational> xs{Rational(0), Rational(4), Rational(8)};
  auto rep = det_valuation_check(same, Ball{Rational(0), 1}, xs);
  EXPECT_TRUE(rep.valuation.is_infinite());
  EXPECT_TRUE(rep.ok);

  std::vector<FunctionModel> one{f};
  std::vector<Rational> x1{Rational(6)};
  auto r1 = det_valuation_check(one, Ball{Rational(0), 0}, x1);
  EXPECT_EQ(r1.required, 0);
  EXPECT_TRUE(r1.ok);

  EXPECT_THROW(det_valuation_check(one, Ball{Rational(0), 0}, xs), std::invalid_argument);
  EXPECT_THROW(det_valuation_check(one, Ball{Rational(0), 2}, x1), DomainError);
  std::vector<FunctionModel> series{FunctionModel::series({Rational(1)}, 0, 1, 2)};
  EXPECT_THROW(det_valuation_check(series, Ball{Rational(0), 0}, x1), DomainError);
}

// Monomials 1, s, s^2 of a scaled planted model at three points of an open
// ball of radius 2^-3: v_2(det) >= 3e = 9, recomputed by Leibniz.
TEST(DetCheck, ScaledPlantedRadiusEighth) {
  auto f = poly_of({1, -1, 2}, 2);
  ScalingMap s(Rational(3), Rational(0), Integer(1), 2);
  auto g = pullback(f, s);
  std::vector<FunctionModel> fs;
  for (unsigned k = 0; k < 3; ++k) fs.push_back(FunctionModel::polynomial(poly::power(g.coefficients(), k), 2));
  Ball ball{Rational(2), 3};
  std::vector<Rational> xs{Rational(2), Rational(18), fraction(6 + 16 * 5, 3)};
  for (const auto& x : xs) ASSERT_TRUE(ball.contains(x, 2));
  auto rep = det_valuation_check(fs, ball, xs);
  EXPECT_EQ(rep.required, 9);
  EXPECT_TRUE(rep.ok);
  std::vector<std::vector<Rational>> rows(3, std::vector<Rational>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) rows[i][j] = poly::eval(fs[i].coefficients(), xs[j]);
  auto det = oracle::leibniz_det(rows);
  EXPECT_EQ(det, rep.det);
  ASSERT_NE(det, 0);
  mpz_class num = det.get_num();
  long v = 0;
  while (mpz_divisible_ui_p(num.get_mpz_t(), 2)) num /= 2, ++v;
  ASSERT_EQ(det.get_den() % 2, 1);
  EXPECT_GE(v, 9);
}

// Delta' = prod b_i^d Delta is an integer of absolute value <= r! H^(3rd).
TEST(DetCheck, ClearedDeterminantIsBoundedInteger) {
  const long h = 9;
  std::vector<Point> p3{{Rational(1), fraction(1, 3)}, {fraction(2, 3), fraction(-5, 9)}, {Rational(-4), fraction(7, 2)}};
  auto m = monomial_matrix(p3, 1);
  Rational delta = determinant(m);
  ASSERT_NE(delta, 0);
  Integer scale(1);
  for (const auto& pt : p3) {
    Integer b(1);
    mpz_lcm(b.get_mpz_t(), pt.x.get_den().get_mpz_t(), pt.y.get_den().get_mpz_t());
    ASSERT_LE(b, h * h);
    scale *= b;  // d = 1
  }
  Rational cleared = delta * Rational(scale);
  EXPECT_EQ(cleared.get_den(), 1);
  EXPECT_LE(abs(cleared.get_num()), cleared_determinant_bound(1, h));
}

TEST(MConstant, ExactAtOne) {
  auto a = constant_m(1, 2);
  EXPECT_TRUE(a.attained_at_one);
  EXPECT_EQ(a.exact, 192);
  auto b = constant_m(1, 3);
  EXPECT_TRUE(b.attained_at_one);
  EXPECT_EQ(b.exact, 648);
}

TEST(MConstant, MatchesNumericMaximization) {
  for (unsigned d = 1; d <= 3; ++d)
    for (long p : {2L, 3L, 5L, 7L}) {
      auto m = constant_m(d, static_cast<Prime>(p));
      double numeric = oracle::m_constant_numeric(d, p);
      EXPECT_NEAR(m.value.lower() / numeric, 1.0, 1e-9) << d << " " << p;
      EXPECT_NEAR(m.value.upper() / numeric, 1.0, 1e-9) << d << " " << p;
      EXPECT_LE(m.value.lower(), m.value.upper());
    }
  EXPECT_FALSE(constant_m(2, 2).attained_at_one);
  EXPECT_FALSE(constant_m(3, 2).attained_at_one);
}

TEST(CurveBound, ExactDecision) {
  auto m = constant_m(1, 2);
  EXPECT_TRUE(curve_bound(192, m, Integer(1), 1, Rational(6)).holds);
  EXPECT_FALSE(curve_bound(193, m, Integer(1), 1, Rational(6)).holds);
  EXPECT_TRUE(curve_bound(192 * 64, m, Integer(1), 2, Rational(6)).holds);
  EXPECT_FALSE(curve_bound(192 * 64 + 1, m, Integer(1), 2, Rational(6)).holds);
  auto m2 = constant_m(2, 2);
  EXPECT_TRUE(curve_bound(10, m2, Integer(1), 4, fraction(24, 5)).holds);
}

TEST(Catch, PlantedSquare) {
  auto f = poly_of({0, 0, 1}, 2);
  ParametrizationData data{f, Rational(0), Integer(1), prepared_domain(Rational(0), Integer(1), 4, 2), 3};
  auto rep = catch_curves(data, 1, 4, 1);
  EXPECT_TRUE(rep.coverage_ok);
  EXPECT_TRUE(rep.bound.holds);
  EXPECT_EQ(rep.n_threshold, 7);
  // (0, 0) is the centre and lies in no ball next to 0; (+-1/3, 1/9) is too high.
  EXPECT_EQ(rep.graph_points, (std::vector<Point>{{Rational(-2), Rational(4)}, {Rational(-1), Rational(1)},
                                                  {Rational(1), Rational(1)}, {Rational(2), Rational(4)}}));
  for (const auto& g : rep.groups)
    for (const auto& pt : g.points) EXPECT_EQ((*g.curve)(pt.x, pt.y), 0);
}

TEST(Catch, EmptyGraph) {
  auto f = poly_of({2}, 2);  // constant 2 has height 2 > H = 1
  ParametrizationData data{f, Rational(0), Integer(1), prepared_domain(Rational(0), Integer(1), 1, 2), 3};
  auto rep = catch_curves(data, 1, 1, 1);
  EXPECT_TRUE(rep.groups.empty());
  EXPECT_EQ(rep.curve_count(), 0u);
  EXPECT_TRUE(rep.coverage_ok);
  ParametrizationData low{f, Rational(0), Integer(1), {}, 2};
  EXPECT_THROW(catch_curves(low, 1, 1, 1), std::invalid_argument);
}

TEST(Catch, CubeOverThree) {
  auto f = poly_of({0, 0, 0, 1}, 3);
  ParametrizationData data{f, Rational(0), Integer(1), prepared_domain(Rational(0), Integer(1), 8, 3), 6};
  auto rep = catch_curves(data, 2, 8, 2);
  EXPECT_TRUE(rep.coverage_ok);
  EXPECT_TRUE(rep.bound.holds);
  EXPECT_FALSE(rep.m.attained_at_one && rep.m.exact == 0);
}
