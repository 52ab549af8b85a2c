#pragma once

// Sampling verifiers for the analytic conditions on function models: T_r,
// r-parametrizing data, the Jacobian property and Taylor approximation.
// They check instances exactly and never prove anything: samples are every
// rational of height <= height_cap in the ball, plus seeded random pairs.
// For series models a sample may be undecidable at the available precision;
// such samples are counted as `uncertain`, never as violations.

#include <string>
#include <vector>

#include "padet/function_model.hpp"
#include "padet/height_enum.hpp"

namespace padet {

// SplitMix64; portable and fully determined by the seed.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish in [lo, hi]; modulo bias is irrelevant for sampling.
  long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::uint64_t state_;
};

struct Sampling {
  long height_cap = 16;
  std::size_t random_pairs = 256;
  std::uint64_t seed = 0;
  long random_height = 1000;  // numerator/denominator range of random offsets
};

struct Violation {
  std::string kind;
  std::vector<Rational> witness;
  std::string detail;
};

struct Report {
  static constexpr std::size_t kKeptWitnesses = 32;

  std::size_t checked = 0;
  std::size_t uncertain = 0;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  // first kKeptWitnesses only

  bool ok() const { return violation_count == 0; }

  void fail(std::string kind, std::vector<Rational> witness, std::string detail) {
    ++violation_count;
    if (violations.size() < kKeptWitnesses) violations.push_back({std::move(kind), std::move(witness), std::move(detail)});
  }

  void merge(const Report& other) {
    checked += other.checked;
    uncertain += other.uncertain;
    for (const auto& v : other.violations) fail(v.kind, v.witness, v.detail);
    violation_count += other.violation_count - other.violations.size();
  }
};

enum class Verdict { Holds, Fails, Unknown };

// v(X) >= t for a value known up to error.
inline Verdict at_least(const Approx& x, ExtInt t, Prime p) {
  if (x.valuation_lower(p) >= t) return Verdict::Holds;
  auto v = x.valuation_exact(p);
  if (v && *v < t) return Verdict::Fails;
  return Verdict::Unknown;
}

inline Verdict norms_equal(const Approx& x, const Approx& y, Prime p) {
  auto vx = x.valuation_exact(p), vy = y.valuation_exact(p);
  if (!vx || !vy) return Verdict::Unknown;
  return *vx == *vy ? Verdict::Holds : Verdict::Fails;
}

// rv_M(X) = rv_M(Y); needs both values known to relative precision nu + 1.
inline Verdict rv_equal(const Approx& x, const Approx& y, const Integer& m, Prime p) {
  auto nu = nu_of(m, p);
  auto determined = [&](const Approx& a) {
    if (a.exact()) return true;
    auto v = valuation(a.value, p);
    return v.is_finite() && a.err >= v + ExtInt(nu + 1);
  };
  if (!determined(x) || !determined(y)) return Verdict::Unknown;
  return rv_class(x.value, 0, m, p) == rv_class(y.value, 0, m, p) ? Verdict::Holds : Verdict::Fails;
}

inline Rational random_point(const Ball& ball, SeededRng& rng, Prime p, long range) {
  long a = rng.range(-range, range);
  long b = rng.range(1, range);
  while (b % static_cast<long>(p) == 0) b = rng.range(1, range);
  return ball.center + ppow(p, ball.radius_exp + 1) * fraction(a, b);
}

inline std::vector<Rational> sample_points(const Ball& ball, const Sampling& s, Prime p) {
  return enum_rationals(s.height_cap, ball, p);
}

inline std::vector<std::pair<Rational, Rational>> random_pairs(const Ball& ball, const Sampling& s, std::size_t count,
                                                               Prime p, std::uint64_t stream = 0) {
  SeededRng rng(s.seed * 0x100000001b3ULL + stream);
  std::vector<std::pair<Rational, Rational>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rational x = random_point(ball, rng, p, s.random_height);
    Rational y = random_point(ball, rng, p, s.random_height);
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

// Taylor data of f at a fixed point y, reusable for many x.
class TaylorAt {
 public:
  TaylorAt(const FunctionModel& f, const std::vector<FunctionModel>& derivs, const Rational& y)
      : f_(f), y_(y), shifted_(poly::taylor_shift(f.coefficients(), y)) {
    require_in_valuation_ring(y, f.prime());
    if (!f.is_polynomial()) {
      auto vy = valuation(y, f.prime());
      for (std::size_t i = 0; i < derivs.size(); ++i) {
        auto bound = derivs[i].tail_valuation(vy);
        ExtInt e = bound ? *bound : ExtInt(std::numeric_limits<std::int32_t>::min());
        coeff_err_.push_back(e - factorial_valuation(i, f.prime()));
      }
    }
  }

  // f^(i)(y)/i!, with error.
  Approx coefficient(std::size_t i) const {
    Approx out{i < shifted_.size() ? shifted_[i] : Rational(0), ExtInt::infinity()};
    if (!f_.is_polynomial()) out.err = coeff_err_.at(i);
    return out;
  }

  // f(x) - sum_{i <= upto} f^(i)(y)/i! (x-y)^i. Requires derivs up to `upto`.
  Approx remainder(const Rational& x, std::size_t upto) const {
    const Prime p = f_.prime();
    Rational t = x - y_;
    Rational value(0), power(1);
    for (std::size_t i = 0; i < shifted_.size(); ++i) {
      if (i > upto) value += shifted_[i] * power;
      power *= t;
    }
    Approx out{value, ExtInt::infinity()};
    if (!f_.is_polynomial()) {
      auto bound = f_.tail_valuation(valuation(x, p));
      ExtInt err = bound ? *bound : ExtInt(std::numeric_limits<std::int32_t>::min());
      auto vt = valuation(t, p);
      for (std::size_t i = 0; i <= upto; ++i) err = min(err, coeff_err_.at(i) + static_cast<std::int64_t>(i) * vt);
      out.err = err;
    }
    return out;
  }

 private:
  const FunctionModel& f_;
  Rational y_;
  poly::Coeffs shifted_;
  std::vector<ExtInt> coeff_err_;
};

inline std::vector<FunctionModel> derivatives_upto(const FunctionModel& f, unsigned order) {
  std::vector<FunctionModel> out;
  out.reserve(order + 1);
  out.push_back(f);
  for (unsigned i = 1; i <= order; ++i) out.push_back(derivative(out.back(), 1));
  return out;
}

inline void record(Report& rep, Verdict v, const char* kind, std::vector<Rational> witness, const std::string& detail) {
  ++rep.checked;
  if (v == Verdict::Unknown) ++rep.uncertain;
  if (v == Verdict::Fails) rep.fail(kind, std::move(witness), detail);
}

namespace detail {

template <class PairFn>
void for_sample_pairs(const Ball& ball, const Sampling& s, Prime p, std::uint64_t stream, PairFn&& fn) {
  auto pts = sample_points(ball, s, p);
  for (const auto& y : pts)
    for (const auto& x : pts)
      if (x != y) fn(x, y);
  for (const auto& [x, y] : random_pairs(ball, s, s.random_pairs, p, stream))
    if (x != y) fn(x, y);
}

inline void require_inside_valuation_ring(const Ball& b, Prime p) {
  if (!b.subset_of(valuation_ring(), p)) throw DomainError("ball is not contained in O_K");
}

}  // namespace detail

// T_r on the ball: |f^(i)(x)| <= |i!| for i <= r and |f(x) - T^{<r}_{f,y}(x)| <= |x-y|^r.
inline Report check_Tr(const FunctionModel& f, const Ball& domain, unsigned r, const Sampling& s) {
  const Prime p = f.prime();
  detail::require_inside_valuation_ring(domain, p);
  auto derivs = derivatives_upto(f, r);
  Report rep;
  auto pts = sample_points(domain, s, p);
  auto extra = random_pairs(domain, s, s.random_pairs, p);
  auto check_point = [&](const Rational& x) {
    for (unsigned i = 0; i <= r; ++i) {
      auto value = eval_approx(derivs[i], x);
      record(rep, at_least(value, factorial_valuation(i, p), p), "derivative_bound", {x},
             "|f^(" + std::to_string(i) + ")(x)| > |" + std::to_string(i) + "!|");
    }
  };
  for (const auto& x : pts) check_point(x);
  for (const auto& [x, y] : extra) check_point(x);
  if (r == 0) return rep;
  auto check_pair = [&](const TaylorAt& at, const Rational& x, const Rational& y) {
    auto rem = at.remainder(x, r - 1);
    record(rep, at_least(rem, static_cast<std::int64_t>(r) * valuation(x - y, p), p), "taylor_remainder", {x, y},
           "|f(x) - T^{<r}_{f,y}(x)| > |x-y|^r");
  };
  for (const auto& y : pts) {
    TaylorAt at(f, derivs, y);
    for (const auto& x : pts)
      if (x != y) check_pair(at, x, y);
  }
  for (const auto& [x, y] : extra) {
    if (x == y) continue;
    TaylorAt at(f, derivs, y);
    check_pair(at, x, y);
  }
  return rep;
}

// Derivative bounds |f^(i)(x)| <= 1/(|M|^i |x-c|^i), i <= r, on the domain
// and order r-1 Taylor approximation on each ball M-next to c.
inline Report check_r_parametrizing(const ParametrizationData& data, const Sampling& s) {
  validate(data);
  const auto& f = data.f;
  const Prime p = f.prime();
  const auto r = data.order;
  const auto nu = nu_of(data.m, p);
  auto derivs = derivatives_upto(f, r);
  Report rep;
  std::uint64_t stream = 0;
  const std::size_t per_ball = data.domain.empty() ? 0 : (s.random_pairs + data.domain.size() - 1) / data.domain.size();
  for (const auto& ball : data.domain) {
    auto pts = sample_points(ball, s, p);
    auto extra = random_pairs(ball, s, per_ball, p, stream++);
    auto check_point = [&](const Rational& x) {
      auto dist = valuation(x - data.centre, p).value();
      for (unsigned i = 0; i <= r; ++i) {
        auto value = eval_approx(derivs[i], x);
        ExtInt need(-static_cast<std::int64_t>(i) * (nu + dist));
        record(rep, at_least(value, need, p), "derivative_bound", {x},
               "|f^(" + std::to_string(i) + ")(x)| > 1/(|M||x-c|)^" + std::to_string(i));
      }
    };
    for (const auto& x : pts) check_point(x);
    for (const auto& pr : extra) check_point(pr.first);
    auto check_pair = [&](const TaylorAt& at, const Rational& x, const Rational& y) {
      auto lhs = at.remainder(x, r - 1);
      auto coeff = at.coefficient(r);
      auto power = Rational(1);
      for (unsigned i = 0; i < r; ++i) power *= (x - y);
      Approx rhs{coeff.value * power, coeff.err + static_cast<std::int64_t>(r) * valuation(x - y, p)};
      record(rep, norms_equal(lhs, rhs, p), "taylor_approximation", {x, y},
             "|f(x) - T^{<=r-1}_{f,y}(x)| != |f^(r)(y)/r! (x-y)^r|");
    };
    for (const auto& y : pts) {
      TaylorAt at(f, derivs, y);
      for (const auto& x : pts)
        if (x != y) check_pair(at, x, y);
    }
    for (const auto& [x, y] : extra) {
      if (x == y) continue;
      TaylorAt at(f, derivs, y);
      check_pair(at, x, y);
    }
  }
  return rep;
}

// rv_M(f(x) - f(y)) = rv_M(f'(x)(x - y)) and rv_M(f') constant on the ball.
inline Report check_jacobian_property(const FunctionModel& f, const Ball& ball, const Integer& m, const Sampling& s) {
  const Prime p = f.prime();
  detail::require_inside_valuation_ring(ball, p);
  auto df = derivative(f, 1);
  Report rep;
  std::optional<Approx> first_slope;
  Rational first_point;
  auto check_slope = [&](const Rational& x, const Approx& slope) {
    if (!first_slope) {
      first_slope = slope;
      first_point = x;
      return;
    }
    record(rep, rv_equal(*first_slope, slope, m, p), "derivative_rv_not_constant", {first_point, x},
           "rv_M(f') differs on the ball");
  };
  detail::for_sample_pairs(ball, s, p, 0, [&](const Rational& x, const Rational& y) {
    auto fx = eval_approx(f, x), fy = eval_approx(f, y), dfx = eval_approx(df, x);
    Approx lhs{fx.value - fy.value, min(fx.err, fy.err)};
    Approx rhs{dfx.value * (x - y), dfx.err + valuation(x - y, p)};
    record(rep, rv_equal(lhs, rhs, m, p), "jacobian_rv", {x, y}, "rv_M(f(x)-f(y)) != rv_M(f'(x)(x-y))");
  });
  for (const auto& x : sample_points(ball, s, p)) check_slope(x, eval_approx(df, x));
  return rep;
}

// |f(x) - T^{<=r}_{f,y}(x)| = |f^(r+1)(y)/(r+1)! (x-y)^(r+1)| on the ball.
inline Report check_taylor_order(const FunctionModel& f, const Ball& ball, unsigned r, const Sampling& s) {
  const Prime p = f.prime();
  detail::require_inside_valuation_ring(ball, p);
  auto derivs = derivatives_upto(f, r + 1);
  Report rep;
  detail::for_sample_pairs(ball, s, p, 1, [&](const Rational& x, const Rational& y) {
    TaylorAt at(f, derivs, y);
    auto lhs = at.remainder(x, r);
    auto coeff = at.coefficient(r + 1);
    Rational power(1);
    for (unsigned i = 0; i <= r; ++i) power *= (x - y);
    Approx rhs{coeff.value * power, coeff.err + static_cast<std::int64_t>(r + 1) * valuation(x - y, p)};
    record(rep, norms_equal(lhs, rhs, p), "taylor_order", {x, y},
           "|f(x) - T^{<=r}_{f,y}(x)| != |f^(r+1)(y)/(r+1)! (x-y)^(r+1)|");
  });
  return rep;
}

}  // namespace padet
