#pragma once

// Function models f: O_K -> O_K whose graphs are the curves we count on,
// together with Taylor data and the scaling maps x -> (a-c)(1+pMx)+c.

#include <optional>
#include <utility>
#include <vector>

#include "padet/geometry.hpp"
#include "padet/polynomial.hpp"

namespace padet {

enum class ModelKind { Polynomial, Series };

// Bound on the omitted part E(x) = sum_{n >= start} e_n x^n of a series:
// v_p(e_n) >= offset + slope * n. slope >= 1 makes E converge on O_K.
struct TailBound {
  std::int64_t offset = 0;
  std::int64_t slope = 1;
  std::int64_t start = 0;

  // Lower bound on v_p(E(x)) for v_p(x) >= m, or nullopt when the tail does
  // not converge there.
  std::optional<ExtInt> on_valuation(ExtInt m) const {
    if (m.is_infinite()) return start == 0 ? ExtInt(offset) : ExtInt::infinity();
    if (slope + m.value() <= 0) return std::nullopt;
    return ExtInt(offset + start * (slope + m.value()));
  }

  friend bool operator==(const TailBound&, const TailBound&) = default;
};

// A value known up to an additive error in p^err Z_p.
struct Approx {
  Rational value;
  ExtInt err = ExtInt::infinity();

  bool exact() const { return err.is_infinite(); }
  // Guaranteed lower bound on v_p of the true value.
  ExtInt valuation_lower(Prime p) const { return min(padet::valuation(value, p), err); }
  // v_p of the true value, if the error cannot disturb it.
  std::optional<ExtInt> valuation_exact(Prime p) const {
    auto v = padet::valuation(value, p);
    if (v < err) return v;
    if (exact()) return v;
    return std::nullopt;
  }
};

class FunctionModel {
 public:
  static FunctionModel polynomial(poly::Coeffs coeffs, Prime p) {
    FunctionModel f(ModelKind::Polynomial, std::move(coeffs), p, {});
    return f;
  }

  // Geometric tail: omitted e_n (n > trunc) satisfy v_p(e_n) >= base_valuation * n.
  static FunctionModel series(poly::Coeffs coeffs, std::int64_t trunc, std::int64_t base_valuation, Prime p) {
    if (trunc < 0) throw std::invalid_argument("series truncation must be non-negative");
    if (coeffs.size() > static_cast<std::size_t>(trunc + 1)) coeffs.resize(static_cast<std::size_t>(trunc + 1));
    return series(std::move(coeffs), TailBound{0, base_valuation, trunc + 1}, p);
  }

  static FunctionModel series(poly::Coeffs coeffs, TailBound tail, Prime p) {
    if (tail.slope < 1) throw DomainError("series tail must decay on O_K (slope >= 1)");
    if (tail.start < 0) throw std::invalid_argument("series tail start must be non-negative");
    return FunctionModel(ModelKind::Series, std::move(coeffs), p, tail);
  }

  ModelKind kind() const { return kind_; }
  bool is_polynomial() const { return kind_ == ModelKind::Polynomial; }
  const poly::Coeffs& coefficients() const { return coeffs_; }
  Prime prime() const { return p_; }
  const TailBound& tail() const { return tail_; }
  long degree() const { return poly::degree(coeffs_); }

  // Lower bound on v_p of what the stored coefficients omit, for v(x) >= m.
  std::optional<ExtInt> tail_valuation(ExtInt m) const {
    if (is_polynomial()) return ExtInt::infinity();
    return tail_.on_valuation(m);
  }

 private:
  FunctionModel(ModelKind kind, poly::Coeffs coeffs, Prime p, TailBound tail)
      : kind_(kind), coeffs_(std::move(coeffs)), p_(p), tail_(tail) {
    require_prime(p);
    poly::trim(coeffs_);
    for (const auto& c : coeffs_)
      if (!is_p_integral(c, p)) throw DomainError("coefficient " + format_rational(c) + " is not p-integral");
  }

  ModelKind kind_;
  poly::Coeffs coeffs_;
  Prime p_;
  TailBound tail_;
};

inline void require_in_valuation_ring(const Rational& x, Prime p) {
  if (!is_p_integral(x, p)) throw DomainError("point " + format_rational(x) + " lies outside O_K");
}

inline FunctionModel derivative(const FunctionModel& f, unsigned order) {
  auto coeffs = poly::derivative(f.coefficients(), order);
  if (f.is_polynomial()) return FunctionModel::polynomial(std::move(coeffs), f.prime());
  const auto& t = f.tail();
  auto i = static_cast<std::int64_t>(order);
  return FunctionModel::series(std::move(coeffs), TailBound{t.offset + t.slope * i, t.slope, std::max<std::int64_t>(t.start - i, 0)},
                               f.prime());
}

// Value with certified error; never throws on precision.
inline Approx eval_approx(const FunctionModel& f, const Rational& x) {
  require_in_valuation_ring(x, f.prime());
  Approx out{poly::eval(f.coefficients(), x), ExtInt::infinity()};
  if (!f.is_polynomial()) {
    auto bound = f.tail_valuation(valuation(x, f.prime()));
    out.err = bound ? *bound : ExtInt(std::numeric_limits<std::int32_t>::min());
  }
  return out;
}

// Exact for polynomials; for series the error valuation must reach `precision`.
inline Approx eval(const FunctionModel& f, const Rational& x, ExtInt precision) {
  auto out = eval_approx(f, x);
  if (out.err < precision)
    throw PrecisionUnreachable("tail bound certifies only valuation " + out.err.str() + " < " + precision.str());
  return out;
}

// Order-r Taylor polynomial sum_{i<=r} f^(i)(y)/i! (x-y)^i, expanded in x.
inline FunctionModel taylor_poly(const FunctionModel& f, const Rational& y, unsigned r) {
  require_in_valuation_ring(y, f.prime());
  auto shifted = poly::taylor_shift(f.coefficients(), y);
  if (shifted.size() > r + 1) shifted.resize(r + 1);
  // back from powers of (x - y) to powers of x
  auto expanded = poly::taylor_shift(shifted, -y);
  return FunctionModel::polynomial(std::move(expanded), f.prime());
}

// x -> (a - c)(1 + pMx) + c, a bijection M_K -> ball pM-next to c through a.
class ScalingMap {
 public:
  ScalingMap(Rational a, Rational c, Integer m, Prime p) : a_(std::move(a)), c_(std::move(c)), m_(std::move(m)), p_(p) {
    require_prime(p);
    if (m_ <= 0) throw std::invalid_argument("scaling map integer M must be positive");
    if (a_ == c_) throw DomainError("scaling map needs a != c");
  }

  const Rational& a() const { return a_; }
  const Rational& c() const { return c_; }
  const Integer& m() const { return m_; }
  Prime prime() const { return p_; }

  Rational slope() const { return (a_ - c_) * Rational(Integer(p_) * m_); }

  Ball target() const {
    return {a_, valuation(a_ - c_, p_).value() + 1 + valuation(m_, p_).value()};
  }

  Rational apply(const Rational& x) const {
    if (valuation(x, p_) < ExtInt(1)) throw DomainError("scaling map argument lies outside M_K");
    return a_ + slope() * x;
  }

  Rational invert(const Rational& y) const {
    if (!target().contains(y, p_)) throw DomainError("point lies outside the scaling map's target ball");
    return (y - a_) / slope();
  }

 private:
  Rational a_, c_;
  Integer m_;
  Prime p_;
};

inline Rational apply_scaling(const ScalingMap& s, const Rational& x) { return s.apply(x); }
inline Rational invert_scaling(const ScalingMap& s, const Rational& y) { return s.invert(y); }

// f o s. Series tails are re-bounded: v(a) >= 0 and v(slope) >= 1 give
// v(e'_j) >= offset + slope * start + j v(slope).
inline FunctionModel pullback(const FunctionModel& f, const ScalingMap& s) {
  const auto p = f.prime();
  if (s.prime() != p) throw std::invalid_argument("prime mismatch between model and scaling map");
  require_in_valuation_ring(s.a(), p);
  auto coeffs = poly::compose_affine(f.coefficients(), s.a(), s.slope());
  if (f.is_polynomial()) return FunctionModel::polynomial(std::move(coeffs), p);
  const auto& t = f.tail();
  auto w = valuation(s.slope(), p).value();
  return FunctionModel::series(std::move(coeffs), TailBound{t.offset + t.slope * t.start, w, 0}, p);
}

// Data of an r-parametrizing map: centre c, integer M and a domain that is a
// finite union of pairwise disjoint balls M-next to c inside O_K.
struct ParametrizationData {
  FunctionModel f;
  Rational centre;
  Integer m;
  std::vector<Ball> domain;
  unsigned order = 1;

  bool in_domain(const Rational& x) const {
    return std::any_of(domain.begin(), domain.end(), [&](const Ball& b) { return b.contains(x, f.prime()); });
  }
};

inline bool is_next_to(const Ball& b, const Rational& c, const Integer& m, Prime p) {
  if (b.center == c) return false;
  return b.radius_exp == valuation(b.center - c, p).value() + nu_of(m, p);
}

// Throws on malformed data; analytic conditions are left to the verifiers.
inline void validate(const ParametrizationData& data) {
  const auto p = data.f.prime();
  if (data.order < 1) throw std::invalid_argument("parametrization order must be positive");
  require_in_valuation_ring(data.centre, p);
  for (std::size_t i = 0; i < data.domain.size(); ++i) {
    const auto& b = data.domain[i];
    if (!b.subset_of(valuation_ring(), p)) throw DomainError("domain ball leaves O_K");
    if (!is_next_to(b, data.centre, data.m, p)) throw DomainError("domain ball is not M-next to the centre");
    for (std::size_t j = 0; j < i; ++j)
      if (b.contains(data.domain[j].center, p) || data.domain[j].contains(b.center, p))
        throw DomainError("domain balls overlap");
  }
}

}  // namespace padet
