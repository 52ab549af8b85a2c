#pragma once

// Dense univariate polynomials over Q, coefficient i <-> x^i.

#include <vector>

#include "padet/padic.hpp"

namespace padet::poly {

using Coeffs = std::vector<Rational>;

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

inline Coeffs scale(Coeffs a, const Rational& s) {
  for (auto& c : a) c *= s;
  trim(a);
  return a;
}

inline Rational eval(const Coeffs& a, const Rational& x) {
  Rational acc(0);
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline Coeffs derivative(const Coeffs& a, unsigned order = 1) {
  Coeffs out = a;
  for (unsigned k = 0; k < order; ++k) {
    if (out.empty()) break;
    Coeffs next(out.size() - 1);
    for (std::size_t i = 1; i < out.size(); ++i) next[i - 1] = out[i] * Rational(static_cast<long>(i));
    out = std::move(next);
  }
  trim(out);
  return out;
}

// Coefficients of t -> a(y + t). Entry i equals a^(i)(y) / i!.
inline Coeffs taylor_shift(Coeffs a, const Rational& y) {
  const auto n = a.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t i = n - 1; i > k; --i) a[i - 1] += y * a[i];
  trim(a);
  return a;
}

// x -> a(alpha + beta x).
inline Coeffs compose_affine(const Coeffs& a, const Rational& alpha, const Rational& beta) {
  Coeffs out = taylor_shift(a, alpha);
  Rational power(1);
  for (auto& c : out) {
    c *= power;
    power *= beta;
  }
  trim(out);
  return out;
}

inline Coeffs power(const Coeffs& a, unsigned k) {
  Coeffs out{Rational(1)};
  for (unsigned i = 0; i < k; ++i) out = mul(out, a);
  return out;
}

inline long degree(const Coeffs& a) { return static_cast<long>(a.size()) - 1; }

}  // namespace padet::poly
