#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's arithmetic beyond constructing rationals.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "padet/padic.hpp"

namespace oracle {

// v_p of a nonzero machine integer by repeated division; nullopt for 0.
inline std::optional<long> vp(long long n, long p) {
  if (n == 0) return std::nullopt;
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// v_p(a/b) for a reduced fraction given as machine integers.
inline std::optional<long> vp(long long a, long long b, long p) {
  if (a == 0) return std::nullopt;
  return *vp(a, p) - *vp(b, p);
}

inline long euler_phi(long n) {
  long out = n;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    while (n % q == 0) n /= q;
    out -= out / q;
  }
  if (n > 1) out -= out / n;
  return out;
}

// #{a/b reduced : |a| <= H, 1 <= b <= H} = 4 sum_{n<=H} phi(n) - 1.
inline long rationals_up_to(long h) {
  long s = 0;
  for (long n = 1; n <= h; ++n) s += euler_phi(n);
  return 4 * s - 1;
}

// All reduced a/b of height <= h as (a, b) pairs, brute force.
inline std::vector<std::pair<long, long>> fractions(long h) {
  std::vector<std::pair<long, long>> out;
  for (long b = 1; b <= h; ++b)
    for (long a = -h; a <= h; ++a)
      if (std::gcd(a < 0 ? -a : a, b) == 1) out.emplace_back(a, b);
  return out;
}

// Leibniz expansion over all permutations; fine for n <= 7.
inline padet::Rational leibniz_det(const std::vector<std::vector<padet::Rational>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  padet::Rational total(0);
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    padet::Rational term(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline long long binom(long long n, long long k) {
  long long out = 1;
  for (long long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// sup_{H >= 1} 4 p^3 r! (1 + 2 log_p H) H^(-3rd/e) on a log-spaced grid,
// plus a golden-section refinement around the best grid point.
inline double m_constant_numeric(unsigned d, long p) {
  long long r = binom(d + 2, 2);
  long long e = binom(r, 2);
  double alpha = 3.0 * r * d / static_cast<double>(e);
  double fact = 1;
  for (long long i = 2; i <= r; ++i) fact *= static_cast<double>(i);
  double base = 4.0 * std::pow(p, 3) * fact;
  auto g = [&](double u) { return base * (1 + 2 * u / std::log(p)) * std::exp(-alpha * u); };
  double best_u = 0, best = g(0);
  for (int i = 1; i <= 200000; ++i) {
    double u = i * 1e-4;
    if (g(u) > best) best = g(u), best_u = u;
  }
  double lo = std::max(0.0, best_u - 1e-4), hi = best_u + 1e-4;
  for (int it = 0; it < 200; ++it) {
    double a = lo + (hi - lo) * 0.381966, b = hi - (hi - lo) * 0.381966;
    if (g(a) < g(b)) lo = a;
    else hi = b;
  }
  return std::max(best, g((lo + hi) / 2));
}

}  // namespace oracle
