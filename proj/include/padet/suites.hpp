#pragma once

// Seeded randomized and exhaustive trial suites over the lemmas and the
// counting pipeline. Each suite is a pure function of its parameters.

#include <array>
#include <bit>
#include <chrono>
#include <functional>

#include "padet/counting.hpp"
#include "padet/json_io.hpp"

namespace padet::suites {

struct Outcome {
  std::string name;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t indeterminate = 0;
  std::vector<std::string> witnesses;  // first few only
  double seconds = 0;

  bool ok() const { return violations == 0 && indeterminate == 0; }

  void violation(std::string what) {
    ++violations;
    if (witnesses.size() < 16) witnesses.push_back(std::move(what));
  }
};

namespace detail {

inline constexpr std::array<Prime, 3> kPrimes{2, 3, 5};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline Rational random_integral(SeededRng& rng, long h, Prime p) {
  for (;;) {
    long b = rng.range(1, h);
    if (b % static_cast<long>(p) == 0) continue;
    return fraction(rng.range(-h, h), b);
  }
}

}  // namespace detail

// A p-integral polynomial of exact degree `degree`: small integer
// coefficients, one of them occasionally divided by a unit.
inline FunctionModel planted_polynomial(unsigned degree, Prime p, std::uint64_t seed) {
  SeededRng rng(seed * 0x9e3779b97f4a7c15ULL + degree * 131 + p);
  poly::Coeffs c(degree + 1);
  for (auto& a : c) a = Rational(rng.range(-3, 3));
  while (c.back() == 0) c.back() = Rational(rng.range(-3, 3));
  if (rng.range(0, 3) == 0) {
    long unit = p == 2 ? 3 : 2;
    auto i = static_cast<std::size_t>(rng.range(0, static_cast<long>(degree) - 1));
    c[i] = c[i] == 0 ? fraction(1, unit) : c[i] / Rational(unit);
  }
  return FunctionModel::polynomial(std::move(c), p);
}

// Ball census: the number of RV classes met by height <= H rationals never
// exceeds 2 M p^(N+1) (1 + 2 log_p H).
inline Outcome census(std::size_t trials, std::uint64_t seed) {
  detail::Stopwatch clock;
  Outcome out;
  out.name = "census";
  SeededRng rng(seed ^ 0xce5u);
  for (std::size_t t = 0; t < trials; ++t) {
    Prime p = detail::kPrimes[static_cast<std::size_t>(rng.range(0, 2))];
    Rational c = fraction(rng.range(-50, 50), rng.range(1, 50));
    Integer m(rng.range(1, 6));
    long n = rng.range(0, 5);
    long h = rng.range(1, 64);
    ++out.trials;
    try {
      auto rep = ball_census(c, m, n, h, p);
      if (!rep.ok)
        out.violation("p=" + std::to_string(p) + " c=" + format_rational(c) + " M=" + m.get_str() +
                      " N=" + std::to_string(n) + " H=" + std::to_string(h) + " count=" + std::to_string(rep.count()));
    } catch (const IndeterminateBound&) {
      ++out.indeterminate;
    }
  }
  out.seconds = clock.seconds();
  return out;
}

// Determinant estimate: for the r functions x^j g(x)^k, g a pulled back
// planted polynomial, at r points of an open ball of radius p^-k inside
// M_K, v_p(det) >= k e.
inline Outcome determinant(std::size_t trials, std::uint64_t seed) {
  detail::Stopwatch clock;
  Outcome out;
  out.name = "determinant";
  SeededRng rng(seed ^ 0xde7u);
  for (std::size_t t = 0; t < trials; ++t) {
    Prime p = detail::kPrimes[static_cast<std::size_t>(rng.range(0, 2))];
    unsigned d = rng.range(0, 1) == 0 ? 1 : 2;  // r = 3 or 6
    auto f = planted_polynomial(d + 1, p, seed * 1000 + t);
    Rational c(rng.range(-3, 3));
    Integer m(rng.range(1, 6));
    Rational a = detail::random_integral(rng, 16, p);
    while (a == c) a = detail::random_integral(rng, 16, p);
    auto g = pullback(f, ScalingMap(a, c, m, p));

    std::vector<FunctionModel> fs;
    for (auto [j, k] : monomials(d)) {
      poly::Coeffs xj(j + 1);
      xj[j] = 1;
      fs.push_back(FunctionModel::polynomial(poly::mul(xj, poly::power(g.coefficients(), k)), p));
    }
    std::int64_t k = (t % 6) + 1;
    Rational centre = Rational(p) * detail::random_integral(rng, 8, p);
    Ball ball{centre, k};
    std::vector<Rational> pts;
    while (pts.size() < fs.size()) {
      Rational x = centre + ppow(p, k + 1) * detail::random_integral(rng, 50, p);
      if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
    }
    ++out.trials;
    auto rep = det_valuation_check(fs, ball, pts);
    if (!rep.ok)
      out.violation("p=" + std::to_string(p) + " r=" + std::to_string(fs.size()) + " k=" + std::to_string(k) +
                    " v(det)=" + rep.valuation.str() + " < " + std::to_string(rep.required));
  }
  out.seconds = clock.seconds();
  return out;
}

namespace detail {

// Maximum clique by branch and bound with greedy colouring bounds; stops
// once a clique of size `cap` exists.
class CliqueSearch {
 public:
  using Bits = std::vector<std::uint64_t>;

  explicit CliqueSearch(std::size_t n) : n_(n), words_((n + 63) / 64), adj_(n, Bits(words_, 0)) {}

  void connect(std::size_t i, std::size_t j) {
    adj_[i][j / 64] |= std::uint64_t(1) << (j % 64);
    adj_[j][i / 64] |= std::uint64_t(1) << (i % 64);
  }

  std::vector<std::size_t> run(std::size_t cap) {
    cap_ = cap;
    best_.clear();
    std::vector<std::size_t> current;
    Bits all(words_, 0);
    for (std::size_t i = 0; i < n_; ++i) all[i / 64] |= std::uint64_t(1) << (i % 64);
    expand(current, all);
    return best_;
  }

 private:
  static std::size_t popcount(const Bits& b) {
    std::size_t s = 0;
    for (auto w : b) s += static_cast<std::size_t>(std::popcount(w));
    return s;
  }

  void expand(std::vector<std::size_t>& current, Bits cand) {
    if (best_.size() >= cap_) return;
    // Greedy colouring of the candidates gives order and bounds.
    std::vector<std::size_t> order, colour;
    Bits uncoloured = cand;
    std::size_t k = 0;
    while (popcount(uncoloured) > 0) {
      ++k;
      Bits q = uncoloured;
      while (popcount(q) > 0) {
        std::size_t v = first(q);
        q[v / 64] &= ~(std::uint64_t(1) << (v % 64));
        uncoloured[v / 64] &= ~(std::uint64_t(1) << (v % 64));
        for (std::size_t w = 0; w < words_; ++w) q[w] &= ~adj_[v][w];
        order.push_back(v);
        colour.push_back(k);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + colour[i] <= best_.size() || best_.size() >= cap_) return;
      std::size_t v = order[i];
      current.push_back(v);
      Bits next(words_);
      for (std::size_t w = 0; w < words_; ++w) next[w] = cand[w] & adj_[v][w];
      if (popcount(next) == 0) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, next);
      }
      current.pop_back();
      cand[v / 64] &= ~(std::uint64_t(1) << (v % 64));
    }
  }

  static std::size_t first(const Bits& b) {
    for (std::size_t w = 0; w < b.size(); ++w)
      if (b[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(b[w]));
    return b.size() * 64;
  }

  std::size_t n_, words_;
  std::vector<Bits> adj_;
  std::size_t cap_ = 0;
  std::vector<std::size_t> best_;
};

}  // namespace detail

struct SeparationCase {
  Prime p;
  long n;
  Rational c;
  std::size_t largest = 0;  // largest hypothesis-satisfying subset found
  Integer bound;            // p^(N+1)
};

// Separation lemma: among height <= H rationals, the largest set that
// pairwise satisfies |x-c| = |y-c| and |x-y| >= |p^N||x-c| is found by an
// exact clique search (capped at p^(N+1)+1) and checked against p^(N+1).
// Centres are the height <= 2 elements of O_K.
inline Outcome separation(std::span<const Prime> primes, long n_max, long h, std::vector<SeparationCase>* cases = nullptr) {
  detail::Stopwatch clock;
  Outcome out;
  out.name = "separation";
  for (Prime p : primes) {
    auto pool = enum_rationals(h, std::nullopt, p);
    for (const auto& c : enum_rationals(2, valuation_ring(), p)) {
      std::vector<Rational> vertices;
      for (const auto& x : pool)
        if (x != c) vertices.push_back(x);
      for (long n = 0; n <= n_max; ++n) {
        detail::CliqueSearch search(vertices.size());
        for (std::size_t i = 0; i < vertices.size(); ++i)
          for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (separation_compatible(vertices[i], vertices[j], c, n, p)) search.connect(i, j);
        Integer bound = ipow(p, static_cast<unsigned long>(n + 1));
        auto clique = search.run(bound.get_ui() + 1);
        std::vector<Rational> chosen;
        for (auto i : clique) chosen.push_back(vertices[i]);
        auto rep = check_separation(chosen, c, n, p);
        ++out.trials;
        if (!rep.hypotheses_hold())
          out.violation("clique search returned an invalid set for p=" + std::to_string(p));
        else if (!rep.conclusion_holds)
          out.violation("p=" + std::to_string(p) + " N=" + std::to_string(n) + " c=" + format_rational(c) +
                        " m=" + std::to_string(rep.m));
        if (cases) cases->push_back({p, n, c, rep.m, bound});
      }
    }
  }
  out.seconds = clock.seconds();
  return out;
}

// Scaling lemma: for an r-parametrization (f, c, M) of a ball M-next to c
// and a in it, f(s_a(x)) is T_r on M_K.
inline Outcome scaling_lemma(std::size_t trials, std::uint64_t seed) {
  detail::Stopwatch clock;
  Outcome out;
  out.name = "scaling_lemma";
  SeededRng rng(seed ^ 0x5ca1u);
  const Sampling check{8, 64, seed, 1000};
  for (std::size_t t = 0; t < trials; ++t) {
    Prime p = detail::kPrimes[static_cast<std::size_t>(rng.range(0, 2))];
    unsigned d = rng.range(1, 2);
    unsigned r = constants(d).r;
    auto f = planted_polynomial(static_cast<unsigned>(rng.range(1, r)), p, seed * 7919 + t);
    Rational c = detail::random_integral(rng, 4, p);
    Integer m(rng.range(1, 6));
    Rational a = detail::random_integral(rng, 16, p);
    while (a == c) a = detail::random_integral(rng, 16, p);
    ParametrizationData data{f, c, m, {canonical(ball_next_to(a, c, m, p), p)}, r};
    ++out.trials;
    auto pre = check_r_parametrizing(data, check);
    if (!pre.ok()) {
      out.violation("trial " + std::to_string(t) + ": generated data is not r-parametrizing");
      continue;
    }
    auto g = pullback(f, ScalingMap(a, c, m, p));
    auto rep = check_Tr(g, maximal_ideal(), r, check);
    if (!rep.ok())
      out.violation("p=" + std::to_string(p) + " a=" + format_rational(a) + " c=" + format_rational(c) +
                    " M=" + m.get_str() + ": " + std::to_string(rep.violation_count) + " T_r violations");
  }
  out.seconds = clock.seconds();
  return out;
}

// Jacobian property (M = 1) and Taylor equality of orders 0 and deg-1 for
// x^2 and x^3 on every ball 4-next to 0 through a height <= H element of O_K.
inline Outcome jacobian_taylor(std::span<const Prime> primes, long h, std::uint64_t seed) {
  detail::Stopwatch clock;
  Outcome out;
  out.name = "jacobian_taylor";
  const Sampling s{h, 16, seed, 1000};
  for (Prime p : primes) {
    std::set<Ball, BallLess> balls;
    for (const auto& x : enum_rationals(h, valuation_ring(), p))
      if (x != 0) balls.insert(canonical(ball_next_to(x, Rational(0), Integer(4), p), p));
    for (unsigned deg : {2u, 3u}) {
      poly::Coeffs mono(deg + 1);
      mono[deg] = 1;
      auto f = FunctionModel::polynomial(mono, p);
      for (const auto& b : balls) {
        auto jac = check_jacobian_property(f, b, Integer(1), s);
        out.trials += jac.checked;
        if (!jac.ok())
          out.violation("jacobian x^" + std::to_string(deg) + " p=" + std::to_string(p) + " ball " +
                        io::ball(b).dump() + ": " + std::to_string(jac.violation_count));
        for (unsigned r : {0u, deg - 1}) {
          auto tay = check_taylor_order(f, b, r, s);
          out.trials += tay.checked;
          if (!tay.ok())
            out.violation("taylor r=" + std::to_string(r) + " x^" + std::to_string(deg) + " p=" + std::to_string(p) +
                          " ball " + io::ball(b).dump() + ": " + std::to_string(tay.violation_count));
          out.indeterminate += tay.uncertain;
        }
        out.indeterminate += jac.uncertain;
      }
    }
  }
  out.seconds = clock.seconds();
  return out;
}

// One cell of the oracle matrix: planted polynomial of degree d+1, centre
// and M drawn from the seed.
struct OracleCase {
  Prime p;
  unsigned d;
  std::uint64_t seed;
  long h;
};

inline FunctionModel oracle_model(const OracleCase& k) { return planted_polynomial(k.d + 1, k.p, k.seed); }
inline Rational oracle_centre(const OracleCase& k) { return Rational(static_cast<long>(k.seed % 3) - 1); }
inline Integer oracle_m(const OracleCase& k) { return Integer(static_cast<unsigned long>(1 + k.seed % 2)); }

inline std::vector<OracleCase> oracle_matrix() {
  std::vector<OracleCase> out;
  for (Prime p : detail::kPrimes)
    for (unsigned d : {1u, 2u})
      for (std::uint64_t seed = 1; seed <= 5; ++seed)
        for (long h : {1L, 2L, 4L, 8L, 16L}) out.push_back({p, d, seed, h});
  return out;
}

inline CountCertificate run_oracle_case(const OracleCase& k, unsigned jobs = 1) {
  CountOptions opt;
  opt.jobs = jobs;
  opt.strict = false;
  return count_points(oracle_model(k), oracle_centre(k), oracle_m(k), k.d, k.h, opt);
}

// Threshold exactness: p^((N-1)e) <= r! H^(3rd) < p^(Ne).
inline Outcome threshold(unsigned d_max, long h_max, std::span<const Prime> primes) {
  detail::Stopwatch clock;
  Outcome out;
  out.name = "threshold";
  for (unsigned d = 1; d <= d_max; ++d) {
    auto k = constants(d);
    for (long h = 1; h <= h_max; ++h) {
      Integer target = cleared_determinant_bound(d, h);
      for (Prime p : primes) {
        long n = threshold_N(d, h, p);
        ++out.trials;
        bool above = target < ipow(p, static_cast<unsigned long>(n) * k.e);
        bool minimal = ipow(p, static_cast<unsigned long>(n - 1) * k.e) <= target;
        if (!above || !minimal)
          out.violation("d=" + std::to_string(d) + " H=" + std::to_string(h) + " p=" + std::to_string(p) +
                        " N=" + std::to_string(n));
      }
    }
  }
  out.seconds = clock.seconds();
  return out;
}

struct OracleSweep {
  Outcome equivalence, coverage, curve_bound;
  double slowest_case = 0;  // seconds
};

inline std::string describe(const OracleCase& k) {
  return "p=" + std::to_string(k.p) + " d=" + std::to_string(k.d) + " seed=" + std::to_string(k.seed) +
         " H=" + std::to_string(k.h);
}

// Pipeline against brute force over the whole oracle matrix.
inline OracleSweep oracle(unsigned jobs = 1) {
  OracleSweep out;
  out.equivalence.name = "oracle_equivalence";
  out.coverage.name = "coverage";
  out.curve_bound.name = "curve_bound";
  detail::Stopwatch total;
  for (const auto& k : oracle_matrix()) {
    detail::Stopwatch clock;
    ++out.equivalence.trials;
    ++out.coverage.trials;
    ++out.curve_bound.trials;
    try {
      auto cert = run_oracle_case(k, jobs);
      if (!cert.oracle_match())
        out.equivalence.violation(describe(k) + ": pipeline " + std::to_string(cert.pipeline_count()) + " vs oracle " +
                                  std::to_string(cert.oracle_count()));
      if (!cert.uncovered.empty() || !cert.catch_report.coverage_ok)
        out.coverage.violation(describe(k) + ": " + std::to_string(cert.uncovered.size()) + " uncovered");
      if (!cert.catch_report.bound.holds)
        out.curve_bound.violation(describe(k) + ": " + std::to_string(cert.catch_report.curve_count()) + " curves");
    } catch (const IndeterminateBound&) {
      ++out.curve_bound.indeterminate;
    } catch (const Error& e) {
      out.equivalence.violation(describe(k) + ": " + e.what());
    }
    out.slowest_case = std::max(out.slowest_case, clock.seconds());
  }
  out.equivalence.seconds = out.coverage.seconds = out.curve_bound.seconds = total.seconds();
  return out;
}

// Repeated serial runs and a parallel run give byte-identical certificates.
inline Outcome determinism(unsigned jobs) {
  detail::Stopwatch clock;
  Outcome out;
  out.name = "determinism";
  for (const auto& k : oracle_matrix()) {
    auto first = io::certificate(run_oracle_case(k, 1)).dump();
    auto again = io::certificate(run_oracle_case(k, 1)).dump();
    auto parallel = io::certificate(run_oracle_case(k, jobs)).dump();
    ++out.trials;
    if (first != again || first != parallel) out.violation(describe(k));
  }
  out.seconds = clock.seconds();
  return out;
}

}  // namespace padet::suites
