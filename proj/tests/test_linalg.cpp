#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padet/linalg.hpp"
#include "padet/verifiers.hpp"

using namespace padet;

namespace {

RationalMatrix from(const std::vector<std::vector<Rational>>& rows) {
  RationalMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<std::vector<Rational>> random_rows(SeededRng& rng, std::size_t n, std::size_t m, long range, bool fractions) {
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(m));
  for (auto& row : out)
    for (auto& v : row) v = fractions ? fraction(rng.range(-range, range), rng.range(1, range)) : Rational(rng.range(-range, range));
  return out;
}

}  // namespace

TEST(Determinant, CofactorExample) {
  auto m = from({{Rational(1), Rational(0), Rational(0)}, {Rational(1), Rational(1), Rational(1)},
                 {Rational(1), Rational(2), Rational(4)}});
  EXPECT_EQ(determinant(m), 2);
  EXPECT_EQ(rank(m), 3u);
  EXPECT_FALSE(first_kernel_vector(m).has_value());
}

TEST(Determinant, MatchesLeibniz) {
  SeededRng rng(42);
  for (int t = 0; t < 300; ++t) {
    auto n = static_cast<std::size_t>(rng.range(1, 6));
    auto rows = random_rows(rng, n, n, 9, t % 2 == 0);
    if (t % 5 == 0 && n > 1) rows[n - 1] = rows[0];  // force singular sometimes
    ASSERT_EQ(determinant(from(rows)), oracle::leibniz_det(rows)) << "trial " << t;
  }
  EXPECT_EQ(determinant(RationalMatrix(0, 0)), 1);
  EXPECT_THROW(determinant(RationalMatrix(2, 3)), std::invalid_argument);
}

TEST(Rank, AgainstMinors) {
  // rank of a 3x4 matrix = largest k with a nonzero k x k minor.
  SeededRng rng(7);
  for (int t = 0; t < 200; ++t) {
    auto rows = random_rows(rng, 3, 4, 2, false);
    if (t % 3 == 0) rows[2] = rows[0];
    if (t % 7 == 0) rows[1] = std::vector<Rational>(4, Rational(0));
    std::size_t expected = 0;
    for (std::size_t k = 1; k <= 3; ++k) {
      std::vector<std::size_t> cols(4);
      // choose k rows and k columns by bitmask
      for (unsigned rm = 0; rm < 8; ++rm)
        for (unsigned cm = 0; cm < 16; ++cm) {
          if (static_cast<std::size_t>(__builtin_popcount(rm)) != k || static_cast<std::size_t>(__builtin_popcount(cm)) != k) continue;
          std::vector<std::vector<Rational>> minor;
          for (unsigned i = 0; i < 3; ++i) {
            if (!(rm >> i & 1)) continue;
            std::vector<Rational> row;
            for (unsigned j = 0; j < 4; ++j)
              if (cm >> j & 1) row.push_back(rows[i][j]);
            minor.push_back(row);
          }
          if (oracle::leibniz_det(minor) != 0) expected = std::max(expected, k);
        }
    }
    ASSERT_EQ(rank(from(rows)), expected) << "trial " << t;
  }
}

TEST(Kernel, VectorIsInKernelAndNormalized) {
  SeededRng rng(3);
  for (int t = 0; t < 200; ++t) {
    auto r = static_cast<std::size_t>(rng.range(1, 5));
    auto rows = random_rows(rng, r, r + 1, 6, t % 2 == 1);
    auto m = from(rows);
    auto k = first_kernel_vector(m);
    ASSERT_TRUE(k.has_value());
    Integer g(0);
    for (const auto& v : *k) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    ASSERT_EQ(g, 1);
    for (std::size_t i = 0; i < r; ++i) {
      Rational acc(0);
      for (std::size_t j = 0; j <= r; ++j) acc += rows[i][j] * Rational((*k)[j]);
      ASSERT_EQ(acc, 0);
    }
    std::size_t last = k->size();
    while ((*k)[last - 1] == 0) --last;
    ASSERT_GT((*k)[last - 1], 0);
  }
}

TEST(Kernel, FirstFreeColumn) {
  // Row [1 5 7]: pivot column 0, first free column 1 -> (-5, 1, 0).
  auto k = first_kernel_vector(from({{Rational(1), Rational(5), Rational(7)}}));
  ASSERT_TRUE(k);
  EXPECT_EQ(*k, (std::vector<Integer>{-5, 1, 0}));
  // Zero matrix: the first column itself is free.
  auto z = first_kernel_vector(RationalMatrix(2, 3));
  ASSERT_TRUE(z);
  EXPECT_EQ(*z, (std::vector<Integer>{1, 0, 0}));
}
