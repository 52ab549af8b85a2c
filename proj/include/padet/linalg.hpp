#pragma once

// Exact linear algebra over Q via fraction-free (Bareiss) elimination.
// Rows are first scaled to integers; row scaling changes neither rank nor
// kernel, and the determinant is divided back by the scale factors.

#include <optional>
#include <vector>

#include "padet/padic.hpp"

namespace padet {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

using IntegerMatrix = std::vector<std::vector<Integer>>;

struct Echelon {
  IntegerMatrix rows;                // row echelon form, fraction-free
  std::vector<std::size_t> pivots;  // pivot column of row i
  Rational row_scale = 1;            // product of the integer row scalings
  int sign = 1;                      // parity of row swaps
};

namespace detail {

inline Integer lcm_of_denominators(const RationalMatrix& a, std::size_t i) {
  Integer l(1);
  for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den().get_mpz_t());
  return l;
}

}  // namespace detail

inline Echelon bareiss_echelon(const RationalMatrix& a) {
  Echelon out;
  const auto n = a.rows(), m = a.cols();
  out.rows.assign(n, std::vector<Integer>(m));
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = detail::lcm_of_denominators(a, i);
    out.row_scale *= Rational(l);
    for (std::size_t j = 0; j < m; ++j) {
      Rational scaled = a(i, j) * Rational(l);
      out.rows[i][j] = scaled.get_num();
    }
  }
  auto& rows = out.rows;
  Integer prev(1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < m && r < n; ++col) {
    std::size_t pivot = r;
    while (pivot < n && rows[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != r) {
      std::swap(rows[pivot], rows[r]);
      out.sign = -out.sign;
    }
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = col + 1; j < m; ++j) {
        Integer t = rows[r][col] * rows[i][j] - rows[i][col] * rows[r][j];
        if (mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t()) == 0) throw std::logic_error("Bareiss division is not exact");
        mpz_divexact(rows[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      rows[i][col] = 0;
    }
    prev = rows[r][col];
    out.pivots.push_back(col);
    ++r;
  }
  return out;
}

inline std::size_t rank(const RationalMatrix& a) { return bareiss_echelon(a).pivots.size(); }

inline Rational determinant(const RationalMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (a.rows() == 0) return 1;
  auto e = bareiss_echelon(a);
  if (e.pivots.size() < a.rows()) return 0;
  // With full rank the last Bareiss pivot is the determinant of the scaled matrix.
  Rational det(e.rows.back().back());
  return det * Rational(e.sign) / e.row_scale;
}

// Kernel vector attached to the first non-pivot column: that coordinate is 1,
// all later free coordinates 0. Scaled to a primitive integer vector; its
// last nonzero entry is the free column and is positive. nullopt if the
// columns are independent.
inline std::optional<std::vector<Integer>> first_kernel_vector(const RationalMatrix& a) {
  auto e = bareiss_echelon(a);
  const auto m = a.cols();
  std::vector<bool> is_pivot(m, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (free_col < m && is_pivot[free_col]) ++free_col;
  if (free_col == m) return std::nullopt;
  std::vector<Rational> x(m, Rational(0));
  x[free_col] = 1;
  for (std::size_t k = e.pivots.size(); k-- > 0;) {
    auto pc = e.pivots[k];
    if (pc > free_col) continue;
    Rational acc(0);
    for (std::size_t j = pc + 1; j < m; ++j)
      if (x[j] != 0) acc += Rational(e.rows[k][j]) * x[j];
    x[pc] = -acc / Rational(e.rows[k][pc]);
  }
  Integer l(1), g(0);
  for (const auto& q : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<Integer> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    Rational scaled = x[j] * Rational(l);
    out[j] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[j].get_mpz_t());
  }
  for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return out;
}

}  // namespace padet
