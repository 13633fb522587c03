// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "chowkit/matrix.hpp"
#include "support.hpp"

namespace chowkit {
namespace {

Matrix random_matrix(testing::Sampler& s, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      // Sparse-ish entries make rank deficiency common.
      m(i, j) = s.uniform(0, 2) == 0 ? s.coefficient() : Rational(0);
    }
  }
  return m;
}

Vector multiply(const Matrix& a, const Vector& x) { return a.apply(x); }

TEST(Rref, TwoByTwo) {
  const Echelon e = rref(Matrix::from_rows({{2, 1}, {1, 1}}));
  EXPECT_EQ(e.reduced, Matrix::identity(2));
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1}));
}

TEST(Rref, RankDeficientPivotsInColumnOrder) {
  const Echelon e = rref(Matrix::from_rows({{0, 2, 4}, {0, 1, 2}, {1, 0, 1}}));
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(e.reduced.row(0), (Vector{1, 0, 1}));
  EXPECT_EQ(e.reduced.row(1), (Vector{0, 1, 2}));
  EXPECT_TRUE(is_zero(e.reduced.row(2)));
}

TEST(Rref, EmptyMatrix) {
  EXPECT_TRUE(rref(Matrix(0, 3)).pivots.empty());
  EXPECT_EQ(rank(Matrix(3, 0)), 0u);
}

TEST(Solve, InconsistentIsNullopt) {
  const Matrix a = Matrix::from_rows({{1, 1}, {1, 1}});
  EXPECT_FALSE(solve(a, {1, 2}).has_value());
  const auto x = solve(a, {2, 2});
  ASSERT_TRUE(x);
  EXPECT_EQ(multiply(a, *x), (Vector{2, 2}));
}

TEST(Kernel, SingleRow) {
  const auto k = kernel_basis(Matrix::from_rows({{1, 2}}));
  ASSERT_EQ(k.size(), 1u);
  // Proportional to (-2, 1).
  EXPECT_EQ(k[0][0], Rational(-2) * k[0][1]);
  EXPECT_FALSE(is_zero(k[0]));
}

TEST(Inverse, HalfEntries) {
  Matrix m = Matrix::from_rows({{1, Rational(1, 2)}, {0, 1}});
  const auto inv = inverse(m);
  ASSERT_TRUE(inv);
  EXPECT_EQ((*inv)(0, 1), Rational(-1, 2));
  EXPECT_FALSE(inverse(Matrix::from_rows({{1, 2}, {2, 4}})).has_value());
}

TEST(RowSpace, InsertAndContain) {
  RowSpace rs(3);
  EXPECT_TRUE(rs.insert({1, 1, 0}));
  EXPECT_TRUE(rs.insert({0, 1, 1}));
  EXPECT_FALSE(rs.insert({1, 2, 1}));
  EXPECT_TRUE(rs.contains({2, 1, -1}));
  EXPECT_FALSE(rs.contains({0, 0, 1}));
  EXPECT_EQ(rs.rank(), 2u);
  EXPECT_FALSE(rs.full());
}

// Randomized properties, 200 matrices each.

TEST(LinalgProperty, RrefIdempotent) {
  testing::Sampler s(11);
  for (int n = 0; n < 200; ++n) {
    const Matrix m = random_matrix(s, s.uniform(1, 7), s.uniform(1, 7));
    const Echelon once = rref(m);
    const Echelon twice = rref(once.reduced);
    EXPECT_EQ(once.reduced, twice.reduced);
    EXPECT_EQ(once.pivots, twice.pivots);
  }
}

TEST(LinalgProperty, ParallelMatchesSerial) {
  testing::Sampler s(12);
  for (int n = 0; n < 200; ++n) {
    // One in ten is past the size where the row loop goes parallel.
    const Matrix m = n % 10 == 0 ? random_matrix(s, s.uniform(100, 120), s.uniform(41, 44))
                                 : random_matrix(s, s.uniform(1, 40), s.uniform(1, 12));
    const Echelon a = rref(m);
    const Echelon b = rref_serial(m);
    EXPECT_EQ(a.reduced, b.reduced);
    EXPECT_EQ(a.pivots, b.pivots);
  }
}

TEST(LinalgProperty, SolveSatisfiesSystem) {
  testing::Sampler s(13);
  for (int n = 0; n < 200; ++n) {
    const Matrix a = random_matrix(s, s.uniform(1, 6), s.uniform(1, 6));
    Vector b(a.rows());
    if (n % 2 == 0) {
      // Guaranteed consistent: b = a x0.
      Vector x0(a.cols());
      for (auto& v : x0) v = s.coefficient();
      b = a.apply(x0);
    } else {
      for (auto& v : b) v = s.coefficient();
    }
    const auto x = solve(a, b);
    if (n % 2 == 0) ASSERT_TRUE(x);
    if (x) EXPECT_EQ(a.apply(*x), b);
  }
}

TEST(LinalgProperty, KernelVectorsAnnihilateAndCount) {
  testing::Sampler s(14);
  for (int n = 0; n < 200; ++n) {
    const Matrix a = random_matrix(s, s.uniform(1, 6), s.uniform(1, 6));
    const auto k = kernel_basis(a);
    EXPECT_EQ(k.size(), a.cols() - rank(a));
    for (const auto& v : k) EXPECT_TRUE(is_zero(a.apply(v)));
  }
}

}  // namespace
}  // namespace chowkit
