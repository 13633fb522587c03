// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "chowkit/rational.hpp"

namespace chowkit {

using Vector = std::vector<Rational>;

// Dense row-major matrix over Q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  Vector apply(const Vector& x) const;
  Matrix transpose() const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // strictly increasing column indices
};

// Gauss-Jordan elimination. Pivot = first nonzero entry scanning columns left
// to right, rows top to bottom, so the result is deterministic. The row
// updates for a pivot run in parallel when OpenMP is enabled and the matrix is
// large enough to amortize the fork.
Echelon rref(Matrix m);

// Same elimination, single-threaded. Kept as the reference the parallel
// kernel is tested and benchmarked against.
Echelon rref_serial(Matrix m);

std::size_t rank(const Matrix& m);

// Some x with a*x = b, or nullopt when the system is inconsistent. Free
// variables are set to zero.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

// Basis of {x : a*x = 0}, one vector per free column.
std::vector<Vector> kernel_basis(const Matrix& a);

bool is_zero(const Vector& v);

// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

// Row space grown one vector at a time. The pivot of a stored row is its
// first nonzero column.
class RowSpace {
 public:
  explicit RowSpace(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == cols_; }

  // Adds v to the span; returns false when v was already in it.
  bool insert(Vector v);
  bool contains(Vector v) const;

  // Fully reduce: afterwards every pivot column is zero outside its own row.
  // Keyed by pivot column.
  const std::map<std::size_t, Vector>& reduced();

 private:
  void reduce_against(Vector& v) const;
  std::size_t cols_;
  std::map<std::size_t, Vector> rows_;
};

}  // namespace chowkit
