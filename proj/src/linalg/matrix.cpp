// SPDX-License-Identifier: Apache-2.0
#include "chowkit/matrix.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

#ifdef CHOWKIT_HAVE_OPENMP
#include <omp.h>
#endif

namespace chowkit {

Rational parse_rational(std::string_view text) {
  Rational q;
  if (q.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not a rational literal: " + std::string(text));
  }
  q.canonicalize();
  return q;
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::apply(const Vector& x) const {
  assert(x.size() == cols_);
  Vector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!chowkit::is_zero((*this)(i, j)) && !chowkit::is_zero(x[j])) {
        y[i] += (*this)(i, j) * x[j];
      }
    }
  }
  return y;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

namespace {

// Below this many entries the thread fork costs more than the elimination.
constexpr std::size_t kParallelThreshold = 4096;

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void normalize_pivot_row(Matrix& m, std::size_t r, std::size_t c) {
  const Rational inv = 1 / m(r, c);
  for (std::size_t j = c; j < m.cols(); ++j) {
    if (!is_zero(m(r, j))) m(r, j) *= inv;
  }
}

// row_i -= m(i,c) * row_r, touching only the columns where row_r is nonzero.
void eliminate_row(Matrix& m, std::size_t i, std::size_t r, std::size_t c) {
  if (is_zero(m(i, c))) return;
  const Rational f = m(i, c);
  for (std::size_t j = c; j < m.cols(); ++j) {
    if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
  }
}

std::optional<std::size_t> find_pivot(const Matrix& m, std::size_t from, std::size_t c) {
  for (std::size_t i = from; i < m.rows(); ++i) {
    if (!is_zero(m(i, c))) return i;
  }
  return std::nullopt;
}

}  // namespace

Echelon rref_serial(Matrix m) {
  Echelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    auto p = find_pivot(m, r, c);
    if (!p) continue;
    swap_rows(m, r, *p);
    normalize_pivot_row(m, r, c);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != r) eliminate_row(m, i, r, c);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

Echelon rref(Matrix m) {
#ifdef CHOWKIT_HAVE_OPENMP
  const bool parallel = m.rows() * m.cols() >= kParallelThreshold;
  Echelon out;
  std::size_t r = 0;
  const auto rows = static_cast<std::ptrdiff_t>(m.rows());
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    auto p = find_pivot(m, r, c);
    if (!p) continue;
    swap_rows(m, r, *p);
    normalize_pivot_row(m, r, c);
    // Each target row is written by exactly one thread; the pivot row is
    // only read.
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
      if (static_cast<std::size_t>(i) != r) eliminate_row(m, static_cast<std::size_t>(i), r, c);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
#else
  return rref_serial(std::move(m));
#endif
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve: row count mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Echelon e = rref(std::move(aug));
  Vector x(a.cols());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    const std::size_t c = e.pivots[k];
    if (c == a.cols()) return std::nullopt;
    x[c] = e.reduced(k, a.cols());
  }
  return x;
}

std::vector<Vector> kernel_basis(const Matrix& a) {
  Echelon e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(a.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
      v[e.pivots[k]] = -e.reduced(k, f);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = rref(std::move(aug));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

void RowSpace::reduce_against(Vector& v) const {
  for (const auto& [c, r] : rows_) {
    if (is_zero(v[c])) continue;
    const Rational f = v[c];
    for (std::size_t j = c; j < cols_; ++j)
      if (!is_zero(r[j])) v[j] -= f * r[j];
  }
}

bool RowSpace::insert(Vector v) {
  if (v.size() != cols_) throw std::invalid_argument("RowSpace: vector has the wrong length");
  // rows_ is ordered by pivot, and each row is zero before its pivot, so one
  // ascending pass leaves v zero at every existing pivot.
  reduce_against(v);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (is_zero(v[c])) continue;
    const Rational inv = 1 / v[c];
    for (std::size_t j = c; j < cols_; ++j)
      if (!is_zero(v[j])) v[j] *= inv;
    rows_.emplace(c, std::move(v));
    return true;
  }
  return false;
}

bool RowSpace::contains(Vector v) const {
  reduce_against(v);
  return is_zero(v);
}

const std::map<std::size_t, Vector>& RowSpace::reduced() {
  // Largest pivot first, so every row used for elimination is already
  // fully reduced.
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    Vector& row = it->second;
    for (auto jt = rows_.upper_bound(it->first); jt != rows_.end(); ++jt) {
      const std::size_t c = jt->first;
      if (is_zero(row[c])) continue;
      const Rational f = row[c];
      for (std::size_t j = c; j < cols_; ++j)
        if (!is_zero(jt->second[j])) row[j] -= f * jt->second[j];
    }
  }
  return rows_;
}

bool is_zero(const Vector& v) {
  for (const auto& q : v)
    if (!is_zero(q)) return false;
  return true;
}

}  // namespace chowkit
