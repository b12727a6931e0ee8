// Copyright 2026 The nilsolv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NILSOLV_MATRIX_H_
#define NILSOLV_MATRIX_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nilsolv/errors.h"
#include "nilsolv/field.h"

namespace nilsolv {

// Dense row-major matrix over one of the scalar types in field.h.
template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  F trace() const {
    F t(0);
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero() const {
    for (const F& x : data_)
      if (!FieldTraits<F>::is_zero(x)) return false;
    return true;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const F& s) {
    for (F& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const F& s) { return a *= s; }
  friend Matrix operator*(const F& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (FieldTraits<F>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!(a.data_[k] == b.data_[k])) return false;
    return true;
  }

  std::vector<F> apply(const std::vector<F>& x) const {
    if (x.size() != cols_) throw DomainError("matrix-vector shape mismatch");
    std::vector<F> y(rows_, F(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  template <class G, class Convert>
  Matrix<G> map(Convert convert) const {
    Matrix<G> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = convert((*this)(i, j));
    return out;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

namespace detail {

template <class F>
bool negligible(const F& x, double scale) {
  if constexpr (FieldTraits<F>::kExact) {
    (void)scale;
    return FieldTraits<F>::is_zero(x);
  } else {
    return std::abs(x) <= 1e-12 * scale;
  }
}

template <class F>
double magnitude(const Matrix<F>& a) {
  double s = 0;
  if constexpr (!FieldTraits<F>::kExact) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) s = std::max(s, std::abs(a(i, j)));
  }
  return s > 0 ? s : 1.0;
}

}  // namespace detail

// Reduced row echelon form in place; returns pivot columns in order.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& a) {
  std::vector<std::size_t> pivots;
  const double scale = detail::magnitude(a);
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t best = a.rows();
    if constexpr (FieldTraits<F>::kExact) {
      for (std::size_t r = row; r < a.rows(); ++r)
        if (!FieldTraits<F>::is_zero(a(r, col))) {
          best = r;
          break;
        }
    } else {
      double big = 0;
      for (std::size_t r = row; r < a.rows(); ++r)
        if (std::abs(a(r, col)) > big) {
          big = std::abs(a(r, col));
          best = r;
        }
      if (best < a.rows() && detail::negligible(a(best, col), scale)) best = a.rows();
    }
    if (best == a.rows()) continue;
    if (best != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(best, j), a(row, j));
    const F inv = F(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || FieldTraits<F>::is_zero(a(r, col))) continue;
      const F f = a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(r, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
std::size_t rank(Matrix<F> a) {
  return rref(a).size();
}

// Basis of {x : a x = 0}, one vector per free column.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> a) {
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(a.cols(), F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// One solution of a x = b, or nullopt when inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& a, const std::vector<F>& b) {
  if (b.size() != a.rows()) throw DomainError("solve: shape mismatch");
  Matrix<F> aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<F> x(a.cols(), F(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& a) {
  if (a.rows() != a.cols()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<F> aug(n, 2 * n);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < n; ++i) aug(i, n + i) = F(1);
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw DomainError("singular matrix");
  return aug.block(0, n, n, n);
}

template <class F>
F determinant(Matrix<F> a) {
  if (a.rows() != a.cols()) throw DomainError("determinant of a non-square matrix");
  F det(1);
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = col; r < n; ++r)
      if (!FieldTraits<F>::is_zero(a(r, col))) {
        piv = r;
        break;
      }
    if (piv == n) return F(0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (FieldTraits<F>::is_zero(a(r, col))) continue;
      const F f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

}  // namespace nilsolv

#endif  // NILSOLV_MATRIX_H_
