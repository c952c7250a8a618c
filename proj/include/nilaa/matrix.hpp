// Copyright 2026 The nilaa Authors
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

#ifndef NILAA_MATRIX_HPP
#define NILAA_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "nilaa/poly.hpp"
#include "nilaa/rational.hpp"

namespace nilaa {

/// Dense row-major matrix over an exact ring (Rational or Poly).
template <typename S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}
  Matrix(std::initializer_list<std::initializer_list<S>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error("ragged matrix literal");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<S>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw Error("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<S> column(std::size_t j) const {
    std::vector<S> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<S> row(std::size_t i) const {
    return std::vector<S>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void set_column(std::size_t j, const std::vector<S>& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!nilaa::is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product dimension mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (nilaa::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend std::vector<S> operator*(const Matrix& a, const std::vector<S>& v) {
    if (a.cols_ != v.size()) throw Error("matrix-vector dimension mismatch");
    std::vector<S> r(a.rows_, S(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (!nilaa::is_zero(aik)) r[i] += aik * v[k];
      }
    return r;
  }
  Matrix scaled(const S& s) const {
    Matrix r(*this);
    for (auto& x : r.data_) x = x * s;
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix pow(unsigned e) const {
    if (!square()) throw Error("power of a non-square matrix");
    Matrix r = identity(rows_), b = *this;
    while (e) {
      if (e & 1u) r = r * b;
      e >>= 1u;
      if (e) b = b * b;
    }
    return r;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

using QMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<Poly>;

inline PolyMatrix to_poly_matrix(const QMatrix& m) {
  PolyMatrix p(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) p(i, j) = Poly(m(i, j));
  return p;
}

inline bool is_integer(const QMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_integer(m(i, j))) return false;
  return true;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref_in_place(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(QMatrix m) { return rref_in_place(m).size(); }

inline Rational determinant(QMatrix m) {
  if (!m.square()) throw Error("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m(p, c))) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

inline std::optional<QMatrix> inverse(const QMatrix& m) {
  if (!m.square()) throw Error("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref_in_place(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Unique solution of m x = b for square invertible m, or nullopt.
inline std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
  const std::size_t n = m.rows();
  if (b.size() != n) throw Error("solve: dimension mismatch");
  QMatrix aug(n, m.cols() + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto piv = rref_in_place(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  if (piv.size() != m.cols()) return std::nullopt;
  QVector x(m.cols());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, m.cols());
  return x;
}

/// Smallest k >= 1 with (m - I)^k = 0, or nullopt when m is not unipotent.
inline std::optional<unsigned> unipotency_index(const QMatrix& m) {
  if (!m.square()) throw Error("unipotency of a non-square matrix");
  const QMatrix n = m - QMatrix::identity(m.rows());
  QMatrix p = n;
  for (unsigned k = 1; k <= m.rows() + 1; ++k) {
    if (p.is_zero()) return k;
    p = p * n;
  }
  return std::nullopt;
}

/// Exact generic rank of a polynomial matrix: fraction-free elimination
/// over the polynomial ring (rank over the field of rational functions).
inline std::size_t generic_rank(PolyMatrix m) {
  std::size_t r = 0;
  Poly prev(1);
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j)
        m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)).divide_exact(prev);
      m(i, c) = Poly();
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

}  // namespace nilaa

#endif  // NILAA_MATRIX_HPP
