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

#ifndef NILAA_SUBSPACE_HPP
#define NILAA_SUBSPACE_HPP

#include <vector>

#include "nilaa/matrix.hpp"

namespace nilaa {

/// Rational subspace of Q^n. The basis is kept in reduced row echelon form,
/// so two equal subspaces always compare equal and print identically.
class QSubspace {
 public:
  QSubspace() = default;
  explicit QSubspace(std::size_t ambient) : ambient_(ambient) {}

  static QSubspace span(std::size_t ambient, const std::vector<QVector>& vectors) {
    QSubspace s(ambient);
    s.add(vectors);
    return s;
  }
  static QSubspace whole(std::size_t ambient) {
    QSubspace s(ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
      QVector e(ambient, Rational(0));
      e[i] = 1;
      s.basis_.push_back(std::move(e));
    }
    return s;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  const std::vector<QVector>& basis() const { return basis_; }

  void add(const std::vector<QVector>& vectors) {
    if (vectors.empty()) return;
    std::vector<QVector> rows = basis_;
    for (const auto& v : vectors) {
      if (v.size() != ambient_) throw Error("subspace: vector of wrong dimension");
      rows.push_back(v);
    }
    reduce(rows);
  }
  void add(const QVector& v) { add(std::vector<QVector>{v}); }

  bool contains(const QVector& v) const {
    if (v.size() != ambient_) throw Error("subspace: vector of wrong dimension");
    QVector r = v;
    for (const auto& b : basis_) {
      std::size_t p = pivot(b);
      if (nilaa::is_zero(r[p])) continue;
      Rational f = r[p];
      for (std::size_t j = p; j < ambient_; ++j) r[j] -= f * b[j];
    }
    return nilaa::is_zero(r);
  }
  bool contains(const QSubspace& o) const {
    for (const auto& b : o.basis_)
      if (!contains(b)) return false;
    return true;
  }

  /// Coordinates of v in the echelon basis, or empty when v is not in the span.
  std::optional<QVector> coordinates(const QVector& v) const {
    if (!contains(v)) return std::nullopt;
    QVector c;
    for (const auto& b : basis_) c.push_back(v[pivot(b)]);
    return c;
  }

  QSubspace sum(const QSubspace& o) const {
    QSubspace s(*this);
    s.add(o.basis_);
    return s;
  }

  QSubspace image(const QMatrix& m) const {
    QSubspace s(m.rows());
    std::vector<QVector> imgs;
    for (const auto& b : basis_) imgs.push_back(m * b);
    s.add(imgs);
    return s;
  }

  /// Basis of the linear functionals vanishing on the subspace (as rows).
  std::vector<QVector> annihilator() const;

  friend bool operator==(const QSubspace& a, const QSubspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const QSubspace& a, const QSubspace& b) { return !(a == b); }

 private:
  static std::size_t pivot(const QVector& v) {
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!nilaa::is_zero(v[j])) return j;
    return v.size();
  }

  void reduce(const std::vector<QVector>& rows) {
    QMatrix m(rows.size(), ambient_);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < ambient_; ++j) m(i, j) = rows[i][j];
    auto piv = rref_in_place(m);
    basis_.clear();
    for (std::size_t i = 0; i < piv.size(); ++i) basis_.push_back(m.row(i));
  }

  std::size_t ambient_ = 0;
  std::vector<QVector> basis_;
};

/// Null space of m, as a subspace of Q^cols.
inline QSubspace kernel_basis(const QMatrix& m) {
  QMatrix r = m;
  auto piv = rref_in_place(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<QVector> vs;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
    vs.push_back(std::move(v));
  }
  return QSubspace::span(m.cols(), vs);
}

inline std::vector<QVector> QSubspace::annihilator() const {
  QMatrix m(basis_.size(), ambient_);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) m(i, j) = basis_[i][j];
  return kernel_basis(m).basis();
}

/// Column space of m.
inline QSubspace column_space(const QMatrix& m) {
  std::vector<QVector> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return QSubspace::span(m.rows(), cols);
}

/// Smallest rational subspace containing every value of v for generic
/// parameter values: the span of its monomial coefficient vectors.
inline QSubspace minimal_rational_subspace(const ParamVector& v) {
  std::vector<QVector> vs;
  for (auto& [m, c] : coefficient_vectors(v)) vs.push_back(std::move(c));
  return QSubspace::span(v.size(), vs);
}

}  // namespace nilaa

#endif  // NILAA_SUBSPACE_HPP
