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

#ifndef NILAA_LIE_ALGEBRA_HPP
#define NILAA_LIE_ALGEBRA_HPP

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nilaa/matrix.hpp"
#include "nilaa/subspace.hpp"

namespace nilaa {

/// One structure constant [e_i, e_j] contains `value` * e_k (0-based).
struct StructureConstant {
  std::size_t i, j, k;
  Rational value;
};

class AntisymmetryError : public Error {
 public:
  AntisymmetryError(std::size_t i, std::size_t j, std::size_t k)
      : Error("structure constants violate antisymmetry at (" + std::to_string(i + 1) + "," +
              std::to_string(j + 1) + "," + std::to_string(k + 1) + ")"),
        i(i), j(j), k(k) {}
  std::size_t i, j, k;
};

class JacobiViolation : public Error {
 public:
  JacobiViolation(std::size_t i, std::size_t j, std::size_t k, QVector residual)
      : Error("Jacobi identity fails for basis triple (" + std::to_string(i + 1) + "," +
              std::to_string(j + 1) + "," + std::to_string(k + 1) + ")"),
        i(i), j(j), k(k), residual(std::move(residual)) {}
  std::size_t i, j, k;
  QVector residual;
};

class NotNilpotent : public Error {
 public:
  explicit NotNilpotent(std::size_t stable_dim)
      : Error("lower central series stabilises at dimension " + std::to_string(stable_dim)),
        stable_dim(stable_dim) {}
  std::size_t stable_dim;
};

/// Finite-dimensional Lie algebra over Q in a fixed basis e_1..e_d.
class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// Builds the bracket table from constants with i != j. Each unordered
  /// pair may be given once or twice; a second entry must be the negation
  /// of the first. Diagonal entries must vanish.
  LieAlgebra(std::size_t dim, const std::vector<StructureConstant>& entries)
      : dim_(dim), c_(dim * dim * dim, Rational(0)) {
    if (dim == 0) throw Error("Lie algebra of dimension 0");
    std::vector<bool> seen(dim * dim * dim, false);
    for (const auto& e : entries) {
      if (e.i >= dim || e.j >= dim || e.k >= dim) throw Error("structure constant index out of range");
      if (e.i == e.j) {
        if (!nilaa::is_zero(e.value)) throw AntisymmetryError(e.i, e.j, e.k);
        continue;
      }
      const std::size_t a = idx(e.i, e.j, e.k), b = idx(e.j, e.i, e.k);
      if (seen[a] || seen[b]) {
        if (c_[a] != e.value) throw AntisymmetryError(e.i, e.j, e.k);
        continue;
      }
      seen[a] = seen[b] = true;
      c_[a] = e.value;
      c_[b] = -e.value;
    }
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k)
          if (!nilaa::is_zero(c_[idx(i, j, k)])) sparse_.push_back({i, j, k, c_[idx(i, j, k)]});
  }

  std::size_t dim() const { return dim_; }

  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const { return c_[idx(i, j, k)]; }

  /// Nonzero constants with i < j.
  const std::vector<StructureConstant>& entries() const { return sparse_; }

  bool is_abelian() const { return sparse_.empty(); }

  QVector basis_vector(std::size_t i) const {
    QVector e(dim_, Rational(0));
    e.at(i) = 1;
    return e;
  }

  template <typename S>
  std::vector<S> bracket(const std::vector<S>& x, const std::vector<S>& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw Error("bracket: dimension mismatch");
    std::vector<S> r(dim_, S(0));
    for (const auto& e : sparse_) {
      if (nilaa::is_zero(x[e.i]) && nilaa::is_zero(x[e.j])) continue;
      S t = x[e.i] * y[e.j] - x[e.j] * y[e.i];
      if (nilaa::is_zero(t)) continue;
      r[e.k] += t * S(e.value);
    }
    return r;
  }

  /// ad_x: column j is [x, e_j].
  template <typename S>
  Matrix<S> ad_matrix(const std::vector<S>& x) const {
    if (x.size() != dim_) throw Error("ad_matrix: dimension mismatch");
    Matrix<S> m(dim_, dim_);
    for (const auto& e : sparse_) {
      // [x, e_j] gets x_i c_ij^k ; [x, e_i] gets -x_j c_ij^k
      if (!nilaa::is_zero(x[e.i])) m(e.k, e.j) += x[e.i] * S(e.value);
      if (!nilaa::is_zero(x[e.j])) m(e.k, e.i) -= x[e.j] * S(e.value);
    }
    return m;
  }

  QSubspace bracket_span(const QSubspace& a, const QSubspace& b) const {
    QSubspace s(dim_);
    std::vector<QVector> vs;
    for (const auto& x : a.basis())
      for (const auto& y : b.basis()) {
        QVector z = bracket(x, y);
        if (!nilaa::is_zero(z)) vs.push_back(std::move(z));
      }
    s.add(vs);
    return s;
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

 private:
  std::size_t idx(std::size_t i, std::size_t j, std::size_t k) const { return (i * dim_ + j) * dim_ + k; }

  std::size_t dim_ = 0;
  std::vector<Rational> c_;
  std::vector<StructureConstant> sparse_;
};

/// Lower central series g = g_1 > g_2 = [g, g] > ... until it stops.
inline std::vector<QSubspace> lower_central_series(const LieAlgebra& g) {
  std::vector<QSubspace> series{QSubspace::whole(g.dim())};
  const QSubspace whole = series.front();
  for (;;) {
    QSubspace next = g.bracket_span(whole, series.back());
    if (next.dim() == series.back().dim()) break;
    series.push_back(std::move(next));
    if (series.back().is_zero()) break;
  }
  return series;
}

struct AlgebraInfo {
  std::size_t nilpotency_class;
  std::vector<QSubspace> lower_central_series;  ///< ends with the zero subspace
};

/// Checks Jacobi and nilpotency. Antisymmetry is enforced at construction.
inline AlgebraInfo validate_algebra(const LieAlgebra& g) {
  const std::size_t d = g.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        QVector ei = g.basis_vector(i), ej = g.basis_vector(j), ek = g.basis_vector(k);
        QVector r = g.bracket(ei, g.bracket(ej, ek));
        QVector s = g.bracket(ej, g.bracket(ek, ei));
        QVector t = g.bracket(ek, g.bracket(ei, ej));
        for (std::size_t m = 0; m < d; ++m) r[m] += s[m] + t[m];
        if (!is_zero(r)) throw JacobiViolation(i, j, k, r);
      }
  auto series = lower_central_series(g);
  if (!series.back().is_zero()) throw NotNilpotent(series.back().dim());
  return {series.size() - 1, std::move(series)};
}

inline std::size_t nilpotency_class(const LieAlgebra& g) { return validate_algebra(g).nilpotency_class; }

/// Smallest bracket-closed subspace containing the given vectors.
inline QSubspace subalgebra_closure(const LieAlgebra& g, const std::vector<QVector>& vs) {
  QSubspace s = QSubspace::span(g.dim(), vs);
  for (;;) {
    QSubspace next = s.sum(g.bracket_span(s, s));
    if (next.dim() == s.dim()) return s;
    s = std::move(next);
  }
}

/// A pair of basis vectors with nonzero bracket.
struct BracketWitness {
  std::size_t first, second;  ///< indices into the subspace basis
  QVector x, y, bracket;
};

/// nullopt when the subspace is abelian; otherwise the lexicographically
/// first basis pair with nonzero bracket.
inline std::optional<BracketWitness> abelian_obstruction(const LieAlgebra& g, const QSubspace& s) {
  const auto& b = s.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      QVector z = g.bracket(b[i], b[j]);
      if (!is_zero(z)) return BracketWitness{i, j, b[i], b[j], std::move(z)};
    }
  return std::nullopt;
}

inline bool is_abelian_subspace(const LieAlgebra& g, const QSubspace& s) {
  return !abelian_obstruction(g, s).has_value();
}

inline bool is_ideal(const LieAlgebra& g, const QSubspace& s) {
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (const auto& b : s.basis())
      if (!s.contains(g.bracket(g.basis_vector(i), b))) return false;
  return true;
}

struct AutomorphismCheck {
  bool ok = false;
  bool invertible = false;
  /// First failing basis pair (0-based, i < j) and [M e_i, M e_j] - M [e_i, e_j].
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
  QVector residual;
};

inline AutomorphismCheck is_automorphism(const LieAlgebra& g, const QMatrix& m) {
  AutomorphismCheck out;
  if (m.rows() != g.dim() || m.cols() != g.dim()) throw Error("is_automorphism: wrong matrix shape");
  out.invertible = !is_zero(determinant(m));
  if (!out.invertible) return out;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      QVector lhs = g.bracket(m.column(i), m.column(j));
      QVector rhs = m * g.bracket(g.basis_vector(i), g.basis_vector(j));
      for (std::size_t k = 0; k < g.dim(); ++k) lhs[k] -= rhs[k];
      if (!is_zero(lhs)) {
        out.failing_pair = std::make_pair(i, j);
        out.residual = std::move(lhs);
        return out;
      }
    }
  out.ok = true;
  return out;
}

/// D[x, y] = [Dx, y] + [x, Dy] on all basis pairs.
inline bool is_derivation(const LieAlgebra& g, const QMatrix& dmat) {
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      QVector ei = g.basis_vector(i), ej = g.basis_vector(j);
      QVector lhs = dmat * g.bracket(ei, ej);
      QVector a = g.bracket(dmat.column(i), ej), b = g.bracket(ei, dmat.column(j));
      for (std::size_t k = 0; k < g.dim(); ++k)
        if (lhs[k] != a[k] + b[k]) return false;
    }
  return true;
}

}  // namespace nilaa

#endif  // NILAA_LIE_ALGEBRA_HPP
