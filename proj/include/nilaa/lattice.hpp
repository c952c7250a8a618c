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

#ifndef NILAA_LATTICE_HPP
#define NILAA_LATTICE_HPP

#include <optional>
#include <string>
#include <vector>

#include "nilaa/group.hpp"
#include "nilaa/hnf.hpp"

namespace nilaa {

class RankDeficient : public Error {
 public:
  RankDeficient() : Error("lattice basis is not of full rank") {}
};

class NotBCHClosed : public Error {
 public:
  NotBCHClosed(std::size_t i, std::size_t j, std::size_t coordinate, Rational value)
      : Error("log(exp l" + std::to_string(i + 1) + " exp l" + std::to_string(j + 1) +
              ") has coordinate " + value.get_str() + " on generator " + std::to_string(coordinate + 1)),
        i(i), j(j), coordinate(coordinate), value(std::move(value)) {}
  std::size_t i, j, coordinate;
  Rational value;
};

/// Lattice Lambda in the Lie algebra, given by a basis (the columns); the
/// lattice of the nilmanifold is Gamma = exp(Lambda).
class LogLattice {
 public:
  LogLattice() = default;
  explicit LogLattice(QMatrix basis) : basis_(std::move(basis)) {
    if (!basis_.square()) throw RankDeficient();
    auto inv = inverse(basis_);
    if (!inv) throw RankDeficient();
    inverse_ = std::move(*inv);
  }
  static LogLattice standard(std::size_t d) { return LogLattice(QMatrix::identity(d)); }

  std::size_t dim() const { return basis_.rows(); }
  const QMatrix& basis() const { return basis_; }
  const QMatrix& inverse_basis() const { return inverse_; }

  QVector generator(std::size_t i) const { return basis_.column(i); }

  /// Coordinates of v with respect to the generators.
  QVector coordinates(const QVector& v) const { return inverse_ * v; }

  bool contains(const QVector& v) const {
    for (const auto& c : coordinates(v))
      if (!is_integer(c)) return false;
    return true;
  }

 private:
  QMatrix basis_;
  QMatrix inverse_;
};

/// Checks that the generators are closed under the group law, pairwise
/// (inverses are automatic since log(g^{-1}) = -log g). Returns the
/// structure constants rewritten in the lattice basis.
inline std::vector<StructureConstant> validate_lattice(const NilpotentGroup& grp, const LogLattice& lat) {
  if (lat.dim() != grp.dim()) throw Error("lattice dimension does not match the algebra");
  const std::size_t d = lat.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      QVector p = grp.product(lat.generator(i), lat.generator(j));
      QVector c = lat.coordinates(p);
      for (std::size_t k = 0; k < d; ++k)
        if (!is_integer(c[k])) throw NotBCHClosed(i, j, k, c[k]);
    }
  std::vector<StructureConstant> out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      QVector c = lat.coordinates(grp.algebra().bracket(lat.generator(i), lat.generator(j)));
      for (std::size_t k = 0; k < d; ++k)
        if (!is_zero(c[k])) out.push_back({i, j, k, c[k]});
    }
  return out;
}

/// B^{-1} U B is an integer matrix of determinant +-1.
inline bool preserves_lattice(const QMatrix& u, const LogLattice& lat) {
  QMatrix m = lat.inverse_basis() * u * lat.basis();
  if (!is_integer(m)) return false;
  Rational det = determinant(m);
  return det == 1 || det == -1;
}

/// A rational subspace of a rational lattice is always a rational subspace
/// (its intersection with Lambda is a lattice in it).
inline bool is_rational_subspace(const QSubspace& s, const LogLattice& lat) {
  if (s.ambient_dim() != lat.dim()) throw Error("is_rational_subspace: dimension mismatch");
  return true;
}

/// Subspace spanned by vectors with parameter entries, for generic
/// parameters: rational iff its generic dimension equals the dimension of
/// the smallest rational subspace containing all of its vectors.
inline bool is_rational_subspace(const std::vector<ParamVector>& spanning, const LogLattice& lat) {
  if (spanning.empty()) return true;
  const std::size_t d = lat.dim();
  PolyMatrix m(spanning.size(), d);
  QSubspace closure(d);
  for (std::size_t i = 0; i < spanning.size(); ++i) {
    if (spanning[i].size() != d) throw Error("is_rational_subspace: dimension mismatch");
    for (std::size_t j = 0; j < d; ++j) m(i, j) = spanning[i][j];
    closure = closure.sum(minimal_rational_subspace(spanning[i]));
  }
  return generic_rank(m) == closure.dim();
}

}  // namespace nilaa

#endif  // NILAA_LATTICE_HPP
