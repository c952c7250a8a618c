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

#ifndef NILAA_HNF_HPP
#define NILAA_HNF_HPP

#include <optional>
#include <utility>
#include <vector>

#include "nilaa/matrix.hpp"

namespace nilaa {

using ZVector = std::vector<Integer>;

/// Column Hermite normal form H = A V of an integer matrix with V unimodular.
/// The nonzero columns of H come first, in echelon form with positive
/// pivots in strictly increasing rows; entries left of a pivot are reduced
/// into [0, pivot).
struct ColumnHNF {
  std::size_t rows = 0;
  std::vector<ZVector> columns;   ///< nonzero columns of H
  std::vector<std::size_t> pivot_rows;
  std::vector<ZVector> transform; ///< columns of V matching `columns`
};

inline ColumnHNF column_hnf(const std::vector<ZVector>& generators, std::size_t rows) {
  const std::size_t n = generators.size();
  std::vector<ZVector> a = generators;
  std::vector<ZVector> v(n, ZVector(n, Integer(0)));
  for (std::size_t j = 0; j < n; ++j) {
    if (a[j].size() != rows) throw Error("column_hnf: generator of wrong length");
    v[j][j] = 1;
  }
  auto combine = [&](std::size_t j, std::size_t k, const Integer& p, const Integer& q,
                     const Integer& r, const Integer& s) {
    // (col_j, col_k) <- (p col_j + q col_k, r col_j + s col_k), ps - qr = 1
    for (std::size_t i = 0; i < rows; ++i) {
      Integer x = p * a[j][i] + q * a[k][i];
      Integer y = r * a[j][i] + s * a[k][i];
      a[j][i] = x;
      a[k][i] = y;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Integer x = p * v[j][i] + q * v[k][i];
      Integer y = r * v[j][i] + s * v[k][i];
      v[j][i] = x;
      v[k][i] = y;
    }
  };

  ColumnHNF out;
  out.rows = rows;
  std::size_t piv_col = 0;
  for (std::size_t row = 0; row < rows && piv_col < n; ++row) {
    for (std::size_t k = piv_col + 1; k < n; ++k) {
      if (a[k][row] == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[piv_col][row].get_mpz_t(),
                 a[k][row].get_mpz_t());
      Integer u = a[piv_col][row] / g, w = a[k][row] / g;
      // new pivot = s*a_p + t*a_k = g ; new k = -w*a_p + u*a_k = 0
      combine(piv_col, k, s, t, -w, u);
    }
    if (a[piv_col][row] == 0) {
      // Row has no pivot; a column with a nonzero entry may still sit at piv_col.
      continue;
    }
    if (a[piv_col][row] < 0) {
      for (auto& x : a[piv_col]) x = -x;
      for (auto& x : v[piv_col]) x = -x;
    }
    const Integer& p = a[piv_col][row];
    for (std::size_t k = 0; k < piv_col; ++k) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[k][row].get_mpz_t(), p.get_mpz_t());
      if (q == 0) continue;
      for (std::size_t i = 0; i < rows; ++i) a[k][i] -= q * a[piv_col][i];
      for (std::size_t i = 0; i < n; ++i) v[k][i] -= q * v[piv_col][i];
    }
    out.pivot_rows.push_back(row);
    ++piv_col;
  }
  for (std::size_t k = 0; k < piv_col; ++k) {
    out.columns.push_back(a[k]);
    out.transform.push_back(v[k]);
  }
  return out;
}

/// Integer coordinates z with sum_j z_j generators[j] = target, when the
/// target lies in the lattice the generators span.
inline std::optional<ZVector> lattice_solve(const std::vector<ZVector>& generators,
                                            const ZVector& target) {
  const std::size_t rows = target.size();
  ColumnHNF h = column_hnf(generators, rows);
  ZVector rem = target;
  ZVector zh(h.columns.size(), Integer(0));
  std::size_t next_row = 0;
  for (std::size_t k = 0; k < h.columns.size(); ++k) {
    const std::size_t pr = h.pivot_rows[k];
    for (; next_row < pr; ++next_row)
      if (rem[next_row] != 0) return std::nullopt;
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[pr].get_mpz_t(), h.columns[k][pr].get_mpz_t());
    if (r != 0) return std::nullopt;
    zh[k] = q;
    for (std::size_t i = 0; i < rows; ++i) rem[i] -= q * h.columns[k][i];
    next_row = pr + 1;
  }
  for (std::size_t i = 0; i < rows; ++i)
    if (rem[i] != 0) return std::nullopt;
  ZVector z(generators.size(), Integer(0));
  for (std::size_t k = 0; k < h.columns.size(); ++k)
    for (std::size_t j = 0; j < generators.size(); ++j) z[j] += zh[k] * h.transform[k][j];
  return z;
}

/// Rational generators scaled to integers by a common denominator.
struct ScaledGenerators {
  Integer scale;
  std::vector<ZVector> columns;
};

inline ScaledGenerators scale_to_integers(const QMatrix& gens) {
  Integer l = 1;
  for (std::size_t i = 0; i < gens.rows(); ++i)
    for (std::size_t j = 0; j < gens.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), gens(i, j).get_den_mpz_t());
  ScaledGenerators s{l, {}};
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    ZVector c(gens.rows());
    for (std::size_t i = 0; i < gens.rows(); ++i) {
      Rational x = gens(i, j) * Rational(l);
      c[i] = x.get_num();
    }
    s.columns.push_back(std::move(c));
  }
  return s;
}

/// Membership of v in the Z-span of the columns of `gens` (any rank). The
/// returned coordinates reproduce v exactly.
inline std::optional<ZVector> lattice_membership(const QMatrix& gens, const QVector& v) {
  if (v.size() != gens.rows()) throw Error("lattice_membership: dimension mismatch");
  ScaledGenerators s = scale_to_integers(gens);
  ZVector t(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational x = v[i] * Rational(s.scale);
    if (!is_integer(x)) return std::nullopt;
    t[i] = x.get_num();
  }
  return lattice_solve(s.columns, t);
}

/// Membership test against a lattice basis of full column rank.
inline std::optional<ZVector> hnf_membership(const QMatrix& basis, const QVector& v) {
  if (rank(basis) != basis.cols()) throw Error("hnf_membership: basis is rank deficient");
  return lattice_membership(basis, v);
}

/// A Z-basis (columns) of the lattice spanned by the columns of `gens`.
inline QMatrix lattice_basis_from_generators(const QMatrix& gens) {
  ScaledGenerators s = scale_to_integers(gens);
  ColumnHNF h = column_hnf(s.columns, gens.rows());
  QMatrix b(gens.rows(), h.columns.size());
  for (std::size_t j = 0; j < h.columns.size(); ++j)
    for (std::size_t i = 0; i < gens.rows(); ++i) b(i, j) = Rational(h.columns[j][i], s.scale);
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t i = 0; i < b.rows(); ++i) b(i, j).canonicalize();
  return b;
}

}  // namespace nilaa

#endif  // NILAA_HNF_HPP
