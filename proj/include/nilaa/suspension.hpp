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

#ifndef NILAA_SUSPENSION_HPP
#define NILAA_SUSPENSION_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nilaa/criteria.hpp"

namespace nilaa {

/// M = R x_D N with basis (delta, xi_1, ..., xi_d) and [delta, xi_j] = D xi_j.
/// Delta = exp(Z delta) Gamma is kept as the pair (D, Lambda); it is not the
/// exponential of a lattice in general.
struct SuspendedSystem {
  QMatrix derivation;
  NilpotentGroup big_group;
  LogLattice fiber_lattice;
  ParamVector embedded_translation;  ///< log(a exp(delta)) in M coordinates
  AffineSystem as_translation;       ///< translation by embedded_translation on M

  const LieAlgebra& big_algebra() const { return big_group.algebra(); }
};

/// Lifts an N-vector to M (delta coordinate zero).
template <typename S>
std::vector<S> lift_to_big(const std::vector<S>& v) {
  std::vector<S> out(v.size() + 1, S(0));
  for (std::size_t i = 0; i < v.size(); ++i) out[i + 1] = v[i];
  return out;
}

/// Builds the suspension for an explicit derivation; `suspend` uses log U.
inline SuspendedSystem suspend_with_derivation(const AffineSystem& sys, const QMatrix& dmat) {
  const LieAlgebra& g = sys.algebra();
  const std::size_t d = g.dim();
  if (!is_derivation(g, dmat)) throw Error("suspend: matrix is not a derivation");
  std::vector<StructureConstant> entries;
  for (const auto& e : g.entries()) entries.push_back({e.i + 1, e.j + 1, e.k + 1, e.value});
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      if (!is_zero(dmat(k, j))) entries.push_back({0, j + 1, k + 1, dmat(k, j)});
  const std::size_t cap = sys.group.nilpotency_class() + d;
  NilpotentGroup big(LieAlgebra(d + 1, entries), cap);

  QMatrix big_basis(d + 1, d + 1);
  big_basis(0, 0) = 1;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) big_basis(i + 1, j + 1) = sys.lattice.basis()(i, j);

  ParamVector delta(d + 1, Poly(0));
  delta[0] = Poly(1);
  ParamVector b = big.product(lift_to_big(sys.translation), delta);

  AffineSystem t{sys.name + "_suspended", sys.params, big, LogLattice(big_basis),
                 QMatrix::identity(d + 1),  b, std::nullopt, {}};
  t.notes.push_back("lattice data carries only the rational structure of the suspension");
  return SuspendedSystem{dmat, big, sys.lattice, b, std::move(t)};
}

inline SuspendedSystem suspend(const AffineSystem& sys) {
  return suspend_with_derivation(sys, log_automorphism(sys.algebra(), sys.automorphism));
}

struct ConsistencyMismatch {
  std::size_t sample;
  QVector point;
  QVector direct;
  QVector via_suspension;
};

struct ConsistencyReport {
  bool pass = true;
  std::size_t samples = 0;
  std::optional<ConsistencyMismatch> mismatch;
};

/// Random rational vector with numerators in [-range, range] and
/// denominators in [1, max_den].
inline QVector random_rational_vector(std::mt19937_64& rng, std::size_t d, long range = 20, long max_den = 8) {
  std::uniform_int_distribution<long> num(-range, range), den(1, max_den);
  QVector v(d);
  for (auto& x : v) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return v;
}

/// g1 Gamma = g2 Gamma, i.e. log(g1^{-1} g2) lies in Lambda.
inline bool same_coset(const NilpotentGroup& grp, const LogLattice& lat, const QVector& g1, const QVector& g2) {
  return lat.contains(grp.product(grp.inverse(g1), g2));
}

/// Compares T(g Gamma) = a U(g) Gamma with the translation by a exp(delta) on
/// M followed by reduction of the delta coordinate, on random rational g.
/// The translation must be constant (parameters have no numeric value).
inline ConsistencyReport embedding_consistency_check(const AffineSystem& sys, const SuspendedSystem& susp,
                                                     std::size_t samples, std::uint64_t seed = 1) {
  if (!is_constant(sys.translation)) throw Error("embedding_consistency_check: translation has parameters");
  const std::size_t d = sys.dim();
  const QVector log_a = constant_part(sys.translation);
  const QVector b = constant_part(susp.embedded_translation);
  std::mt19937_64 rng(seed);
  ConsistencyReport rep;
  for (std::size_t s = 0; s < samples; ++s) {
    const QVector g = random_rational_vector(rng, d);
    const QVector direct = sys.group.product(log_a, sys.automorphism * g);
    const QVector p = susp.big_group.product(b, lift_to_big(g));
    QVector back(d + 1, Rational(0));
    back[0] = -p[0];
    const QVector fiber_big = susp.big_group.product(p, back);
    QVector fiber(fiber_big.begin() + 1, fiber_big.end());
    const bool ok = is_zero(fiber_big[0]) && is_integer(p[0]) &&
                    same_coset(sys.group, susp.fiber_lattice, direct, fiber);
    ++rep.samples;
    if (!ok) {
      rep.pass = false;
      rep.mismatch = ConsistencyMismatch{s, g, direct, fiber};
      return rep;
    }
  }
  return rep;
}

}  // namespace nilaa

#endif  // NILAA_SUSPENSION_HPP
