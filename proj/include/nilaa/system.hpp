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

#ifndef NILAA_SYSTEM_HPP
#define NILAA_SYSTEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "nilaa/lattice.hpp"

namespace nilaa {

/// Designated generators for the two-generator analysis.
struct GeneratorPair {
  QVector xi;
  QVector eta;
};

/// T = T_a o U on N / exp(Lambda): translation by a = exp(translation)
/// composed with the automorphism whose Lie matrix is `automorphism`.
struct AffineSystem {
  std::string name;
  ParamContext params;
  NilpotentGroup group;
  LogLattice lattice;
  QMatrix automorphism;
  ParamVector translation;
  std::optional<GeneratorPair> generators;
  std::vector<std::string> notes;

  const LieAlgebra& algebra() const { return group.algebra(); }
  std::size_t dim() const { return group.dim(); }
};

/// Raised by validate_system; `check` names the failing validation.
class ValidationError : public Error {
 public:
  ValidationError(std::string check, const std::string& what) : Error(what), check(std::move(check)) {}
  std::string check;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  QVector witness;
};

/// Runs the checks every criterion relies on: lattice closure, bracket
/// compatibility of U and invariance of the lattice.
inline void validate_system(const AffineSystem& sys) {
  if (sys.translation.size() != sys.dim()) throw ValidationError("translation", "translation has wrong dimension");
  if (sys.automorphism.rows() != sys.dim() || !sys.automorphism.square())
    throw ValidationError("automorphism", "automorphism has wrong shape");
  try {
    validate_lattice(sys.group, sys.lattice);
  } catch (const NotBCHClosed& e) {
    ValidationError v("validate_lattice", e.what());
    v.pair = std::make_pair(e.i, e.j);
    QVector w(sys.dim(), Rational(0));
    w[e.coordinate] = e.value;
    v.witness = std::move(w);
    throw v;
  } catch (const RankDeficient& e) {
    throw ValidationError("validate_lattice", e.what());
  }
  AutomorphismCheck ac = is_automorphism(sys.algebra(), sys.automorphism);
  if (!ac.ok) {
    std::string what = "linear map is not a Lie algebra automorphism";
    if (!ac.invertible) {
      what = "linear map is singular";
    } else {
      what += ": [U e" + std::to_string(ac.failing_pair->first + 1) + ", U e" +
              std::to_string(ac.failing_pair->second + 1) + "] - U [e" +
              std::to_string(ac.failing_pair->first + 1) + ", e" + std::to_string(ac.failing_pair->second + 1) +
              "] is nonzero";
    }
    ValidationError v("is_automorphism", what);
    v.pair = ac.failing_pair;
    v.witness = ac.residual;
    throw v;
  }
  if (!preserves_lattice(sys.automorphism, sys.lattice))
    throw ValidationError("preserves_lattice", "automorphism does not preserve the lattice");
}

}  // namespace nilaa

#endif  // NILAA_SYSTEM_HPP
