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

#ifndef NILAA_CRITERIA_HPP
#define NILAA_CRITERIA_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nilaa/system.hpp"
#include "nilaa/upoly.hpp"

namespace nilaa {

enum class Status { AA, NOT_AA, INCONCLUSIVE };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::AA: return "AA";
    case Status::NOT_AA: return "NOT_AA";
    case Status::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

struct WitnessSubspace {
  QSubspace space;
};
struct ObstructionBracket {
  QVector x, y, bracket;
};
/// (U - I) v = image, which is nonzero.
struct NotFixed {
  QVector v, image;
};
/// `vector` does not lie in the lattice spanned by the columns of `lattice`.
struct CosetObstruction {
  ParamVector vector;
  QMatrix lattice;
};
struct SpectralObstruction {
  UPoly factor;
};
struct UnipotentPower {
  Integer r;
};
struct NoCertificate {};

using Certificate = std::variant<NoCertificate, WitnessSubspace, ObstructionBracket, NotFixed,
                                 CosetObstruction, SpectralObstruction, UnipotentPower>;

struct Verdict {
  Status status = Status::INCONCLUSIVE;
  Certificate certificate;
  std::vector<std::string> notes;
};

class InapplicableCriterion : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  HypothesisViolated(std::string which, const std::string& what) : Error(what), which(std::move(which)) {}
  std::string which;
};

inline constexpr const char* kConnectedScopeNote =
    "witness search is restricted to connected subgroups exp(W) with W rational";

// ---------------------------------------------------------------------------
// Linear part

/// Smallest k with (U - I)^k = 0; nullopt when U is not unipotent.
inline std::optional<unsigned> nilrank(const QMatrix& u) { return unipotency_index(u); }

/// Either the least r with A^r unipotent or a non-cyclotomic factor of the
/// characteristic polynomial (then A has an eigenvalue off the unit circle).
inline std::variant<UnipotentPower, SpectralObstruction> power_unipotent(const QMatrix& a) {
  if (!a.square()) throw Error("power_unipotent: matrix is not square");
  if (!is_integer(a)) throw Error("power_unipotent: matrix has non-integer entries");
  const Rational det = determinant(a);
  if (det != 1 && det != -1) throw Error("power_unipotent: matrix is not unimodular");
  SpectrumResult spectrum = cyclotomic_spectrum_test(charpoly(a));
  if (auto* obs = std::get_if<SpectrumObstruction>(&spectrum)) return SpectralObstruction{obs->factor};
  const Integer r = std::get<AllRootsOfUnity>(spectrum).order;
  if (!r.fits_ulong_p()) throw Error("power_unipotent: order out of range");
  const unsigned long rv = r.get_ui();
  if (!unipotency_index(a.pow(static_cast<unsigned>(rv))))
    throw Error("power_unipotent: internal inconsistency, A^r is not unipotent");
  return UnipotentPower{r};
}

// ---------------------------------------------------------------------------
// Representative of the translation modulo the lattice

/// T_a o U equals T_{a g} o (Inn(g^{-1}) o U) for g in Gamma; on tori the
/// automorphism is unchanged. `shift` is log g.
struct Representative {
  ParamVector log_a;
  QMatrix u;
  QVector shift;
  bool shifted = false;
  bool coset_ok = true;  ///< (U - I) r lies in (U - I) Lambda for the constant part r
};

inline Representative fixed_representative(const NilpotentGroup& grp, const LogLattice& lat, const QMatrix& u,
                                           const ParamVector& log_a) {
  const std::size_t d = grp.dim();
  Representative rep{log_a, u, QVector(d, Rational(0)), false, true};
  const QMatrix n = u - QMatrix::identity(d);
  const QVector w = n * constant_part(log_a);
  if (is_zero(w)) return rep;
  const QMatrix gens = n * lat.basis();
  auto z = lattice_membership(gens, w);
  if (!z) {
    rep.coset_ok = false;
    return rep;
  }
  QVector zq(z->size());
  for (std::size_t i = 0; i < z->size(); ++i) zq[i] = Rational((*z)[i]);
  QVector gamma = lat.basis() * zq;
  for (auto& x : gamma) x = -x;
  rep.shift = gamma;
  rep.shifted = true;
  if (grp.algebra().is_abelian()) {
    for (std::size_t i = 0; i < d; ++i) rep.log_a[i] += Poly(gamma[i]);
  } else {
    rep.log_a = grp.product(log_a, to_param_vector(gamma));
    rep.u = grp.adjoint(grp.inverse(gamma)) * u;
  }
  return rep;
}

namespace detail {

inline std::string vector_string(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

/// AA iff s is abelian and fixed by U; the abelian test comes first.
inline Verdict judge_subspace(const LieAlgebra& g, const QMatrix& u, const QSubspace& s) {
  if (auto ob = abelian_obstruction(g, s)) return {Status::NOT_AA, ObstructionBracket{ob->x, ob->y, ob->bracket}, {}};
  const QMatrix n = u - QMatrix::identity(g.dim());
  for (const auto& b : s.basis()) {
    QVector img = n * b;
    if (!is_zero(img)) return {Status::NOT_AA, NotFixed{b, img}, {}};
  }
  return {Status::AA, WitnessSubspace{s}, {}};
}

inline QSubspace defect_span(const NilpotentGroup& grp, const ParamContext& params, const QMatrix& u,
                             const ParamVector& log_a) {
  ParamContext ctx = params;
  DefectMap dm = defect_map(grp, log_a, u, ctx);
  return minimal_rational_subspace(dm.value);
}

inline Verdict full_core(const NilpotentGroup& grp, const ParamContext& params, const QMatrix& u,
                         const ParamVector& log_a) {
  return judge_subspace(grp.algebra(), u, defect_span(grp, params, u, log_a));
}

inline Verdict basepoint_core(const NilpotentGroup& grp, const QMatrix& u, const ParamVector& log_a) {
  if (is_zero(log_a)) return {Status::AA, WitnessSubspace{QSubspace(grp.dim())}, {"the base point is fixed"}};
  return judge_subspace(grp.algebra(), u, minimal_rational_subspace(log_a));
}

inline void require_unipotent(const QMatrix& u) {
  if (!unipotency_index(u)) throw NotUnipotent();
}

/// Runs `core` on the supplied data and, when the constant part of log a is
/// not fixed, on the lattice-shifted representative as well.
template <typename Core>
Verdict decide_over_representatives(const AffineSystem& sys, Core core) {
  Verdict given = core(sys.automorphism, sys.translation);
  if (given.status == Status::AA) return given;
  Representative rep = fixed_representative(sys.group, sys.lattice, sys.automorphism, sys.translation);
  if (!rep.shifted) {
    if (!rep.coset_ok) given.notes.push_back("no representative of a modulo the lattice has a fixed constant part");
    return given;
  }
  Verdict shifted = core(rep.u, rep.log_a);
  const std::string note = "translation replaced by its lattice translate a*exp" + vector_string(rep.shift);
  if (shifted.status == Status::AA) {
    shifted.notes.insert(shifted.notes.begin(), note);
    return shifted;
  }
  given.notes.push_back("also tried " + note.substr(std::string("translation replaced by its ").size()));
  if (!sys.algebra().is_abelian())
    given.notes.push_back("representative search covers the supplied translation and its linear lattice correction");
  return given;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Decision procedures

/// Affine maps of tori: AA iff (U - I)^2 = 0 and some lattice translate of
/// a is fixed, i.e. (U - I) log a lies in (U - I) Lambda.
inline Verdict torus_decide(const AffineSystem& sys) {
  if (!sys.algebra().is_abelian()) throw InapplicableCriterion("torus criterion needs an abelian algebra");
  detail::require_unipotent(sys.automorphism);
  const std::size_t d = sys.dim();
  const QMatrix n = sys.automorphism - QMatrix::identity(d);
  const QMatrix n2 = n * n;
  for (std::size_t j = 0; j < d; ++j) {
    QVector img = n2.column(j);
    if (!is_zero(img)) return {Status::NOT_AA, NotFixed{n.column(j), img}, {"(U - I)^2 is nonzero"}};
  }
  const QMatrix gens = n * sys.lattice.basis();
  ParamVector w = to_param_vector(QVector(d, Rational(0)));
  PolyMatrix np = to_poly_matrix(n);
  w = np * sys.translation;
  if (!is_constant(w) || !lattice_membership(gens, constant_part(w)))
    return {Status::NOT_AA, CosetObstruction{w, gens}, {"no lattice translate of a is fixed by U"}};
  Representative rep = fixed_representative(sys.group, sys.lattice, sys.automorphism, sys.translation);
  QSubspace witness = column_space(n).sum(minimal_rational_subspace(rep.log_a));
  Verdict v{Status::AA, WitnessSubspace{witness}, {}};
  if (rep.shifted) v.notes.push_back("fixed representative a*exp" + detail::vector_string(rep.shift));
  return v;
}

/// Outcome of the Lie-level necessary conditions.
struct LieCheck {
  bool pass = true;
  int failed_condition = 0;  ///< 1: (U - I)(Ad_a U - I) != 0; 2: image not abelian
  std::optional<std::pair<std::size_t, std::size_t>> entry;  ///< failing matrix entry or column pair
  Poly value;                                               ///< nonzero entry (condition 1)
  ParamVector x, y, bracket;                                ///< non-commuting image pair (condition 2)
  std::vector<std::string> notes;
};

namespace detail {

inline LieCheck lie_core(const NilpotentGroup& grp, const QMatrix& u, const ParamVector& log_a) {
  const std::size_t d = grp.dim();
  LieCheck out;
  const PolyMatrix ad_u = grp.adjoint(log_a) * to_poly_matrix(u) - PolyMatrix::identity(d);
  const PolyMatrix comp = to_poly_matrix(u - QMatrix::identity(d)) * ad_u;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (!comp(i, j).is_zero()) {
        out.pass = false;
        out.failed_condition = 1;
        out.entry = std::make_pair(i, j);
        out.value = comp(i, j);
        return out;
      }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      ParamVector b = grp.algebra().bracket(ad_u.column(i), ad_u.column(j));
      if (!is_zero(b)) {
        out.pass = false;
        out.failed_condition = 2;
        out.entry = std::make_pair(i, j);
        out.x = ad_u.column(i);
        out.y = ad_u.column(j);
        out.bracket = std::move(b);
        return out;
      }
    }
  return out;
}

}  // namespace detail

/// (U - I)(Ad_a U - I) = 0 and the image of Ad_a U - I is abelian.
inline LieCheck lie_necessary(const AffineSystem& sys) {
  detail::require_unipotent(sys.automorphism);
  LieCheck given = detail::lie_core(sys.group, sys.automorphism, sys.translation);
  if (given.pass) return given;
  Representative rep = fixed_representative(sys.group, sys.lattice, sys.automorphism, sys.translation);
  if (!rep.shifted) return given;
  LieCheck shifted = detail::lie_core(sys.group, rep.u, rep.log_a);
  if (shifted.pass) {
    shifted.notes.push_back("conditions hold for the lattice translate a*exp" + detail::vector_string(rep.shift));
    return shifted;
  }
  return given;
}

/// Is the base point almost automorphic? Searches A = exp(V) with V the
/// smallest rational subspace containing log a.
inline Verdict basepoint_decide(const AffineSystem& sys) {
  detail::require_unipotent(sys.automorphism);
  Verdict v = detail::decide_over_representatives(
      sys, [&](const QMatrix& u, const ParamVector& a) { return detail::basepoint_core(sys.group, u, a); });
  if (v.status != Status::AA) v.notes.push_back(kConnectedScopeNote);
  return v;
}

/// Is every point almost automorphic? W is the rational span of all
/// monomial coefficients of x -> x^{-1} a U(x); AA iff W is abelian and
/// fixed by U, and then exp(W) is the smallest witness.
inline Verdict full_decide(const AffineSystem& sys) {
  detail::require_unipotent(sys.automorphism);
  return detail::decide_over_representatives(sys, [&](const QMatrix& u, const ParamVector& a) {
    return detail::full_core(sys.group, sys.params, u, a);
  });
}

struct TranslationReport {
  Verdict verdict;
  bool normal = false;  ///< the witness is an ideal
};

inline TranslationReport translation_decide(const AffineSystem& sys) {
  if (sys.automorphism != QMatrix::identity(sys.dim()))
    throw InapplicableCriterion("translation criterion needs U = I");
  TranslationReport r{full_decide(sys), false};
  if (auto* w = std::get_if<WitnessSubspace>(&r.verdict.certificate))
    r.normal = is_ideal(sys.algebra(), w->space);
  r.verdict.notes.push_back(
      "witness is the rational span of all conjugates x^{-1} a x, which contains a; the normal-subgroup "
      "characterisation leaves this containment implicit");
  return r;
}

// ---------------------------------------------------------------------------
// Minimality of translations

enum class MinimalityStatus { Minimal, NotMinimal, Inconclusive };

struct MinimalityResult {
  MinimalityStatus status = MinimalityStatus::Inconclusive;
  /// Integer character k on the abelianised torus (coordinates dual to its
  /// lattice basis) with <k, a> rational; the subtorus ker k is invariant.
  ZVector character;
  Rational value;
  QMatrix torus_basis;  ///< lattice basis of the abelianised torus
  ParamVector abelianized_translation;  ///< in torus-basis coordinates
};

inline MinimalityResult minimality_check(const AffineSystem& sys) {
  MinimalityResult out;
  if (sys.automorphism != QMatrix::identity(sys.dim())) return out;
  const std::size_t d = sys.dim();
  const QSubspace derived = sys.algebra().bracket_span(QSubspace::whole(d), QSubspace::whole(d));
  const std::vector<QVector> functionals = derived.annihilator();
  const std::size_t k = functionals.size();
  QMatrix proj(k, d);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < d; ++j) proj(i, j) = functionals[i][j];
  out.torus_basis = lattice_basis_from_generators(proj * sys.lattice.basis());
  const QMatrix cinv = *inverse(out.torus_basis);
  out.abelianized_translation = to_poly_matrix(cinv * proj) * sys.translation;

  std::vector<QVector> rows;
  for (auto& [m, c] : coefficient_vectors(out.abelianized_translation))
    if (!m.empty()) rows.push_back(c);
  QMatrix coeffs(rows.size(), k);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) coeffs(i, j) = rows[i][j];
  QSubspace relations = rows.empty() ? QSubspace::whole(k) : kernel_basis(coeffs);
  if (relations.is_zero()) {
    out.status = MinimalityStatus::Minimal;
    return out;
  }
  QVector q = relations.basis().front();
  Integer l = lcm_denominators(q);
  ZVector ch(k);
  Integer g = 0;
  for (std::size_t i = 0; i < k; ++i) {
    ch[i] = Rational(q[i] * Rational(l)).get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ch[i].get_mpz_t());
  }
  for (auto& x : ch) x /= g;
  out.character = ch;
  Rational val = 0;
  QVector constant = constant_part(out.abelianized_translation);
  for (std::size_t i = 0; i < k; ++i) val += Rational(ch[i]) * constant[i];
  out.value = val;
  out.status = MinimalityStatus::NotMinimal;
  return out;
}


// ---------------------------------------------------------------------------
// Two-generator algebras with U(xi) = xi + eta

struct TwoGeneratorReport {
  std::size_t n = 0;
  QMatrix tau_matrix;          ///< tau on span{tau^k eta} mod [M, M]; column k is the image of tau^k eta
  std::vector<QVector> basis;  ///< representatives of eta, tau eta, ..., tau^{n-1} eta
  std::vector<Rational> coefficients;        ///< from the group law
  std::vector<Rational> matrix_coefficients;  ///< from the affine matrix realization
  std::vector<Rational> stated_coefficients;  ///< (-1)^k / k!
  bool oracle_agrees = false;
  bool stated_formula_agrees = false;
  bool all_nonzero = false;
  QSubspace m_subspace;
  bool abelian_m = false;
  bool u_fixes_m = false;
  ParamContext context;    ///< parameters of a_t (only the time variable)
  ParamVector a_t;          ///< log(exp(-t xi) exp(t(xi + eta)))
};

namespace detail {

inline Rational factorial(unsigned k) {
  Integer f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

/// Coordinates of v modulo `quotient` in the family `basis`, or nullopt.
inline std::optional<QVector> quotient_coordinates(const std::vector<QVector>& basis, const QSubspace& quotient,
                                                   const QVector& v) {
  const std::size_t d = v.size();
  std::vector<QVector> cols = basis;
  for (const auto& q : quotient.basis()) cols.push_back(q);
  QMatrix a = QMatrix::from_columns(cols, d);
  QMatrix aug(d, cols.size() + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) aug(i, j) = a(i, j);
    aug(i, cols.size()) = v[i];
  }
  std::vector<std::size_t> piv = rref_in_place(aug);
  if (!piv.empty() && piv.back() == cols.size()) return std::nullopt;
  QVector x(cols.size(), Rational(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, cols.size());
  return QVector(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(basis.size()));
}

}  // namespace detail

inline TwoGeneratorReport two_generator_analysis(const AffineSystem& sys) {
  if (!sys.generators) throw HypothesisViolated("generators", "no generator pair designated");
  const LieAlgebra& g = sys.algebra();
  const std::size_t d = g.dim();
  const QVector& xi = sys.generators->xi;
  const QVector& eta = sys.generators->eta;
  if (xi.size() != d || eta.size() != d) throw HypothesisViolated("generators", "generator has wrong dimension");
  if (subalgebra_closure(g, {xi, eta}).dim() != d)
    throw HypothesisViolated("generates", "xi and eta do not generate the algebra");
  if (!unipotency_index(sys.automorphism)) throw HypothesisViolated("unipotent", "U is not unipotent");
  QVector sum = xi;
  for (std::size_t i = 0; i < d; ++i) sum[i] += eta[i];
  if (sys.automorphism * xi != sum) throw HypothesisViolated("u_xi", "U(xi) differs from xi + eta");

  TwoGeneratorReport r;
  const QSubspace whole = QSubspace::whole(d);
  const QSubspace derived = g.bracket_span(whole, whole);
  r.m_subspace = derived.sum(QSubspace::span(d, {eta}));
  if (r.m_subspace.dim() + 1 != d) throw HypothesisViolated("codimension", "M does not have codimension one");
  if (!is_ideal(g, r.m_subspace) || !r.m_subspace.image(sys.automorphism).contains(r.m_subspace) ||
      !r.m_subspace.contains(r.m_subspace.image(sys.automorphism)))
    throw HypothesisViolated("invariant_ideal", "M is not a U-invariant ideal");
  const QSubspace mm = g.bracket_span(r.m_subspace, r.m_subspace);
  r.abelian_m = mm.is_zero();
  r.u_fixes_m = true;
  for (const auto& b : r.m_subspace.basis())
    if (sys.automorphism * b != b) r.u_fixes_m = false;

  QVector cur = eta;
  while (!mm.contains(cur)) {
    r.basis.push_back(cur);
    cur = g.bracket(xi, cur);
    if (r.basis.size() > d) throw Error("two_generator_analysis: tau is not nilpotent");
  }
  r.n = r.basis.size();
  if (r.n == 0) throw HypothesisViolated("eta", "eta lies in [M, M]");
  r.tau_matrix = QMatrix(r.n, r.n);
  for (std::size_t k = 0; k + 1 < r.n; ++k) r.tau_matrix(k + 1, k) = 1;

  // a_t through the group law, projected to M / [M, M].
  r.context.add("t");
  const Poly t = Poly::var(0);
  ParamVector minus_txi(d), txieta(d);
  for (std::size_t i = 0; i < d; ++i) {
    minus_txi[i] = t * Poly(Rational(-xi[i]));
    txieta[i] = t * Poly(Rational(xi[i] + eta[i]));
  }
  r.a_t = sys.group.product(minus_txi, txieta);
  std::vector<Poly> projected(r.n);
  for (const auto& [mono, vec] : coefficient_vectors(r.a_t)) {
    auto c = detail::quotient_coordinates(r.basis, mm, vec);
    if (!c) throw Error("two_generator_analysis: a_t leaves span{tau^k eta} + [M, M]");
    for (std::size_t k = 0; k < r.n; ++k)
      if (!is_zero((*c)[k])) projected[k] += Poly::term(mono, (*c)[k]);
  }
  for (std::size_t k = 0; k < r.n; ++k) {
    const Monomial mono{static_cast<unsigned>(k + 1)};
    r.coefficients.push_back(projected[k].coefficient(mono));
    if (projected[k] != Poly::term(mono, r.coefficients.back()))
      throw Error("two_generator_analysis: coordinate " + std::to_string(k) + " is not a multiple of t^" +
                  std::to_string(k + 1));
  }

  // Affine (n+1)x(n+1) realization: xi acts by the shift nu on the basis
  // (tau^{n-1} eta, ..., eta); eta is the translation by the last vector.
  const std::size_t m = r.n + 1;
  PolyMatrix xi_hat(m, m), eta_hat(m, m);
  for (std::size_t i = 0; i + 1 < r.n; ++i) xi_hat(i, i + 1) = Poly(1);
  eta_hat(r.n - 1, r.n) = Poly(1);
  const PolyMatrix lhs = exp_nilpotent(xi_hat.scaled(-t));
  const PolyMatrix rhs = exp_nilpotent((xi_hat + eta_hat).scaled(t));
  const PolyMatrix prod = lhs * rhs;
  r.oracle_agrees = true;
  for (std::size_t k = 0; k < r.n; ++k) {
    const Poly& v = prod(r.n - 1 - k, r.n);
    const Monomial mono{static_cast<unsigned>(k + 1)};
    r.matrix_coefficients.push_back(v.coefficient(mono));
    if (v != projected[k]) r.oracle_agrees = false;
  }

  r.all_nonzero = true;
  r.stated_formula_agrees = true;
  for (std::size_t k = 0; k < r.n; ++k) {
    Rational s = 1 / detail::factorial(static_cast<unsigned>(k));
    if (k % 2) s = -s;
    r.stated_coefficients.push_back(s);
    if (s != r.coefficients[k]) r.stated_formula_agrees = false;
    if (is_zero(r.coefficients[k])) r.all_nonzero = false;
  }
  return r;
}

}  // namespace nilaa

#endif  // NILAA_CRITERIA_HPP
