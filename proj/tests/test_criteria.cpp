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

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace nilaa {
namespace {

using testing::heisenberg_lattice;
using testing::jordan;
using testing::make_system;
using testing::torus_system;
using testing::unit;

const QMatrix kShear{{1, 1}, {0, 1}};

QMatrix free_nilpotent_u() {
  QMatrix u = QMatrix::identity(5);
  u(1, 0) = 1;
  u(4, 3) = 1;
  return u;
}

const QSubspace& witness(const Verdict& v) { return std::get<WitnessSubspace>(v.certificate).space; }

TEST(Nilrank, Examples) {
  EXPECT_EQ(nilrank(QMatrix::identity(3)), 1u);
  EXPECT_EQ(nilrank(kShear), 2u);
  EXPECT_EQ(nilrank(jordan(3)), 3u);
  EXPECT_FALSE(nilrank(QMatrix{{2, 1}, {1, 1}}));
}

TEST(PowerUnipotent, Examples) {
  auto r = power_unipotent(QMatrix::identity(3));
  ASSERT_TRUE(std::holds_alternative<UnipotentPower>(r));
  EXPECT_EQ(std::get<UnipotentPower>(r).r, 1);

  r = power_unipotent(QMatrix{{0, -1}, {1, 0}});
  ASSERT_TRUE(std::holds_alternative<UnipotentPower>(r));
  EXPECT_EQ(std::get<UnipotentPower>(r).r, 4);

  r = power_unipotent(QMatrix{{2, 1}, {1, 1}});
  ASSERT_TRUE(std::holds_alternative<SpectralObstruction>(r));
  EXPECT_EQ(std::get<SpectralObstruction>(r).factor.to_string(), "x^2 - 3*x + 1");

  EXPECT_THROW(power_unipotent(QMatrix{{2, 0}, {0, 1}}), Error);
  EXPECT_THROW(power_unipotent(QMatrix{{Rational(1, 2), 0}, {0, 2}}), Error);
}

TEST(PowerUnipotent, MinimalOrderByExhaustion) {
  const std::vector<QMatrix> finite{QMatrix{{0, -1}, {1, -1}}, QMatrix{{1, -1}, {1, 0}}, QMatrix{{-1, 0}, {0, -1}}};
  const std::vector<long> orders{3, 6, 2};
  for (std::size_t i = 0; i < finite.size(); ++i) {
    QMatrix a = QMatrix::identity(4);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) a(r, c) = finite[i](r, c);
    a(2, 3) = 5;
    auto res = power_unipotent(a);
    ASSERT_TRUE(std::holds_alternative<UnipotentPower>(res));
    const long r = std::get<UnipotentPower>(res).r.get_si();
    EXPECT_EQ(r, orders[i]);
    for (long q = 1; q < r; ++q) EXPECT_FALSE(unipotency_index(a.pow(static_cast<unsigned>(q))));
  }
}

TEST(TorusDecide, Examples) {
  Verdict v = torus_decide(torus_system(kShear, {"0", "0"}));
  EXPECT_EQ(v.status, Status::AA);
  EXPECT_EQ(witness(v), QSubspace::span(2, {unit(2, 0)}));

  v = torus_decide(torus_system(jordan(3), {"0", "0", "0"}));
  EXPECT_EQ(v.status, Status::NOT_AA);
  ASSERT_TRUE(std::holds_alternative<NotFixed>(v.certificate));
  EXPECT_FALSE(is_zero(std::get<NotFixed>(v.certificate).image));

  v = torus_decide(torus_system(kShear, {"0", "t"}, {"t"}));
  EXPECT_EQ(v.status, Status::NOT_AA);
  ASSERT_TRUE(std::holds_alternative<CosetObstruction>(v.certificate));
  EXPECT_EQ(std::get<CosetObstruction>(v.certificate).vector, (ParamVector{Poly::var(0), Poly(0)}));
}

TEST(TorusDecide, RepresentativeIsNormalised) {
  // (U - I)(0, 1/3) = (1/3, 0) is not in (U - I) Z^2, but (0, 1) is.
  EXPECT_EQ(torus_decide(torus_system(kShear, {"0", "1/3"})).status, Status::NOT_AA);
  const Verdict v = torus_decide(torus_system(kShear, {"1/5", "1"}));
  EXPECT_EQ(v.status, Status::AA);
  EXPECT_FALSE(v.notes.empty());
}

TEST(TorusDecide, Preconditions) {
  EXPECT_THROW(torus_decide(make_system(testing::heisenberg(), heisenberg_lattice(), QMatrix::identity(3),
                                        {"0", "0", "0"})),
               InapplicableCriterion);
  EXPECT_THROW(torus_decide(torus_system(QMatrix{{0, -1}, {1, 0}}, {"0", "0"})), NotUnipotent);
}

TEST(LieNecessary, Examples) {
  EXPECT_TRUE(lie_necessary(torus_system(QMatrix::identity(2), {"t", "1/2"}, {"t"})).pass);

  const LieCheck jordan_check = lie_necessary(torus_system(jordan(3), {"0", "0", "0"}));
  EXPECT_FALSE(jordan_check.pass);
  EXPECT_EQ(jordan_check.failed_condition, 1);
  EXPECT_EQ(jordan_check.entry, std::make_pair(std::size_t{0}, std::size_t{2}));
  EXPECT_EQ(jordan_check.value, Poly(1));

  const AffineSystem free = make_system(testing::free_nilpotent_2_3(), testing::free_nilpotent_lattice(),
                                        free_nilpotent_u(), {"0", "0", "0", "0", "0"});
  EXPECT_TRUE(lie_necessary(free).pass);
}

TEST(LieNecessary, ShearOnHeisenbergPasses) {
  // Ad_a U - I sends xi1 to xi2 + (s - t) xi3 and xi2 to s xi3, both killed
  // by U - I and commuting.
  const AffineSystem sys = make_system(testing::heisenberg(), heisenberg_lattice(),
                                       QMatrix{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}, {"s", "t", "0"}, {"s", "t"});
  EXPECT_TRUE(lie_necessary(sys).pass);
}

TEST(LieNecessary, ImageNotAbelian) {
  // strictly upper triangular 5 x 5 matrices have a non-abelian derived
  // algebra; U = I and a = E12 + E23 + E34 + E45
  const testing::MatrixRealization ut = testing::upper_triangular(5);
  const NilpotentGroup grp(ut.algebra);
  QMatrix a(5, 5);
  for (std::size_t i = 0; i + 1 < 5; ++i) a(i, i + 1) = 1;
  const ParamVector log_a = to_param_vector(ut.to_vector(a));
  const LieCheck c = detail::lie_core(grp, QMatrix::identity(grp.dim()), log_a);
  EXPECT_FALSE(c.pass);
  EXPECT_EQ(c.failed_condition, 2);
  EXPECT_FALSE(is_zero(c.bracket));
  EXPECT_EQ(grp.algebra().bracket(c.x, c.y), c.bracket);
}

TEST(BasepointDecide, Examples) {
  Verdict v = basepoint_decide(torus_system(jordan(3), {"0", "0", "0"}));
  EXPECT_EQ(v.status, Status::AA);
  EXPECT_TRUE(witness(v).is_zero());

  v = basepoint_decide(make_system(testing::heisenberg(), heisenberg_lattice(), QMatrix::identity(3),
                                   {"t", "0", "0"}, {"t"}));
  EXPECT_EQ(v.status, Status::AA);
  EXPECT_EQ(witness(v), QSubspace::span(3, {unit(3, 0)}));

  v = basepoint_decide(torus_system(kShear, {"0", "t"}, {"t"}));
  EXPECT_EQ(v.status, Status::NOT_AA);
  ASSERT_TRUE(std::holds_alternative<NotFixed>(v.certificate));
  EXPECT_EQ(std::get<NotFixed>(v.certificate).v, unit(2, 1));
  EXPECT_EQ(std::get<NotFixed>(v.certificate).image, unit(2, 0));
  EXPECT_EQ(v.notes.back(), kConnectedScopeNote);
}

TEST(FullDecide, Examples) {
  Verdict v = full_decide(torus_system(QMatrix::identity(2), {"t", "1/2"}, {"t"}));
  EXPECT_EQ(v.status, Status::AA);
  EXPECT_EQ(witness(v), QSubspace::whole(2));
  v = full_decide(torus_system(QMatrix::identity(3), {"t", "2*t", "0"}, {"t"}));
  EXPECT_EQ(v.status, Status::AA);
  EXPECT_EQ(witness(v), QSubspace::span(3, {{1, 2, 0}}));

  v = full_decide(make_system(testing::heisenberg(), heisenberg_lattice(), QMatrix::identity(3), {"1", "0", "0"}));
  EXPECT_EQ(v.status, Status::AA);
  EXPECT_EQ(witness(v), QSubspace::span(3, {unit(3, 0), unit(3, 2)}));

  v = full_decide(make_system(testing::free_nilpotent_2_3(), testing::free_nilpotent_lattice(), free_nilpotent_u(),
                              {"0", "0", "0", "0", "0"}));
  EXPECT_EQ(v.status, Status::NOT_AA);
  ASSERT_TRUE(std::holds_alternative<ObstructionBracket>(v.certificate));
  const auto& ob = std::get<ObstructionBracket>(v.certificate);
  EXPECT_EQ(ob.x, unit(5, 1));
  EXPECT_EQ(ob.y, unit(5, 2));
  EXPECT_EQ(ob.bracket, unit(5, 4));
}

TEST(FullDecide, GenericHeisenbergTranslation) {
  const Verdict v = full_decide(make_system(testing::heisenberg(), heisenberg_lattice(), QMatrix::identity(3),
                                            {"s", "t", "0"}, {"s", "t"}));
  EXPECT_EQ(v.status, Status::NOT_AA);
  ASSERT_TRUE(std::holds_alternative<ObstructionBracket>(v.certificate));
  EXPECT_EQ(std::get<ObstructionBracket>(v.certificate).bracket, unit(3, 2));
}

TEST(TranslationDecide, Examples) {
  TranslationReport r = translation_decide(torus_system(QMatrix::identity(2), {"s", "t"}, {"s", "t"}));
  EXPECT_EQ(r.verdict.status, Status::AA);
  EXPECT_TRUE(r.normal);

  r = translation_decide(make_system(testing::heisenberg(), heisenberg_lattice(), QMatrix::identity(3),
                                     {"t", "0", "0"}, {"t"}));
  EXPECT_EQ(r.verdict.status, Status::AA);
  EXPECT_EQ(witness(r.verdict), QSubspace::span(3, {unit(3, 0), unit(3, 2)}));
  EXPECT_TRUE(r.normal);

  r = translation_decide(make_system(testing::free_nilpotent_2_3(), testing::free_nilpotent_lattice(),
                                     QMatrix::identity(5), {"0", "0", "0", "t", "0"}, {"t"}));
  EXPECT_EQ(r.verdict.status, Status::AA);
  EXPECT_EQ(witness(r.verdict), QSubspace::span(5, {unit(5, 3)}));
  EXPECT_TRUE(r.normal);

  EXPECT_THROW(translation_decide(torus_system(kShear, {"0", "0"})), InapplicableCriterion);
}

TEST(MinimalityCheck, Examples) {
  EXPECT_EQ(minimality_check(torus_system(QMatrix::identity(1), {"t"}, {"t"})).status, MinimalityStatus::Minimal);

  MinimalityResult m = minimality_check(torus_system(QMatrix::identity(1), {"1/2"}));
  EXPECT_EQ(m.status, MinimalityStatus::NotMinimal);
  EXPECT_EQ(m.character, (ZVector{1}));
  EXPECT_EQ(m.value, Rational(1, 2));

  m = minimality_check(make_system(testing::heisenberg(), heisenberg_lattice(), QMatrix::identity(3),
                                   {"t", "0", "0"}, {"t"}));
  EXPECT_EQ(m.status, MinimalityStatus::NotMinimal);
  EXPECT_EQ(m.character, (ZVector{0, 1}));
  EXPECT_EQ(m.value, 0);

  EXPECT_EQ(minimality_check(make_system(testing::heisenberg(), heisenberg_lattice(), QMatrix::identity(3),
                                         {"s", "t", "0"}, {"s", "t"}))
                .status,
            MinimalityStatus::Minimal);
  EXPECT_EQ(minimality_check(torus_system(kShear, {"0", "t"}, {"t"})).status, MinimalityStatus::Inconclusive);
}

AffineSystem with_generators(AffineSystem sys, QVector xi, QVector eta) {
  sys.generators = GeneratorPair{std::move(xi), std::move(eta)};
  return sys;
}

TEST(TwoGenerator, Heisenberg) {
  const AffineSystem sys = with_generators(
      make_system(testing::heisenberg(), heisenberg_lattice(), QMatrix{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}},
                  {"0", "0", "0"}),
      unit(3, 0), unit(3, 1));
  const TwoGeneratorReport r = two_generator_analysis(sys);
  EXPECT_EQ(r.n, 2u);
  EXPECT_EQ(r.coefficients, (std::vector<Rational>{1, Rational(-1, 2)}));
  EXPECT_TRUE(r.oracle_agrees);
  EXPECT_TRUE(r.all_nonzero);
  EXPECT_TRUE(r.abelian_m);
  EXPECT_TRUE(r.u_fixes_m);
}

TEST(TwoGenerator, FreeNilpotentClassThree) {
  const AffineSystem sys = with_generators(make_system(testing::free_nilpotent_2_3(), testing::free_nilpotent_lattice(),
                                                       free_nilpotent_u(), {"0", "0", "0", "0", "0"}),
                                           unit(5, 0), unit(5, 1));
  const TwoGeneratorReport r = two_generator_analysis(sys);
  EXPECT_EQ(r.n, 3u);
  EXPECT_EQ(r.coefficients, (std::vector<Rational>{1, Rational(-1, 2), Rational(1, 6)}));
  EXPECT_EQ(r.matrix_coefficients, r.coefficients);
  EXPECT_TRUE(r.oracle_agrees);
  EXPECT_TRUE(r.all_nonzero);
  EXPECT_EQ(r.stated_coefficients, (std::vector<Rational>{1, -1, Rational(1, 2)}));
  EXPECT_FALSE(r.stated_formula_agrees);
  EXPECT_FALSE(r.abelian_m);
  EXPECT_FALSE(r.u_fixes_m);
  // tau shifts eta -> [xi, eta] -> [xi, [xi, eta]]
  EXPECT_EQ(r.basis, (std::vector<QVector>{unit(5, 1), unit(5, 2), unit(5, 3)}));
  QMatrix tau(3, 3);
  tau(1, 0) = 1;
  tau(2, 1) = 1;
  EXPECT_EQ(r.tau_matrix, tau);
}

TEST(TwoGenerator, Abelian) {
  const AffineSystem sys =
      with_generators(torus_system(QMatrix{{1, 0}, {1, 1}}, {"0", "0"}), unit(2, 0), unit(2, 1));
  const TwoGeneratorReport r = two_generator_analysis(sys);
  EXPECT_EQ(r.n, 1u);
  EXPECT_EQ(r.coefficients, (std::vector<Rational>{1}));
  EXPECT_EQ(r.a_t, (ParamVector{Poly(0), Poly::var(0)}));
}

TEST(TwoGenerator, HypothesisViolations) {
  const AffineSystem base = make_system(testing::heisenberg(), heisenberg_lattice(),
                                        QMatrix{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}, {"0", "0", "0"});
  auto which = [](const AffineSystem& s) {
    try {
      two_generator_analysis(s);
    } catch (const HypothesisViolated& e) {
      return e.which;
    }
    return std::string("none");
  };
  EXPECT_EQ(which(base), "generators");
  EXPECT_EQ(which(with_generators(base, unit(3, 0), unit(3, 2))), "generates");
  EXPECT_EQ(which(with_generators(base, unit(3, 1), unit(3, 0))), "u_xi");
}

// ---------------------------------------------------------------------------
// Properties over the corpus

TEST(CorpusProperties, ImplicationChain) {
  for (const auto& name : testing::valid_corpus()) {
    const AffineSystem sys = testing::load(name);
    if (!unipotency_index(sys.automorphism)) continue;
    const Verdict full = full_decide(sys);
    if (full.status != Status::AA) continue;
    EXPECT_EQ(basepoint_decide(sys).status, Status::AA) << name;
    EXPECT_TRUE(lie_necessary(sys).pass) << name;
    if (is_zero(sys.translation)) {
      EXPECT_LE(*nilrank(sys.automorphism), 2u) << name;
    }
  }
}

TEST(CorpusProperties, TorusAgreesWithFull) {
  for (const auto& name : testing::valid_corpus()) {
    const AffineSystem sys = testing::load(name);
    if (!sys.algebra().is_abelian() || !unipotency_index(sys.automorphism)) continue;
    const Verdict t = torus_decide(sys), f = full_decide(sys);
    EXPECT_EQ(t.status, f.status) << name;
    if (t.status == Status::AA) {
      EXPECT_EQ(witness(t), witness(f)) << name;
    }
  }
}

TEST(CorpusProperties, TranslationPowers) {
  for (const auto& name : testing::valid_corpus()) {
    const AffineSystem sys = testing::load(name);
    if (sys.automorphism != QMatrix::identity(sys.dim())) continue;
    const Status base = translation_decide(sys).verdict.status;
    for (long n : {2L, 3L}) {
      AffineSystem p = sys;
      for (auto& c : p.translation) c = c.scaled(Rational(n));
      EXPECT_EQ(translation_decide(p).verdict.status, base) << name << " power " << n;
    }
  }
}

// Defect values at random points lie in the witness subspace.
TEST(CorpusProperties, WitnessContainsDefectValues) {
  std::mt19937_64 rng(79);
  for (const auto& name : testing::valid_corpus()) {
    const AffineSystem sys = testing::load(name);
    if (!unipotency_index(sys.automorphism)) continue;
    const Verdict v = full_decide(sys);
    if (v.status != Status::AA) continue;
    QMatrix u = sys.automorphism;
    ParamVector a = sys.translation;
    if (!v.notes.empty() && v.notes.front().rfind("translation replaced", 0) == 0) {
      const Representative rep = fixed_representative(sys.group, sys.lattice, u, a);
      u = rep.u;
      a = rep.log_a;
    }
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Rational> vals;
      for (std::size_t i = 0; i < sys.params.size(); ++i) vals.push_back(testing::random_rational(rng));
      const QVector x = testing::random_vector(rng, sys.dim());
      EXPECT_TRUE(witness(v).contains(testing::defect_value(sys, u, a, vals, x))) << name;
    }
  }
}

TEST(RandomTori, TorusAgreesWithFull) {
  std::mt19937_64 rng(83);
  int aa = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const AffineSystem sys = testing::random_torus_system(rng, 1 + static_cast<std::size_t>(trial % 4));
    const Verdict t = torus_decide(sys), f = full_decide(sys);
    ASSERT_EQ(t.status, f.status) << "trial " << trial;
    if (t.status == Status::AA) {
      ++aa;
      EXPECT_EQ(witness(t), witness(f));
    }
  }
  EXPECT_GT(aa, 0);
  EXPECT_LT(aa, 60);
}

}  // namespace
}  // namespace nilaa
