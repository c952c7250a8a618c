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

using testing::matrix_exp;
using testing::matrix_log;
using testing::random_vector;
using testing::unit;

TEST(BCHTable, LowDegreeCoefficients) {
  const auto& terms = BCHTable::for_degree(2).terms();
  std::map<LieWord, Rational> m(terms.begin(), terms.end());
  // words are not reduced by antisymmetry: [X, Y] and [Y, X] both occur
  for (const auto& [w, c] : m) EXPECT_LE(w.size(), 2u);
  EXPECT_EQ(m[LieWord{0}], 1);
  EXPECT_EQ(m[LieWord{1}], 1);
  EXPECT_EQ((m[LieWord{0, 1}] - m[LieWord{1, 0}]), Rational(1, 2));
}

TEST(Product, HeisenbergClosedForm) {
  const NilpotentGroup grp(testing::heisenberg());
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const QVector x = random_vector(rng, 3), y = random_vector(rng, 3);
    const QVector p = grp.product(x, y);
    EXPECT_EQ(p[0], x[0] + y[0]);
    EXPECT_EQ(p[1], x[1] + y[1]);
    EXPECT_EQ(p[2], x[2] + y[2] + Rational(x[0] * y[1] - x[1] * y[0]) / 2);
  }
}

// log(exp X exp Y) computed with matrices in the strictly upper triangular
// realization is an independent oracle for the series.
TEST(Product, MatchesMatrixExponentials) {
  std::mt19937_64 rng(43);
  for (std::size_t n : {3u, 4u, 5u}) {
    const auto r = testing::upper_triangular(n);
    const NilpotentGroup grp(r.algebra);
    const std::size_t d = r.units.size();
    for (int trial = 0; trial < 15; ++trial) {
      const QVector x = random_vector(rng, d), y = random_vector(rng, d);
      const QMatrix prod = matrix_exp(r.to_matrix(x)) * matrix_exp(r.to_matrix(y));
      EXPECT_EQ(grp.product(x, y), r.to_vector(matrix_log(prod))) << "n = " << n;
    }
  }
}

TEST(Product, GroupAxioms) {
  std::mt19937_64 rng(47);
  const NilpotentGroup grp(testing::free_nilpotent_2_3());
  const QVector zero(5, Rational(0));
  for (int trial = 0; trial < 20; ++trial) {
    const QVector x = random_vector(rng, 5), y = random_vector(rng, 5), z = random_vector(rng, 5);
    EXPECT_EQ(grp.product(grp.product(x, y), z), grp.product(x, grp.product(y, z)));
    EXPECT_EQ(grp.product(x, grp.inverse(x)), zero);
    EXPECT_EQ(grp.product(x, zero), x);
    // one-parameter subgroups are additive in exponential coordinates
    QVector x3(5);
    for (std::size_t i = 0; i < 5; ++i) x3[i] = 3 * x[i];
    EXPECT_EQ(grp.product(x, grp.product(x, x)), x3);
  }
}

TEST(Product, PolynomialCoordinates) {
  const NilpotentGroup grp(testing::heisenberg());
  const Poly s = Poly::var(0), t = Poly::var(1);
  const ParamVector x{s, Poly(0), Poly(0)}, y{Poly(0), t, Poly(0)};
  EXPECT_EQ(grp.product(x, y), (ParamVector{s, t, (s * t).scaled(Rational(1, 2))}));
}

TEST(Adjoint, MatchesConjugation) {
  std::mt19937_64 rng(53);
  for (const LieAlgebra& g : {testing::free_nilpotent_2_3(), testing::upper_triangular(5).algebra}) {
    const NilpotentGroup grp(g);
    for (int trial = 0; trial < 10; ++trial) {
      const QVector a = random_vector(rng, g.dim()), x = random_vector(rng, g.dim());
      EXPECT_EQ(grp.adjoint(a) * x, grp.conjugate(a, x));
    }
  }
}

TEST(Adjoint, MatchesMatrixConjugation) {
  std::mt19937_64 rng(59);
  const auto r = testing::upper_triangular(4);
  const NilpotentGroup grp(r.algebra);
  for (int trial = 0; trial < 10; ++trial) {
    const QVector a = random_vector(rng, 6), x = random_vector(rng, 6);
    const QMatrix ea = matrix_exp(r.to_matrix(a));
    const QMatrix conj = ea * r.to_matrix(x) * *inverse(ea);
    EXPECT_EQ(grp.adjoint(a) * x, r.to_vector(conj));
  }
}

TEST(LogAutomorphism, DerivationWithExponentialU) {
  std::mt19937_64 rng(61);
  const LieAlgebra g = testing::free_nilpotent_2_3();
  const NilpotentGroup grp(g);
  for (int trial = 0; trial < 10; ++trial) {
    const QMatrix u = grp.adjoint(random_vector(rng, 5));
    ASSERT_TRUE(is_automorphism(g, u).ok);
    const QMatrix d = log_automorphism(g, u);
    EXPECT_TRUE(is_derivation(g, d));
    EXPECT_EQ(matrix_exp(d), u);
    EXPECT_EQ(exp_nilpotent(d), u);
    EXPECT_EQ(d, matrix_log(u));
  }
  EXPECT_THROW(log_unipotent(QMatrix{{2, 1}, {1, 1}}), NotUnipotent);
  EXPECT_THROW(log_automorphism(testing::heisenberg(), QMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}), Error);
}

TEST(Automorphisms, AreGroupHomomorphisms) {
  std::mt19937_64 rng(67);
  const NilpotentGroup grp(testing::heisenberg());
  const QMatrix u{{1, 1, 0}, {0, 1, 0}, {3, 2, 1}};
  ASSERT_TRUE(is_automorphism(grp.algebra(), u).ok);
  for (int trial = 0; trial < 10; ++trial) {
    const QVector x = random_vector(rng, 3), y = random_vector(rng, 3);
    EXPECT_EQ(u * grp.product(x, y), grp.product(QVector(u * x), QVector(u * y)));
  }
}

TEST(DefectMap, SpecialisesToDirectComputation) {
  std::mt19937_64 rng(71);
  const NilpotentGroup grp(testing::free_nilpotent_2_3());
  ParamContext ctx({"t"});
  const Poly t = Poly::var(0);
  const ParamVector log_a{t, Poly(1), Poly(0), t * t, Poly(Rational(1, 2))};
  QMatrix u = QMatrix::identity(5);
  u(1, 0) = 1;
  u(4, 3) = 1;
  ASSERT_TRUE(is_automorphism(grp.algebra(), u).ok);
  const DefectMap dm = defect_map(grp, log_a, u, ctx);
  EXPECT_EQ(ctx.size(), 6u);
  EXPECT_EQ(dm.first_coordinate, 1u);
  for (int trial = 0; trial < 5; ++trial) {
    const Rational tv = testing::random_rational(rng);
    const QVector x = random_vector(rng, 5);
    std::vector<Rational> vals{tv};
    vals.insert(vals.end(), x.begin(), x.end());
    QVector got(5);
    for (std::size_t i = 0; i < 5; ++i) got[i] = dm.value[i].evaluate(vals);
    QVector a(5);
    for (std::size_t i = 0; i < 5; ++i) a[i] = log_a[i].evaluate({tv});
    const QVector want = grp.product(grp.inverse(x), grp.product(a, QVector(u * x)));
    EXPECT_EQ(got, want);
  }
}

TEST(NilpotentGroup, ClassCap) {
  EXPECT_NO_THROW(NilpotentGroup(testing::upper_triangular(7).algebra));
  EXPECT_THROW(NilpotentGroup(testing::upper_triangular(8).algebra), ClassCapExceeded);
  EXPECT_NO_THROW(NilpotentGroup(testing::upper_triangular(8).algebra, 7));
  EXPECT_THROW(NilpotentGroup(LieAlgebra(2, {{0, 1, 1, 1}})), NotNilpotent);
}

TEST(Unipotency, Index) {
  EXPECT_EQ(unipotency_index(QMatrix::identity(3)), 1u);
  EXPECT_EQ(unipotency_index(QMatrix{{1, 1}, {0, 1}}), 2u);
  EXPECT_EQ(unipotency_index(QMatrix{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}), 3u);
  EXPECT_FALSE(unipotency_index(QMatrix{{0, -1}, {1, 0}}));
}

}  // namespace
}  // namespace nilaa
