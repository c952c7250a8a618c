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

#ifndef NILAA_GROUP_HPP
#define NILAA_GROUP_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "nilaa/lie_algebra.hpp"

namespace nilaa {

inline constexpr std::size_t kDefaultClassCap = 6;

class ClassCapExceeded : public Error {
 public:
  ClassCapExceeded(std::size_t cls, std::size_t cap)
      : Error("nilpotency class " + std::to_string(cls) + " exceeds the BCH cap " + std::to_string(cap)),
        nilpotency_class(cls), cap(cap) {}
  std::size_t nilpotency_class, cap;
};

class NotUnipotent : public Error {
 public:
  NotUnipotent() : Error("matrix is not unipotent") {}
};

/// Lie word in two letters: 0 stands for X, 1 for Y. Its value is the
/// right-normed bracket [w1, [w2, ... [w_{m-1}, w_m]]].
using LieWord = std::vector<std::uint8_t>;

/// Dynkin series of log(exp X exp Y) truncated at a total degree, with
/// terms for equal words merged.
class BCHTable {
 public:
  explicit BCHTable(std::size_t max_degree) : max_degree_(max_degree) {
    std::map<LieWord, Rational> acc;
    std::vector<std::pair<unsigned, unsigned>> seq;
    for (std::size_t n = 1; n <= max_degree; ++n) {
      seq.assign(n, {0, 0});
      enumerate(acc, seq, 0, 0, n);
    }
    for (auto& [w, c] : acc)
      if (!nilaa::is_zero(c)) terms_.emplace_back(w, c);
  }

  std::size_t max_degree() const { return max_degree_; }
  const std::vector<std::pair<LieWord, Rational>>& terms() const { return terms_; }

  /// Shared table for a given truncation degree.
  static const BCHTable& for_degree(std::size_t degree) {
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<BCHTable>> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = tables[degree];
    if (!slot) slot = std::make_unique<BCHTable>(degree);
    return *slot;
  }

 private:
  static Rational factorial(unsigned k) {
    Integer f = 1;
    for (unsigned i = 2; i <= k; ++i) f *= i;
    return Rational(f);
  }

  void enumerate(std::map<LieWord, Rational>& acc, std::vector<std::pair<unsigned, unsigned>>& seq,
                 std::size_t pos, std::size_t used, std::size_t n) const {
    if (pos == n) {
      const auto [rn, sn] = seq.back();
      if (sn > 1 || (sn == 0 && rn > 1)) return;  // bracket vanishes
      Rational denom = Rational(static_cast<long>(n)) * Rational(static_cast<long>(used));
      LieWord w;
      for (const auto& [r, s] : seq) {
        denom *= factorial(r) * factorial(s);
        w.insert(w.end(), r, 0);
        w.insert(w.end(), s, 1);
      }
      Rational c = 1 / denom;
      if (n % 2 == 0) c = -c;
      acc[w] += c;
      return;
    }
    const std::size_t remaining_pairs = n - pos - 1;
    for (std::size_t tot = 1; used + tot + remaining_pairs <= max_degree_; ++tot)
      for (unsigned r = 0; r <= tot; ++r) {
        seq[pos] = {r, static_cast<unsigned>(tot - r)};
        enumerate(acc, seq, pos + 1, used + tot, n);
      }
  }

  std::size_t max_degree_;
  std::vector<std::pair<LieWord, Rational>> terms_;
};

/// The simply connected nilpotent group of a Lie algebra, in exponential
/// coordinates of the first kind: g = exp(sum v_i e_i).
class NilpotentGroup {
 public:
  explicit NilpotentGroup(LieAlgebra g, std::size_t class_cap = kDefaultClassCap)
      : g_(std::move(g)) {
    info_ = validate_algebra(g_);
    if (info_.nilpotency_class > class_cap) throw ClassCapExceeded(info_.nilpotency_class, class_cap);
    table_ = &BCHTable::for_degree(info_.nilpotency_class);
  }

  const LieAlgebra& algebra() const { return g_; }
  std::size_t dim() const { return g_.dim(); }
  std::size_t nilpotency_class() const { return info_.nilpotency_class; }
  const AlgebraInfo& info() const { return info_; }

  /// log(exp x exp y).
  template <typename S>
  std::vector<S> product(const std::vector<S>& x, const std::vector<S>& y) const {
    std::map<LieWord, std::vector<S>> cache;
    std::vector<S> out(dim(), S(0));
    for (const auto& [w, c] : table_->terms()) {
      const std::vector<S>& v = word_value(w, 0, x, y, cache);
      S coeff(c);
      for (std::size_t i = 0; i < out.size(); ++i)
        if (!nilaa::is_zero(v[i])) out[i] += coeff * v[i];
    }
    return out;
  }

  template <typename S>
  std::vector<S> inverse(const std::vector<S>& x) const {
    std::vector<S> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
    return r;
  }

  template <typename S>
  std::vector<S> conjugate(const std::vector<S>& g, const std::vector<S>& x) const {
    return product(product(g, x), inverse(g));
  }

  /// exp(ad_x) as a finite sum.
  template <typename S>
  Matrix<S> adjoint(const std::vector<S>& x) const {
    const Matrix<S> ad = g_.ad_matrix(x);
    Matrix<S> term = Matrix<S>::identity(dim()), sum = term;
    for (std::size_t k = 1; k < nilpotency_class() + 1; ++k) {
      term = (term * ad).scaled(S(Rational(1, static_cast<unsigned long>(k))));
      if (term.is_zero()) break;
      sum += term;
    }
    return sum;
  }

 private:
  template <typename S>
  const std::vector<S>& word_value(const LieWord& w, std::size_t from, const std::vector<S>& x,
                                   const std::vector<S>& y, std::map<LieWord, std::vector<S>>& cache) const {
    LieWord suffix(w.begin() + static_cast<std::ptrdiff_t>(from), w.end());
    if (auto it = cache.find(suffix); it != cache.end()) return it->second;
    std::vector<S> v;
    if (suffix.size() == 1) {
      v = suffix[0] == 0 ? x : y;
    } else {
      const std::vector<S>& rest = word_value(w, from + 1, x, y, cache);
      v = g_.bracket(suffix[0] == 0 ? x : y, rest);
    }
    return cache.emplace(std::move(suffix), std::move(v)).first->second;
  }

  LieAlgebra g_;
  AlgebraInfo info_;
  const BCHTable* table_ = nullptr;
};

template <typename S>
std::vector<S> apply_automorphism(const QMatrix& u, const std::vector<S>& g) {
  Matrix<S> m(u.rows(), u.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) m(i, j) = S(u(i, j));
  return m * g;
}

/// Same as apply_automorphism after checking u against the bracket.
template <typename S>
std::vector<S> apply_automorphism_checked(const LieAlgebra& g, const QMatrix& u, const std::vector<S>& x) {
  if (!is_automorphism(g, u).ok) throw Error("apply_automorphism: matrix is not a Lie automorphism");
  return apply_automorphism(u, x);
}

/// D = log U as the finite series sum (-1)^{k+1} (U - I)^k / k.
inline QMatrix log_unipotent(const QMatrix& u) {
  if (!unipotency_index(u)) throw NotUnipotent();
  const std::size_t n = u.rows();
  const QMatrix nmat = u - QMatrix::identity(n);
  QMatrix power = nmat, sum(n, n);
  for (std::size_t k = 1; k <= n && !power.is_zero(); ++k) {
    Rational c(1, static_cast<unsigned long>(k));
    if (k % 2 == 0) c = -c;
    sum += power.scaled(c);
    power = power * nmat;
  }
  return sum;
}

/// exp of a nilpotent matrix as a finite series.
template <typename S>
Matrix<S> exp_nilpotent(const Matrix<S>& d) {
  const std::size_t n = d.rows();
  Matrix<S> term = Matrix<S>::identity(n), sum = term;
  for (std::size_t k = 1; k <= n; ++k) {
    term = (term * d).scaled(S(Rational(1, static_cast<unsigned long>(k))));
    if (term.is_zero()) return sum;
    sum += term;
  }
  if (!term.is_zero()) throw Error("exp_nilpotent: matrix is not nilpotent");
  return sum;
}

/// Logarithm of a unipotent Lie automorphism; the result is a nilpotent
/// derivation with exp(D) = U.
inline QMatrix log_automorphism(const LieAlgebra& g, const QMatrix& u) {
  if (!is_automorphism(g, u).ok) throw Error("log_automorphism: matrix is not a Lie automorphism");
  return log_unipotent(u);
}

/// The map x -> x^{-1} a U(x) as a polynomial in fresh coordinate
/// parameters X_1..X_d appended to `ctx`; returns the map and the index of
/// X_1 in the context.
struct DefectMap {
  ParamVector value;
  std::size_t first_coordinate = 0;
};

inline DefectMap defect_map(const NilpotentGroup& grp, const ParamVector& log_a, const QMatrix& u,
                            ParamContext& ctx) {
  const std::size_t d = grp.dim();
  if (log_a.size() != d) throw Error("defect_map: translation has wrong dimension");
  DefectMap out;
  out.first_coordinate = ctx.size();
  ParamVector x(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t idx = ctx.add("X" + std::to_string(i + 1));
    x[i] = Poly::var(idx);
  }
  ParamVector ux = apply_automorphism(u, x);
  out.value = grp.product(grp.inverse(x), grp.product(log_a, ux));
  return out;
}

}  // namespace nilaa

#endif  // NILAA_GROUP_HPP
