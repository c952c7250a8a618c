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

#ifndef NILAA_UPOLY_HPP
#define NILAA_UPOLY_HPP

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nilaa/matrix.hpp"

namespace nilaa {

/// Dense univariate polynomial over Q, coefficients from degree 0 upwards.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(QVector coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly monomial(unsigned degree, const Rational& c = 1) {
    QVector v(degree + 1, Rational(0));
    v[degree] = c;
    return UPoly(std::move(v));
  }

  const QVector& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  bool has_integer_coeffs() const {
    for (const auto& x : c_)
      if (!is_integer(x)) return false;
    return true;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    QVector r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    QVector r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    QVector r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  /// Quotient and remainder of division by a nonzero polynomial.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw Error("polynomial division by zero");
    QVector rem = c_;
    const int dd = d.degree();
    if (degree() < dd) return {UPoly(), *this};
    QVector q(static_cast<std::size_t>(degree() - dd + 1), Rational(0));
    for (int k = degree() - dd; k >= 0; --k) {
      Rational f = rem[static_cast<std::size_t>(k + dd)] / d.leading();
      q[static_cast<std::size_t>(k)] = f;
      if (is_zero_q(f)) continue;
      for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= f * d.c_[static_cast<std::size_t>(j)];
    }
    return {UPoly(std::move(q)), UPoly(std::move(rem))};
  }

  /// p(M) by Horner's rule.
  QMatrix evaluate(const QMatrix& m) const {
    QMatrix r(m.rows(), m.cols());
    const QMatrix id = QMatrix::identity(m.rows());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * m + id.scaled(*it);
    return r;
  }

  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const Rational& c = c_[static_cast<std::size_t>(i)];
      if (is_zero_q(c)) continue;
      Rational mag = abs(c);
      if (s.empty())
        s += sgn(c) < 0 ? "-" : "";
      else
        s += sgn(c) < 0 ? " - " : " + ";
      if (i == 0 || mag != 1) s += mag.get_str() + (i == 0 ? "" : "*");
      if (i >= 1) s += var;
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  static bool is_zero_q(const Rational& q) { return sgn(q) == 0; }
  void trim() {
    while (!c_.empty() && is_zero_q(c_.back())) c_.pop_back();
  }
  QVector c_;
};

/// Characteristic polynomial det(xI - M) by the Faddeev-LeVerrier recurrence.
inline UPoly charpoly(const QMatrix& m) {
  if (!m.square()) throw Error("charpoly: matrix is not square");
  const std::size_t n = m.rows();
  QVector c(n + 1, Rational(0));
  c[n] = 1;
  QMatrix mk(n, n);  // M_0 = 0
  const QMatrix id = QMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + id.scaled(c[n - k + 1]);
    QMatrix amk = m * mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return UPoly(std::move(c));
}

inline unsigned long euler_phi(unsigned long m) {
  unsigned long result = m;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

/// The m-th cyclotomic polynomial, from x^m - 1 = prod_{d | m} Phi_d.
inline UPoly cyclotomic(unsigned long m) {
  static thread_local std::map<unsigned long, UPoly> cache;
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  QVector v(m + 1, Rational(0));
  v[0] = -1;
  v[m] = 1;
  UPoly p(std::move(v));
  for (unsigned long d = 1; d < m; ++d)
    if (m % d == 0) p = p.divmod(cyclotomic(d)).first;
  cache.emplace(m, p);
  return p;
}

/// Outcome of the root-of-unity test.
struct AllRootsOfUnity {
  Integer order;  ///< lcm of the orders of the roots
  std::vector<std::pair<unsigned long, unsigned>> factors;  ///< (m, multiplicity) of Phi_m
};
/// `factor` is what remains after removing every cyclotomic factor. It is a
/// nonconstant monic integer polynomial; by Kronecker's theorem it has a root
/// off the unit circle.
struct SpectrumObstruction {
  UPoly factor;
};
using SpectrumResult = std::variant<AllRootsOfUnity, SpectrumObstruction>;

/// Trial division by Phi_m for every m <= 2 d^2 with phi(m) <= d.
inline SpectrumResult cyclotomic_spectrum_test(const UPoly& p) {
  if (!p.is_monic()) throw Error("cyclotomic_spectrum_test: polynomial is not monic");
  if (!p.has_integer_coeffs())
    throw Error("cyclotomic_spectrum_test: polynomial has non-integer coefficients");
  const auto d = static_cast<unsigned long>(p.degree());
  UPoly rest = p;
  AllRootsOfUnity ok{Integer(1), {}};
  for (unsigned long m = 1; m <= 2 * d * d && rest.degree() > 0; ++m) {
    if (euler_phi(m) > static_cast<unsigned long>(rest.degree())) continue;
    const UPoly phi = cyclotomic(m);
    unsigned mult = 0;
    for (;;) {
      auto [q, r] = rest.divmod(phi);
      if (!r.is_zero()) break;
      rest = q;
      ++mult;
    }
    if (mult) {
      ok.factors.emplace_back(m, mult);
      mpz_lcm_ui(ok.order.get_mpz_t(), ok.order.get_mpz_t(), m);
    }
  }
  if (rest.degree() > 0) return SpectrumObstruction{rest};
  return ok;
}

}  // namespace nilaa

#endif  // NILAA_UPOLY_HPP
