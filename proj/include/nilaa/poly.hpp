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

#ifndef NILAA_POLY_HPP
#define NILAA_POLY_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nilaa/rational.hpp"

namespace nilaa {

/// Exponent vector over the parameters of a context. Trailing zeros are
/// trimmed, so the constant monomial is the empty vector. The lexicographic
/// order of std::vector on trimmed vectors is the lex monomial order.
using Monomial = std::vector<unsigned>;

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

inline unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return d;
}

/// `a` divides `b`; on success `quotient` receives b / a.
inline bool monomial_divides(const Monomial& a, const Monomial& b, Monomial& quotient) {
  if (a.size() > b.size()) return false;
  quotient = b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    quotient[i] -= a[i];
  }
  while (!quotient.empty() && quotient.back() == 0) quotient.pop_back();
  return true;
}

/// Names of the formal parameters of a computation. Parameters are generic:
/// algebraically independent over Q.
class ParamContext {
 public:
  ParamContext() = default;
  explicit ParamContext(std::vector<std::string> names) : names_(std::move(names)) {}

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> index_of(std::string_view n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return i;
    return std::nullopt;
  }

  /// Appends a parameter and returns its index.
  std::size_t add(std::string n) {
    names_.push_back(std::move(n));
    return names_.size() - 1;
  }

 private:
  std::vector<std::string> names_;
};

/// Sparse multivariate polynomial with rational coefficients.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Poly() = default;
  Poly(const Rational& c) {  // NOLINT: implicit by design of the scalar ring
    if (!nilaa::is_zero(c)) terms_.emplace(Monomial{}, c);
  }
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT
  Poly(int c) : Poly(Rational(c)) {}   // NOLINT

  static Poly var(std::size_t index, unsigned power = 1) {
    Monomial m(index + 1, 0);
    m[index] = power;
    if (power == 0) m.clear();
    return term(std::move(m), Rational(1));
  }

  static Poly term(Monomial m, const Rational& c) {
    while (!m.empty() && m.back() == 0) m.pop_back();
    Poly p;
    if (!nilaa::is_zero(c)) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  Rational constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
  }
  /// One past the largest parameter index that occurs.
  std::size_t num_vars() const {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, m.size());
    return n;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
  }
  Poly operator-() const {
    Poly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    if (b.is_constant()) return a.scaled(b.constant_term());
    if (a.is_constant()) return b.scaled(a.constant_term());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(monomial_product(ma, mb), ca * cb);
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly scaled(const Rational& s) const {
    Poly r;
    if (nilaa::is_zero(s)) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * s);
    return r;
  }

  /// Substitutes the given values; parameters without a value stay symbolic.
  Poly substitute(const std::vector<std::optional<Rational>>& values) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
      Rational coeff = c;
      Monomial rest(m.size(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (i < values.size() && values[i]) {
          Rational p;
          mpz_pow_ui(p.get_num_mpz_t(), values[i]->get_num_mpz_t(), m[i]);
          mpz_pow_ui(p.get_den_mpz_t(), values[i]->get_den_mpz_t(), m[i]);
          coeff *= p;
        } else {
          rest[i] = m[i];
        }
      }
      while (!rest.empty() && rest.back() == 0) rest.pop_back();
      r.add_term(rest, coeff);
    }
    return r;
  }

  Rational evaluate(const std::vector<Rational>& values) const {
    std::vector<std::optional<Rational>> v(values.begin(), values.end());
    Poly p = substitute(v);
    if (!p.is_constant()) throw Error("evaluate: not every parameter has a value");
    return p.constant_term();
  }

  double evaluate_double(const std::vector<double>& values) const {
    double total = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = c.get_d();
      for (std::size_t i = 0; i < m.size(); ++i)
        for (unsigned e = 0; e < m[i]; ++e) t *= values.at(i);
      total += t;
    }
    return total;
  }

  /// Leading term in lex order.
  const std::pair<const Monomial, Rational>& leading() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return *terms_.rbegin();
  }

  /// Exact division; throws when `d` does not divide *this.
  Poly divide_exact(const Poly& d) const {
    if (d.is_zero()) throw Error("division by zero polynomial");
    if (d.is_constant()) return scaled(1 / d.constant_term());
    Poly rem(*this), q;
    const auto& [lm, lc] = d.leading();
    Monomial quot;
    while (!rem.is_zero()) {
      const auto& [rm, rc] = rem.leading();
      if (!monomial_divides(lm, rm, quot)) throw Error("inexact polynomial division");
      Poly t = Poly::term(quot, rc / lc);
      q += t;
      rem -= t * d;
    }
    return q;
  }

  std::string to_string(const ParamContext& ctx) const;

 private:
  void add_term(const Monomial& m, const Rational& c) {
    if (nilaa::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (nilaa::is_zero(it->second)) terms_.erase(it);
    }
  }

  TermMap terms_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }

inline std::string monomial_to_string(const Monomial& m, const ParamContext& ctx) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += i < ctx.size() ? ctx.name(i) : "p" + std::to_string(i);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

/// Terms are printed from the constant upwards, e.g. "1/2 + t - 3*s^2".
inline std::string Poly::to_string(const ParamContext& ctx) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    const bool neg = sgn(c) < 0;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (m.empty()) {
      s += mag.get_str();
    } else {
      if (mag != 1) s += mag.get_str() + "*";
      s += monomial_to_string(m, ctx);
    }
  }
  return s;
}

namespace detail {

// Recursive-descent parser for + - * ^ ( ) over rational literals and names.
// Division is only allowed by a constant.
class PolyParser {
 public:
  PolyParser(std::string_view text, const ParamContext& ctx) : s_(text), ctx_(ctx) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("polynomial '" + std::string(s_) + "': " + what + " at offset " +
                std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Poly expr() {
    Poly acc;
    bool neg = eat('-');
    if (!neg) eat('+');
    Poly t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }
  Poly term() {
    Poly acc = power();
    for (;;) {
      if (eat('*')) {
        acc = acc * power();
      } else if (eat('/')) {
        Poly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc = acc.scaled(1 / d.constant_term());
      } else {
        return acc;
      }
    }
  }
  Poly power() {
    Poly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
      Poly r(1);
      for (unsigned i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }
  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '.') fail("decimal literals are not exact");
      return Poly(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      auto name = s_.substr(start, pos_ - start);
      auto idx = ctx_.index_of(name);
      if (!idx) fail("unknown parameter '" + std::string(name) + "'");
      return Poly::var(*idx);
    }
    fail("unexpected character");
  }

  std::string_view s_;
  const ParamContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(std::string_view text, const ParamContext& ctx) {
  return detail::PolyParser(text, ctx).parse();
}

/// Vector of polynomials sharing one parameter context.
using ParamVector = std::vector<Poly>;

inline ParamVector to_param_vector(const QVector& v) {
  return ParamVector(v.begin(), v.end());
}

inline bool is_zero(const ParamVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

inline bool is_constant(const ParamVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_constant(); });
}

inline QVector constant_part(const ParamVector& v) {
  QVector r;
  r.reserve(v.size());
  for (const auto& p : v) r.push_back(p.constant_term());
  return r;
}

/// Splits v into its monomial coefficient vectors: v = sum_m m * coeffs[m].
inline std::map<Monomial, QVector> coefficient_vectors(const ParamVector& v) {
  std::map<Monomial, QVector> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (const auto& [m, c] : v[i].terms()) {
      auto [it, _] = out.try_emplace(m, QVector(v.size(), Rational(0)));
      it->second[i] = c;
    }
  return out;
}

inline ParamVector substitute(const ParamVector& v,
                              const std::vector<std::optional<Rational>>& values) {
  ParamVector r;
  r.reserve(v.size());
  for (const auto& p : v) r.push_back(p.substitute(values));
  return r;
}

}  // namespace nilaa

#endif  // NILAA_POLY_HPP
