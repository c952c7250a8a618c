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

#ifndef NILAA_RATIONAL_HPP
#define NILAA_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nilaa {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arbitrary precision integer.
using Integer = mpz_class;

/// Exact rational; GMP keeps it canonical (coprime, positive denominator).
using Rational = mpq_class;

using QVector = std::vector<Rational>;

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline bool is_zero(const QVector& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

/// Parses "p", "-p", "p/q" with optional surrounding blanks. No decimals.
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error("empty rational literal");
  const auto slash = s.find('/');
  auto check_int = [&](std::string_view part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) ++i;
    if (i == part.size()) throw Error("malformed rational literal '" + s + "'");
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw Error("malformed rational literal '" + s + "'");
  };
  std::string num = s.substr(0, slash);
  check_int(num, true);
  if (num[0] == '+') num.erase(0, 1);
  Rational r;
  if (slash == std::string::npos) {
    r = Rational(Integer(num));
  } else {
    std::string den = s.substr(slash + 1);
    check_int(den, false);
    Integer d(den);
    if (d == 0) throw Error("zero denominator in '" + s + "'");
    r = Rational(Integer(num), d);
    r.canonicalize();
  }
  return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Integer lcm_denominators(const QVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

}  // namespace nilaa

#endif  // NILAA_RATIONAL_HPP
