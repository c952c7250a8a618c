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

#ifndef NILAA_ORBIT_HPP
#define NILAA_ORBIT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <vector>

#include "nilaa/system.hpp"

namespace nilaa {

using Point = std::vector<double>;

enum class Space { Torus, Heisenberg3 };

/// T(x) = a U(x) on R^d / Z^d, or on the Heisenberg group modulo the lattice
/// Z xi1 + Z xi2 + (1/2) Z xi3 in exponential coordinates.
struct NumericAffine {
  Space space = Space::Torus;
  std::size_t dim = 0;
  std::vector<double> matrix;   ///< row-major
  std::vector<double> inverse;  ///< row-major, from the exact inverse
  Point translation;

  bool pure_translation() const {
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (matrix[i * dim + j] != (i == j ? 1.0 : 0.0)) return false;
    return true;
  }
};

inline NumericAffine make_numeric(const QMatrix& u, Point translation, Space space = Space::Torus) {
  const std::size_t d = u.rows();
  if (!u.square() || translation.size() != d) throw Error("make_numeric: dimension mismatch");
  if (space == Space::Heisenberg3 && d != 3) throw Error("make_numeric: Heisenberg space needs dimension 3");
  auto inv = inverse(u);
  if (!inv) throw Error("make_numeric: matrix is singular");
  NumericAffine m{space, d, std::vector<double>(d * d), std::vector<double>(d * d), std::move(translation)};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      m.matrix[i * d + j] = u(i, j).get_d();
      m.inverse[i * d + j] = (*inv)(i, j).get_d();
    }
  return m;
}

namespace detail {

inline double frac(double v) {
  double f = v - std::floor(v);
  return f >= 1.0 ? 0.0 : f;
}

inline double circle_distance(double a, double b, double period = 1.0) {
  double t = std::fmod(std::fabs(a - b), period);
  return std::min(t, period - t);
}

inline Point mat_vec(const std::vector<double>& m, const Point& x) {
  const std::size_t d = x.size();
  Point r(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) r[i] += m[i * d + j] * x[j];
  return r;
}

/// (x, y, z)(x', y', z') = (x + x', y + y', z + z' + (x y' - y x') / 2).
inline Point heis_mul(const Point& p, const Point& q) {
  return {p[0] + q[0], p[1] + q[1], p[2] + q[2] + 0.5 * (p[0] * q[1] - p[1] * q[0])};
}

/// Right multiplication by lattice elements, in the order xi1, xi2, xi3.
inline Point heis_reduce(Point p) {
  const double m = std::floor(p[0]);
  p[0] -= m;
  p[2] += 0.5 * m * p[1];
  const double n = std::floor(p[1]);
  p[1] -= n;
  p[2] -= 0.5 * n * p[0];
  p[2] = 0.5 * frac(p[2] / 0.5);
  return p;
}

inline Point reduce(const NumericAffine& map, Point p) {
  if (map.space == Space::Heisenberg3) return heis_reduce(std::move(p));
  for (auto& v : p) v = frac(v);
  return p;
}

inline Point step(const NumericAffine& map, const Point& x) {
  Point ux = mat_vec(map.matrix, x);
  if (map.space == Space::Heisenberg3) return heis_reduce(heis_mul(map.translation, ux));
  for (std::size_t i = 0; i < ux.size(); ++i) ux[i] += map.translation[i];
  return reduce(map, std::move(ux));
}

inline Point step_back(const NumericAffine& map, const Point& x) {
  Point v;
  if (map.space == Space::Heisenberg3) {
    const Point inv_a{-map.translation[0], -map.translation[1], -map.translation[2]};
    v = heis_mul(inv_a, x);
  } else {
    v = x;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= map.translation[i];
  }
  return reduce(map, mat_vec(map.inverse, v));
}

}  // namespace detail

inline constexpr long kIterateCap = 100'000'000;

/// T^k(x), reducing to the fundamental domain after every step.
inline Point iterate(const NumericAffine& map, Point x, long k) {
  if (std::labs(k) > kIterateCap) throw Error("iterate: step count exceeds the cap");
  x = detail::reduce(map, std::move(x));
  for (long i = 0; i < k; ++i) x = detail::step(map, x);
  for (long i = 0; i > k; --i) x = detail::step_back(map, x);
  return x;
}

/// Max-norm of coordinatewise circle distances; on the Heisenberg quotient
/// the minimum over neighbouring lattice translates.
inline double distance(const NumericAffine& map, const Point& p, const Point& q) {
  const Point a = detail::reduce(map, p), b = detail::reduce(map, q);
  if (map.space == Space::Torus) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, detail::circle_distance(a[i], b[i]));
    return m;
  }
  double best = INFINITY;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      const Point c = detail::heis_mul(b, {double(i), double(j), 0.0});
      const double m = std::max({std::fabs(a[0] - c[0]), std::fabs(a[1] - c[1]),
                                 detail::circle_distance(a[2], c[2], 0.5)});
      best = std::min(best, m);
    }
  return best;
}

namespace detail {

/// Denominators of the continued-fraction convergents of v, up to `limit`.
inline std::vector<long> convergent_denominators(double v, long limit) {
  std::vector<long> out;
  double x = frac(v);
  long q_prev = 0, q = 1;
  for (int it = 0; it < 64 && x > 1e-15; ++it) {
    const double inv = 1.0 / x;
    const long a = static_cast<long>(std::floor(inv));
    const long next = a * q + q_prev;
    if (next > limit || next <= 0) break;
    out.push_back(next);
    q_prev = q;
    q = next;
    x = inv - static_cast<double>(a);
  }
  return out;
}

}  // namespace detail

inline constexpr std::size_t kMaxReturnTimes = 10;

/// Up to ten k in [0, horizon] with dist(T^k x, y) < eps, in increasing
/// order; nullopt when none exists.
inline std::optional<std::vector<long>> find_forward_sequence(const NumericAffine& map, const Point& x,
                                                              const Point& y, double eps, long horizon) {
  if (!(eps > 0)) throw Error("find_forward_sequence: eps must be positive");
  std::set<long> found;
  if (distance(map, x, y) < eps) found.insert(0);
  if (map.pure_translation() && map.space == Space::Torus) {
    std::set<long> candidates;
    for (double t : map.translation)
      for (long q : detail::convergent_denominators(t, horizon)) candidates.insert(q);
    for (long k : candidates) {
      if (found.size() >= kMaxReturnTimes) break;
      Point p = x;
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = detail::frac(x[i] + static_cast<double>(k) * map.translation[i]);
      if (distance(map, p, y) < eps) found.insert(k);
    }
  }
  Point cur = detail::reduce(map, x);
  for (long k = 0; k <= horizon && found.size() < kMaxReturnTimes; ++k) {
    if (distance(map, cur, y) < eps) found.insert(k);
    cur = detail::step(map, cur);
  }
  if (found.empty()) return std::nullopt;
  return std::vector<long>(found.begin(), found.end());
}

struct AAWitness {
  Point x, y;
  std::vector<long> sequence;
  long k = 0;  ///< the index that breaks the return
  double forward_distance = 0, backward_distance = 0;
};

enum class AAVerdict { ConsistentWithAA, Falsified };

struct AATestReport {
  std::size_t trials = 0;
  long horizon = 0;
  double epsilon_forward = 0;
  std::uint64_t seed = 0;
  AAVerdict verdict = AAVerdict::ConsistentWithAA;
  std::optional<AAWitness> witness;
};

inline constexpr double kSeparation = 10.0;

/// Samples points x (trial 0 may use `start`), targets y = T^j x with
/// j in {0, ..., 4}, and checks T^{-k} y -> x along every forward return
/// time k != j of x to y.
inline AATestReport aa_empirical_test(const NumericAffine& map, std::size_t trials, double eps, long horizon,
                                      std::uint64_t seed, const std::optional<Point>& start = std::nullopt) {
  AATestReport rep{trials, horizon, eps, seed, AAVerdict::ConsistentWithAA, std::nullopt};
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + t);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Point x(map.dim);
    if (t == 0 && start) {
      x = *start;
    } else {
      for (auto& v : x) v = unit(rng);
    }
    x = detail::reduce(map, std::move(x));
    const long j = t == 0 ? 0 : std::uniform_int_distribution<long>(0, 4)(rng);
    const Point y = iterate(map, x, j);
    auto seq = find_forward_sequence(map, x, y, eps, horizon);
    if (!seq) continue;
    for (long k : *seq) {
      if (k == j) continue;
      const double fwd = distance(map, iterate(map, x, k), y);
      const double bwd = distance(map, iterate(map, y, -k), x);
      if (fwd < eps && bwd > kSeparation * eps) {
        rep.verdict = AAVerdict::Falsified;
        rep.witness = AAWitness{x, y, *seq, k, fwd, bwd};
        return rep;
      }
    }
  }
  return rep;
}

/// Writes k, x_1, ..., x_d for k = 0..steps.
inline void dump_trajectory(std::ostream& out, const NumericAffine& map, Point x, long steps) {
  out << "k";
  for (std::size_t i = 0; i < map.dim; ++i) out << ",x" << i + 1;
  out << "\n";
  out.precision(17);
  x = detail::reduce(map, std::move(x));
  for (long k = 0; k <= steps; ++k) {
    out << k;
    for (double v : x) out << "," << v;
    out << "\n";
    x = detail::step(map, x);
  }
}

/// Numeric model of a validated system at the given parameter values.
inline NumericAffine numeric_from_system(const AffineSystem& sys, const std::vector<double>& param_values) {
  const std::size_t d = sys.dim();
  Space space;
  if (sys.algebra().is_abelian() && sys.lattice.basis() == QMatrix::identity(d)) {
    space = Space::Torus;
  } else {
    QMatrix heis_basis = QMatrix::identity(3);
    if (d == 3) heis_basis(2, 2) = Rational(1, 2);
    const bool heis = d == 3 && sys.algebra().entries().size() == 1 && sys.algebra().constant(0, 1, 2) == 1 &&
                      sys.lattice.basis() == heis_basis;
    if (!heis) throw Error("simulation supports standard tori and the Heisenberg quotient only");
    space = Space::Heisenberg3;
  }
  Point a(d);
  for (std::size_t i = 0; i < d; ++i) a[i] = sys.translation[i].evaluate_double(param_values);
  return make_numeric(sys.automorphism, std::move(a), space);
}

}  // namespace nilaa

#endif  // NILAA_ORBIT_HPP
