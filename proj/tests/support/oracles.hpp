// Copyright 2026 The gpath Authors
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

// Reference data and independent oracles shared by the unit and acceptance
// tests. Nothing here calls into the routines it is used to check.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gpath/gpath.hpp"

namespace gpath::testing {

// Six-vertex worked example in the figure numbering, where vertices 1-3 form
// one rail and 4-6 the other and links are numbered in drawing order.
namespace figure {

inline IntMatrix d1() {
  IntMatrix m(6, 7);
  m << -1, 0, 0, -1, 0, 0, 0,
        1, -1, -1, 0, 0, 0, 0,
        0, 0, 1, 0, 0, 0, -1,
        0, 0, 0, 1, -1, 0, 0,
        0, 1, 0, 0, 1, -1, 0,
        0, 0, 0, 0, 0, 1, 1;
  return m;
}

inline IntMatrix d2() {
  IntMatrix m(7, 2);
  m << -1, 0,
       -1, 1,
        0, -1,
        1, 0,
        1, 0,
        0, 1,
        0, -1;
  return m;
}

inline IntMatrix laplacian() {
  IntMatrix m(6, 6);
  m << 2, -1, 0, -1, 0, 0,
      -1, 3, -1, 0, -1, 0,
       0, -1, 2, 0, 0, -1,
      -1, 0, 0, 2, -1, 0,
       0, -1, 0, -1, 3, -1,
       0, 0, -1, 0, -1, 2;
  return m;
}

/// Figure link f (zero-based) is canonical link kToCanonical[f].
inline constexpr std::array<Index, 7> kToCanonical{0, 5, 1, 4, 2, 3, 6};

/// Columns of a canonical 7-column matrix reordered into figure order.
template <typename Derived>
auto to_figure_columns(const Eigen::MatrixBase<Derived>& canonical) {
  using M = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  M out(canonical.rows(), 7);
  for (Index f = 0; f < 7; ++f) out.col(f) = canonical.col(kToCanonical[static_cast<std::size_t>(f)]);
  return out;
}

/// Rows of a canonical 7-row matrix (or vector) reordered into figure order.
template <typename Derived>
auto to_figure_rows(const Eigen::MatrixBase<Derived>& canonical) {
  using M = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  M out(7, canonical.cols());
  for (Index f = 0; f < 7; ++f) out.row(f) = canonical.row(kToCanonical[static_cast<std::size_t>(f)]);
  return out;
}

/// The source column written out in figure link labels e1..e7.
inline IntVector source(const IntVector& e) {
  IntVector j(6);
  j << -e(0) - e(3), e(0) - e(1) - e(2), e(2) - e(6), e(3) - e(4), e(1) + e(4) - e(5), e(5) + e(6);
  return j;
}

/// The Laplacian column written out in vertex values v1..v6.
inline IntVector laplacian_column(const IntVector& v) {
  IntVector out(6);
  out << 2 * v(0) - v(1) - v(3), -v(0) + 3 * v(1) - v(2) - v(4), -v(1) + 2 * v(2) - v(5), -v(0) + 2 * v(3) - v(4),
      -v(1) - v(3) + 3 * v(4) - v(5), -v(2) - v(4) + 2 * v(5);
  return out;
}

}  // namespace figure

/// Degree minus adjacency, read off the link list.
inline IntMatrix adjacency_laplacian(const LadderGraph& g) {
  IntMatrix lap = IntMatrix::Zero(g.n_vertices(), g.n_vertices());
  for (const Link& l : g.links()) {
    lap(l.tail, l.tail) += 1;
    lap(l.head, l.head) += 1;
    lap(l.tail, l.head) -= 1;
    lap(l.head, l.tail) -= 1;
  }
  return lap;
}

/// Plain ladder Laplacian assembled without the graph type: two paths of
/// length N/2 joined rung by rung.
inline Matrix ladder_laplacian(Index n) {
  const Index h = n / 2;
  Matrix lap = Matrix::Zero(n, n);
  auto join = [&](Index a, Index b) {
    lap(a, a) += 1;
    lap(b, b) += 1;
    lap(a, b) -= 1;
    lap(b, a) -= 1;
  };
  for (Index i = 0; i + 1 < h; ++i) {
    join(i, i + 1);
    join(h + i, h + i + 1);
  }
  for (Index i = 0; i < h; ++i) join(i, h + i);
  return lap;
}

/// Discretized action matrix of two coupled oscillator chains (mass m,
/// on-site spring k, rail-to-rail coupling k12, time step dt), one chain per
/// rail. With `lorentzian` the potential terms change sign relative to the
/// kinetic ones, as under dt -> i dtau.
inline Matrix oscillator_operator(Index n, double m, double k, double k12, double dt, bool lorentzian = false) {
  const Index h = n / 2;
  const double pot = lorentzian ? -1.0 : 1.0;
  Matrix op = Matrix::Zero(n, n);
  for (Index rail = 0; rail < 2; ++rail) {
    for (Index i = 0; i < h; ++i) {
      const Index v = rail * h + i;
      const double neighbours = (i > 0 ? 1.0 : 0.0) + (i + 1 < h ? 1.0 : 0.0);
      op(v, v) = neighbours * m / dt + pot * k * dt;
      if (i + 1 < h) op(v, v + 1) = op(v + 1, v) = -m / dt;
    }
  }
  for (Index i = 0; i < h; ++i) op(i, h + i) = op(h + i, i) = pot * k12 * dt;
  return op;
}

/// Uniformly random element of O(n) (QR of a Gaussian matrix, sign-fixed).
inline Matrix random_orthogonal(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

/// Copy of `s` whose eigenvectors are mixed by a random orthogonal matrix
/// inside every degeneracy group.
inline Spectrum rotate_degenerate(const Spectrum& s, std::mt19937_64& rng) {
  Spectrum out = s;
  for (const auto& group : s.degeneracy_groups) {
    const auto m = static_cast<Index>(group.size());
    if (m < 2) continue;
    Matrix basis(s[group.front()].vector.size(), m);
    for (Index c = 0; c < m; ++c) basis.col(c) = s[group[static_cast<std::size_t>(c)]].vector;
    const Matrix mixed = basis * random_orthogonal(m, rng);
    for (Index c = 0; c < m; ++c) {
      Eigenpair& p = out.pairs[static_cast<std::size_t>(group[static_cast<std::size_t>(c)])];
      p.vector = mixed.col(c);
      p.parity = Parity::mixed;
      p.wavenumber = -1;
    }
  }
  return out;
}

/// Detector height where the slit-1 path exceeds the slit-2 path by n
/// wavelengths: the branch of the hyperbola |l1 - l2| = |n| lambda with foci
/// at the slits, evaluated at the screen.
inline double hyperbola_fringe(double d, double L, double lambda, std::int64_t n) {
  if (n == 0) return 0.0;
  const double a = 0.5 * std::abs(static_cast<double>(n)) * lambda;
  const double b2 = 0.25 * d * d - a * a;
  const double y = a * std::sqrt(1.0 + L * L / b2);
  return n > 0 ? -y : y;
}

/// Random integer vector with entries in [lo, hi].
inline IntVector random_integers(Index n, std::int64_t lo, std::int64_t hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> u(lo, hi);
  IntVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

inline Vector random_vector(Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

inline double relative_error(double a, double b) {
  const double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

}  // namespace gpath::testing
