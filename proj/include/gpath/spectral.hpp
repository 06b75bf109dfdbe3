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

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gpath/chain_complex.hpp"
#include "gpath/core.hpp"

namespace gpath {

/// Relative threshold |a| <= kZeroModeTol * max|a| that classifies a zero mode.
inline constexpr double kZeroModeTol = 1e-9;

enum class Parity { symmetric, antisymmetric, mixed };
enum class Regime { euclidean, lorentzian };

inline const char* to_string(Parity p) {
  switch (p) {
    case Parity::symmetric: return "symmetric";
    case Parity::antisymmetric: return "antisymmetric";
    default: return "mixed";
  }
}

inline const char* to_string(Regime r) { return r == Regime::euclidean ? "euclidean" : "lorentzian"; }

struct Eigenpair {
  double value = 0.0;
  Vector vector;
  Parity parity = Parity::mixed;
  Index wavenumber = -1;  // j of the closed form, -1 when unknown
};

/// Eigensystem of a ladder operator with zero-mode and degeneracy
/// bookkeeping. Pairs are kept in ascending eigenvalue order.
struct Spectrum {
  Regime regime = Regime::euclidean;
  double scale = 1.0;  // beta the operator was built with
  std::vector<Eigenpair> pairs;
  std::vector<Index> zero_modes;
  std::vector<std::vector<Index>> degeneracy_groups;

  Index size() const { return static_cast<Index>(pairs.size()); }
  const Eigenpair& operator[](Index i) const { return pairs[static_cast<std::size_t>(i)]; }

  Vector values() const {
    Vector v(size());
    for (Index i = 0; i < size(); ++i) v(i) = (*this)[i].value;
    return v;
  }

  Matrix vectors() const {
    if (pairs.empty()) return {};
    Matrix m(pairs.front().vector.size(), size());
    for (Index i = 0; i < size(); ++i) m.col(i) = (*this)[i].vector;
    return m;
  }

  bool is_zero_mode(Index i) const {
    return std::find(zero_modes.begin(), zero_modes.end(), i) != zero_modes.end();
  }

  /// More than the single gauge direction has zero eigenvalue.
  bool singular() const { return zero_modes.size() > 1; }
};

/// Partition of ascending values into runs whose consecutive gaps are at
/// most rel_tol * max|value|.
inline std::vector<std::vector<Index>> group_degenerate(const Vector& sorted_values, double rel_tol) {
  std::vector<std::vector<Index>> groups;
  if (sorted_values.size() == 0) return groups;
  const double tol = rel_tol * sorted_values.cwiseAbs().maxCoeff();
  groups.push_back({0});
  for (Index i = 1; i < sorted_values.size(); ++i) {
    if (sorted_values(i) - sorted_values(i - 1) <= tol) groups.back().push_back(i);
    else groups.push_back({i});
  }
  return groups;
}

namespace detail {

inline void finalize(Spectrum& s) {
  std::stable_sort(s.pairs.begin(), s.pairs.end(), [](const Eigenpair& a, const Eigenpair& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.parity != b.parity) return a.parity < b.parity;
    return a.wavenumber < b.wavenumber;
  });
  const Vector vals = s.values();
  const double top = vals.size() ? vals.cwiseAbs().maxCoeff() : 0.0;
  s.zero_modes.clear();
  for (Index i = 0; i < vals.size(); ++i)
    if (std::abs(vals(i)) <= kZeroModeTol * top) s.zero_modes.push_back(i);
  s.degeneracy_groups = group_degenerate(vals, kZeroModeTol);
}

inline Parity classify_parity(const Vector& v, double tol) {
  if (v.size() % 2 != 0) return Parity::mixed;
  const Index h = v.size() / 2;
  if ((v.head(h) - v.tail(h)).norm() <= tol) return Parity::symmetric;
  if ((v.head(h) + v.tail(h)).norm() <= tol) return Parity::antisymmetric;
  return Parity::mixed;
}

}  // namespace detail

/// Rail half-vector of wavenumber j: sqrt(2/N) cos(j(2k-1)pi/N), or the
/// constant sqrt(1/N) for j = 0.
inline Vector ladder_half_vector(Index n_vertices, Index j) {
  const Index half = n_vertices / 2;
  const double n = static_cast<double>(n_vertices);
  Vector x(half);
  for (Index k = 1; k <= half; ++k) {
    x(k - 1) = j == 0 ? std::sqrt(1.0 / n)
                      : std::sqrt(2.0 / n) * std::cos(static_cast<double>(j * (2 * k - 1)) * kPi / n);
  }
  return x;
}

/// Exact eigensystem of beta * d1 d1^T on the N-vertex ladder.
///
/// For j = 0 .. N/2-1 with lambda_j = 3 - 2 cos(2 pi j / N):
///   [x_j;  x_j]  has eigenvalue beta (lambda_j - 1) = 4 beta sin^2(pi j / N)
///   [x_j; -x_j]  has eigenvalue beta (lambda_j + 1) = beta (2 + 4 sin^2(pi j / N))
/// The sin^2 forms are used so the j = 0 zero mode is exactly zero.
inline Spectrum ladder_spectrum_closed_form(Index n_vertices, double beta = 1.0) {
  require_ladder_size(n_vertices);
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  const Index half = n_vertices / 2;
  Spectrum s;
  s.regime = Regime::euclidean;
  s.scale = beta;
  s.pairs.reserve(static_cast<std::size_t>(n_vertices));
  for (Index j = 0; j < half; ++j) {
    const double sn = std::sin(kPi * static_cast<double>(j) / static_cast<double>(n_vertices));
    const Vector x = ladder_half_vector(n_vertices, j);
    Vector sym(n_vertices), anti(n_vertices);
    sym << x, x;
    anti << x, -x;
    s.pairs.push_back({beta * 4.0 * sn * sn, std::move(sym), Parity::symmetric, j});
    s.pairs.push_back({beta * (2.0 + 4.0 * sn * sn), std::move(anti), Parity::antisymmetric, j});
  }
  detail::finalize(s);
  return s;
}

/// Dense symmetric eigensolve. Rejects inputs whose asymmetry exceeds
/// 1e-12 |K|. Degenerate eigenspaces are rotated onto rail-swap eigenvectors;
/// parity tags are assigned when a vector is (anti)symmetric
/// across the two rails to 1e-8, otherwise `mixed`.
inline Spectrum numeric_spectrum(const Matrix& K, double scale = 1.0) {
  if (K.rows() != K.cols()) throw std::invalid_argument("operator must be square");
  const double norm = K.norm();
  const double asym = (K - K.transpose()).norm();
  if (asym > 1e-12 * std::max(norm, 1e-300)) {
    throw std::invalid_argument("operator is not symmetric (asymmetry " + std::to_string(asym) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(K);
  if (es.info() != Eigen::Success) throw DomainError("symmetric eigensolve did not converge");
  Matrix vectors = es.eigenvectors();
  if (K.rows() % 2 == 0) {
    // Rotate each degenerate eigenspace onto eigenvectors of the rail swap.
    const Index h = K.rows() / 2;
    for (const auto& group : group_degenerate(es.eigenvalues(), kZeroModeTol)) {
      if (group.size() < 2) continue;
      Matrix V(K.rows(), static_cast<Index>(group.size()));
      for (std::size_t c = 0; c < group.size(); ++c) V.col(static_cast<Index>(c)) = vectors.col(group[c]);
      Matrix swapped(V.rows(), V.cols());
      swapped.topRows(h) = V.bottomRows(h);
      swapped.bottomRows(h) = V.topRows(h);
      const Matrix overlap = V.transpose() * swapped;
      Eigen::SelfAdjointEigenSolver<Matrix> rot(0.5 * (overlap + overlap.transpose()));
      const Matrix rotated = V * rot.eigenvectors();
      for (std::size_t c = 0; c < group.size(); ++c) vectors.col(group[c]) = rotated.col(static_cast<Index>(c));
    }
  }
  Spectrum s;
  s.scale = scale;
  for (Index i = 0; i < K.rows(); ++i) {
    Vector v = vectors.col(i);
    const Parity p = detail::classify_parity(v, 1e-8);
    s.pairs.push_back({es.eigenvalues()(i), std::move(v), p, -1});
  }
  detail::finalize(s);
  return s;
}

/// [[I, -I], [-I, I]] on the two rails.
inline Matrix rail_exchange_block(Index n_vertices) {
  const Index h = n_vertices / 2;
  Matrix m = Matrix::Zero(n_vertices, n_vertices);
  m.topLeftCorner(h, h).setIdentity();
  m.bottomRightCorner(h, h).setIdentity();
  m.topRightCorner(h, h) = -Matrix::Identity(h, h);
  m.bottomLeftCorner(h, h) = -Matrix::Identity(h, h);
  return m;
}

/// Lorentzian operator K_M = K - 2 beta [[I, -I], [-I, I]], the image of the
/// Euclidean ladder operator under dt -> i dtau.
inline Matrix lorentzian_operator(const Matrix& euclidean_K, double beta) {
  return euclidean_K - 2.0 * beta * rail_exchange_block(euclidean_K.rows());
}

/// Applies Lambda -> Lambda - 4 beta to the antisymmetric pairs and
/// recomputes zero modes. An extra zero mode appears exactly when N = 0 mod 4.
inline Spectrum continue_to_lorentzian(const Spectrum& s, Index n_vertices) {
  require_ladder_size(n_vertices);
  if (s.regime != Regime::euclidean) throw std::invalid_argument("spectrum is already Lorentzian");
  Spectrum out = s;
  out.regime = Regime::lorentzian;
  for (Eigenpair& p : out.pairs) {
    if (p.vector.size() != n_vertices) throw std::invalid_argument("spectrum size does not match vertex count");
    if (p.parity == Parity::mixed) {
      throw std::invalid_argument("continuation needs rail-parity tagged eigenvectors");
    }
    if (p.parity != Parity::antisymmetric) continue;
    p.value = 4 * p.wavenumber == n_vertices ? 0.0 : p.value - 4.0 * s.scale;
  }
  detail::finalize(out);
  return out;
}

/// sin of the largest principal angle between the column spans of two
/// matrices with orthonormal columns of the same count.
inline double max_principal_angle_sine(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("subspace shape mismatch");
  const Matrix residual = b - a * (a.transpose() * b);
  Eigen::JacobiSVD<Matrix> svd(residual);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

struct SpectrumComparison {
  double max_relative_eigenvalue_error = 0.0;  // |a_i - b_i| / max|a|
  double max_subspace_angle_sine = 0.0;
};

/// Compares two spectra of the same operator index by index, grouping the
/// first spectrum's values with `group_tol` and comparing eigenspaces rather
/// than individual vectors inside each group.
inline SpectrumComparison compare_spectra(const Spectrum& a, const Spectrum& b, double group_tol = 1e-6) {
  if (a.size() != b.size()) throw std::invalid_argument("spectra differ in size");
  SpectrumComparison out;
  const Vector va = a.values(), vb = b.values();
  const double top = std::max(va.cwiseAbs().maxCoeff(), 1e-300);
  out.max_relative_eigenvalue_error = (va - vb).cwiseAbs().maxCoeff() / top;
  const Matrix ma = a.vectors(), mb = b.vectors();
  for (const auto& g : group_degenerate(va, group_tol)) {
    const Index first = g.front(), count = static_cast<Index>(g.size());
    out.max_subspace_angle_sine = std::max(
        out.max_subspace_angle_sine, max_principal_angle_sine(ma.middleCols(first, count), mb.middleCols(first, count)));
  }
  return out;
}

}  // namespace gpath
