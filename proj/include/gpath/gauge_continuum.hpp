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

#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "gpath/core.hpp"

namespace gpath::continuum {

using Matrix4 = Eigen::Matrix4d;
using Vector4 = Eigen::Vector4d;
using Matrix10 = Eigen::Matrix<double, 10, 10>;
using Vector10 = Eigen::Matrix<double, 10, 1>;

/// Metric eta_{ab} with signature (+,-,-,-). Self-inverse.
inline Matrix4 metric() { return Vector4(1.0, -1.0, -1.0, -1.0).asDiagonal(); }

/// Momentum with contravariant components k^0 .. k^3.
struct FourVector {
  Vector4 up = Vector4::Zero();

  FourVector() = default;
  FourVector(double k0, double k1, double k2, double k3) : up(k0, k1, k2, k3) {}
  explicit FourVector(const Vector4& v) : up(v) {}

  Vector4 lower() const { return metric() * up; }
  double square() const { return up.dot(lower()); }
};

/// K_{ab}(k) = -k^2 eta_{ab} + k_a k_b, the image of d^2 eta_{ab} - d_a d_b
/// under d -> i k. Acts on a contravariant potential A^b.
inline Matrix4 maxwell_kernel(const FourVector& k) {
  const Vector4 kl = k.lower();
  return -k.square() * metric() + kl * kl.transpose();
}

/// Linearized Einstein kinetic operator on a symmetric h_{ab} (all indices
/// down), momentum space:
///   G_{mn} = k^2 h_{mn} - k_m (k.h)_n - k_n (k.h)_m + k_m k_n h
///            + eta_{mn} (k.h.k - k^2 h)
/// with (k.h)_n = k^a h_{an} and h = eta^{ab} h_{ab}. Annihilates
/// k_a e_b + k_b e_a and its output is transverse, k^m G_{mn} = 0.
inline Matrix4 fierz_pauli_apply(const FourVector& k, const Matrix4& h) {
  const Matrix4 eta = metric();
  const Vector4 kl = k.lower();
  const double k2 = k.square();
  const Vector4 kh = h.transpose() * k.up;  // k^a h_{an}
  const double khk = k.up.dot(h * k.up);
  const double trace = (eta * h).trace();
  return k2 * h - kl * kh.transpose() - kh * kl.transpose() + trace * (kl * kl.transpose()) +
         (khk - k2 * trace) * eta;
}

/// Orthonormal (Frobenius) coordinates of a symmetric 4x4 matrix: the four
/// diagonal entries, then sqrt(2) h_{ab} for a < b.
inline Vector10 to_coordinates(const Matrix4& h) {
  Vector10 v;
  Index n = 0;
  for (Index a = 0; a < 4; ++a) v(n++) = h(a, a);
  for (Index a = 0; a < 4; ++a)
    for (Index b = a + 1; b < 4; ++b) v(n++) = std::sqrt(2.0) * 0.5 * (h(a, b) + h(b, a));
  return v;
}

inline Matrix4 from_coordinates(const Vector10& v) {
  Matrix4 h = Matrix4::Zero();
  Index n = 0;
  for (Index a = 0; a < 4; ++a) h(a, a) = v(n++);
  for (Index a = 0; a < 4; ++a)
    for (Index b = a + 1; b < 4; ++b) h(a, b) = h(b, a) = v(n++) / std::sqrt(2.0);
  return h;
}

/// Matrix of fierz_pauli_apply in the coordinates of to_coordinates.
inline Matrix10 fierz_pauli_kernel(const FourVector& k) {
  Matrix10 m;
  for (Index i = 0; i < 10; ++i) {
    Vector10 e = Vector10::Zero();
    e(i) = 1.0;
    m.col(i) = to_coordinates(fierz_pauli_apply(k, from_coordinates(e)));
  }
  return m;
}

/// Pure-gauge perturbation k_a e_b + k_b e_a for a covariant e.
inline Matrix4 gauge_perturbation(const FourVector& k, const Vector4& epsilon_lower) {
  const Vector4 kl = k.lower();
  return kl * epsilon_lower.transpose() + epsilon_lower * kl.transpose();
}

/// h'^{ab} h_{ab}, the Lorentzian pairing of symmetric tensors.
inline double lorentz_pairing(const Matrix4& a, const Matrix4& b) {
  const Matrix4 eta = metric();
  return (eta * a * eta).cwiseProduct(b).sum();
}

/// |K d| / (|K| |d|) with Frobenius norms.
template <typename MatrixT, typename VectorT>
double null_residual(const MatrixT& kernel, const VectorT& direction) {
  const double dn = direction.norm();
  if (!(dn > 0.0)) throw std::invalid_argument("null residual needs a nonzero direction");
  const double kn = kernel.norm();
  if (!(kn > 0.0)) return 0.0;
  return (kernel * direction).norm() / (kn * dn);
}

/// |k^a (K A)_a| / (|K| |A| |k|).
inline double maxwell_transverse_residual(const FourVector& k, const Vector4& potential) {
  const Matrix4 K = maxwell_kernel(k);
  const double scale = K.norm() * potential.norm() * k.up.norm();
  return scale > 0.0 ? std::abs(k.up.dot(K * potential)) / scale : 0.0;
}

/// |k^m G_{mn}| / (|G| |h| |k|) with |G| the operator norm in coordinates.
inline double fierz_pauli_transverse_residual(const FourVector& k, const Matrix4& h) {
  const Matrix4 G = fierz_pauli_apply(k, h);
  const double scale = fierz_pauli_kernel(k).norm() * h.norm() * k.up.norm();
  return scale > 0.0 ? (G.transpose() * k.up).norm() / scale : 0.0;
}

}  // namespace gpath::continuum
