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

#include <cmath>
#include <string>

#include "gpath/core.hpp"
#include "gpath/scc.hpp"
#include "gpath/spectral.hpp"

namespace gpath {

/// Row-space membership threshold: zero-mode projection <= kRowSpaceTol |J|.
inline constexpr double kRowSpaceTol = 1e-9;

struct PartitionResult {
  double log_magnitude = 0.0;  // ln |Z|
  double phase = 0.0;          // radians; zero in the Euclidean sector
  Index restricted_dimension = 0;
  double exponent_term = 0.0;  // sum' J~_j^2 / (2 a_j)
};

class SourceOutsideRowSpace : public DomainError {
 public:
  explicit SourceOutsideRowSpace(double leakage)
      : DomainError("source violates SCC / gauge-volume divergence: zero-mode projection " +
                    std::to_string(leakage)),
        leakage_(leakage) {}
  double leakage() const { return leakage_; }

 private:
  double leakage_;
};

class NonConvergentMode : public DomainError {
 public:
  NonConvergentMode(Index mode, double value)
      : DomainError("non-Gaussian-convergent mode " + std::to_string(mode) + " with eigenvalue " +
                    std::to_string(value)),
        mode_(mode) {}
  Index mode() const { return mode_; }

 private:
  Index mode_;
};

/// Components of J in the eigenbasis, zero modes included.
inline Vector project_source(const Vector& J, const Spectrum& s) {
  if (s.size() == 0 || J.size() != s[0].vector.size()) throw std::invalid_argument("source length does not match spectrum");
  Vector out(s.size());
  for (Index i = 0; i < s.size(); ++i) out(i) = s[i].vector.dot(J);
  return out;
}

/// Largest |<z, J>| over the zero modes z.
inline double zero_mode_leakage(const Vector& J, const Spectrum& s) {
  const Vector proj = project_source(J, s);
  double worst = 0.0;
  for (Index z : s.zero_modes) worst = std::max(worst, std::abs(proj(z)));
  return worst;
}

/// J with every zero-mode component removed.
inline Vector project_to_row_space(const Vector& J, const Spectrum& s) {
  Vector out = J;
  for (Index z : s.zero_modes) out -= s[z].vector.dot(J) * s[z].vector;
  return out;
}

inline void require_row_space(const Vector& J, const Spectrum& s) {
  const double leak = zero_mode_leakage(J, s);
  if (leak > kRowSpaceTol * J.norm()) throw SourceOutsideRowSpace(leak);
}

/// Gaussian partition function restricted to the row space of K:
///   ln Z = 1/2 sum' ln(2 pi / a_j) + sum' J~_j^2 / (2 a_j)
/// with primed sums over the nonzero modes. Evaluated in the log domain.
inline PartitionResult euclidean_Z(const Vector& J, const Spectrum& s) {
  require_row_space(J, s);
  const Vector proj = project_source(J, s);
  PartitionResult r;
  for (Index j = 0; j < s.size(); ++j) {
    if (s.is_zero_mode(j)) continue;
    const double a = s[j].value;
    if (!(a > 0.0)) throw NonConvergentMode(j, a);
    r.log_magnitude += 0.5 * std::log(kTwoPi / a);
    r.exponent_term += proj(j) * proj(j) / (2.0 * a);
    ++r.restricted_dimension;
  }
  r.log_magnitude += r.exponent_term;
  return r;
}

inline PartitionResult euclidean_Z(const SccSystem& sys, const Spectrum& s) { return euclidean_Z(sys.J, s); }

/// Density of finding mode k at Q_o:
///   sqrt(a_k / 2 pi) exp(-Q_o^2 a_k / 2 + J~_k Q_o - J~_k^2 / (2 a_k)).
inline double outcome_probability(const Vector& J, const Spectrum& s, Index k, double q) {
  if (k < 0 || k >= s.size()) throw std::invalid_argument("mode index out of range");
  if (s.is_zero_mode(k)) throw DomainError("probability undefined along gauge direction");
  const double a = s[k].value;
  if (!(a > 0.0)) throw NonConvergentMode(k, a);
  const double jk = s[k].vector.dot(J);
  return std::sqrt(a / kTwoPi) * std::exp(-0.5 * q * q * a + jk * q - jk * jk / (2.0 * a));
}

inline double outcome_probability(const SccSystem& sys, const Spectrum& s, Index k, double q) {
  return outcome_probability(sys.J, s, k, q);
}

/// Most probable field: the minimum-norm solution of K Q = J, i.e.
/// sum' (J~_j / a_j) |j>. Orthogonal to every zero mode.
inline Vector classical_solution(const Vector& J, const Spectrum& s) {
  require_row_space(J, s);
  Vector q = Vector::Zero(J.size());
  for (Index j = 0; j < s.size(); ++j) {
    if (s.is_zero_mode(j)) continue;
    q += (s[j].vector.dot(J) / s[j].value) * s[j].vector;
  }
  return q;
}

inline Vector classical_solution(const SccSystem& sys, const Spectrum& s) { return classical_solution(sys.J, s); }

}  // namespace gpath
