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
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gpath/chain_complex.hpp"
#include "gpath/core.hpp"

namespace gpath {

inline void require_degree(int degree) {
  if (degree != 1 && degree != 2) {
    throw std::invalid_argument("unsupported chain degree " + std::to_string(degree) +
                                " (expected 1 or 2)");
  }
}

/// d_n d_n^T in exact arithmetic.
inline IntMatrix exact_operator(const ChainComplex& c, int degree) {
  require_degree(degree);
  const IntMatrix& d = c.boundary(degree);
  return d * d.transpose();
}

/// K = beta * d_n d_n^T. Symmetric by construction.
inline Matrix build_operator(const ChainComplex& c, int degree, double beta) {
  require_degree(degree);
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  return beta * exact_operator(c, degree).cast<double>();
}

/// J = alpha * d_n e. For degree 1 the components sum to zero.
inline Vector build_source(const ChainComplex& c, int degree, const Vector& e, double alpha) {
  require_degree(degree);
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const IntMatrix& d = c.boundary(degree);
  if (e.size() != d.cols()) {
    throw std::invalid_argument("link vector has length " + std::to_string(e.size()) +
                                ", expected " + std::to_string(d.cols()));
  }
  return alpha * (d.cast<double>() * e);
}

inline IntVector exact_source(const ChainComplex& c, int degree, const IntVector& e) {
  require_degree(degree);
  const IntMatrix& d = c.boundary(degree);
  if (e.size() != d.cols()) throw std::invalid_argument("link vector length mismatch");
  return d * e;
}

/// Cell values one degree up: e = d_n^T v, i.e. e_link = v_head - v_tail
/// for degree 1.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> coboundary(const ChainComplex& c, int degree,
                                                                      const Eigen::MatrixBase<Derived>& v) {
  require_degree(degree);
  const IntMatrix& d = c.boundary(degree);
  if (v.size() != d.rows()) throw std::invalid_argument("cell vector length mismatch");
  return d.transpose().template cast<typename Derived::Scalar>() * v;
}

/// Operator, source and couplings of one self-consistent configuration.
struct SccSystem {
  int degree = 1;
  Couplings couplings;
  IntMatrix boundary;  // d_n
  Vector links;        // e, indexed by the n-cells
  Matrix K;
  Vector J;

  Index size() const { return K.rows(); }
};

inline SccSystem make_scc_system(const ChainComplex& c, int degree, const Vector& e, Couplings k) {
  k.validate();
  SccSystem s;
  s.degree = degree;
  s.couplings = k;
  s.boundary = c.boundary(degree);
  s.links = e;
  s.K = build_operator(c, degree, k.beta);
  s.J = build_source(c, degree, e, k.alpha);
  return s;
}

class SccViolation : public DomainError {
 public:
  SccViolation(const std::string& what, double max_residual)
      : DomainError(what + " (max residual " + format_residual(max_residual) + ")"),
        max_residual_(max_residual) {}

  double max_residual() const { return max_residual_; }

 private:
  static std::string format_residual(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", r);
    return buf;
  }
  double max_residual_;
};

struct SccReport {
  int degree = 1;
  std::vector<ValidationCheck> checks;
  double identity_residual = 0.0;
  double source_sum = 0.0;
  double gauge_residual = 0.0;
  Index null_dimension = 0;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
};

namespace detail {

inline std::string residual_text(double r) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", r);
  return buf;
}

inline const char* violation_text(int degree) {
  return degree == 1 ? "SCC violated: e not a vertex gradient" : "SCC violated: e not a coboundary of v";
}

}  // namespace detail

/// Orthonormal basis of {x : |Kx| <= tol |K| |x|}, K symmetric. Each vector
/// is sign-normalized so its largest-magnitude component is positive.
inline std::vector<Vector> null_space_basis(const Matrix& K, double tol = 1e-9) {
  std::vector<Vector> basis;
  if (K.rows() == 0) return basis;
  Eigen::SelfAdjointEigenSolver<Matrix> es(K);
  const Vector& vals = es.eigenvalues();
  const double scale = vals.cwiseAbs().maxCoeff();
  for (Index i = 0; i < vals.size(); ++i) {
    if (std::abs(vals(i)) <= tol * scale) {
      Vector v = es.eigenvectors().col(i);
      Index arg = 0;
      v.cwiseAbs().maxCoeff(&arg);
      if (v(arg) < 0) v = -v;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

/// Checks K v = (beta/alpha) J, the vanishing source divergence and the
/// constant zero mode. Throws SccViolation when the links stored in `sys`
/// are not the coboundary of `v`.
inline SccReport verify_scc(const SccSystem& sys, const Vector& v) {
  if (v.size() != sys.K.rows()) throw std::invalid_argument("vertex vector length mismatch");
  const double ratio = sys.couplings.beta / sys.couplings.alpha;
  const Vector lhs = sys.K * v;
  const Vector rhs = ratio * sys.J;
  const double residual = (lhs - rhs).cwiseAbs().maxCoeff();
  const double scale = std::max({1.0, lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff()});
  if (residual > 1e-12 * scale) throw SccViolation(detail::violation_text(sys.degree), residual);

  SccReport r;
  r.degree = sys.degree;
  r.identity_residual = residual;
  r.checks.push_back({"K v = (beta/alpha) J", true, detail::residual_text(residual)});
  if (sys.degree == 1) {
    r.source_sum = sys.J.sum();
    const double jscale = std::max(1.0, sys.J.lpNorm<1>());
    r.checks.push_back({"sum J = 0", std::abs(r.source_sum) <= 1e-12 * jscale,
                        detail::residual_text(std::abs(r.source_sum))});
    r.gauge_residual = (sys.K * Vector::Ones(sys.K.rows())).cwiseAbs().maxCoeff();
    r.checks.push_back({"K 1 = 0", r.gauge_residual <= 1e-12 * std::max(1.0, sys.K.cwiseAbs().maxCoeff()),
                        detail::residual_text(r.gauge_residual)});
  }
  r.null_dimension = static_cast<Index>(null_space_basis(sys.K).size());
  r.checks.push_back({"null space dimension", r.null_dimension >= 1, std::to_string(r.null_dimension)});
  return r;
}

/// Integer path: d d^T v == d e with no tolerance at all.
inline SccReport verify_scc_exact(const ChainComplex& c, int degree, const IntVector& e, const IntVector& v) {
  const IntMatrix L = exact_operator(c, degree);
  if (v.size() != L.rows()) throw std::invalid_argument("vertex vector length mismatch");
  const IntVector lhs = L * v;
  const IntVector rhs = exact_source(c, degree, e);
  const std::int64_t residual = (lhs - rhs).cwiseAbs().maxCoeff();
  if (residual != 0) throw SccViolation(detail::violation_text(degree), static_cast<double>(residual));

  SccReport r;
  r.degree = degree;
  r.checks.push_back({"K v = (beta/alpha) J", true, "0 (exact)"});
  if (degree == 1) {
    const std::int64_t sum = rhs.sum();
    r.source_sum = static_cast<double>(sum);
    r.checks.push_back({"sum J = 0", sum == 0, std::to_string(sum) + " (exact)"});
    const std::int64_t gauge = (L * IntVector::Ones(L.rows())).cwiseAbs().maxCoeff();
    r.gauge_residual = static_cast<double>(gauge);
    r.checks.push_back({"K 1 = 0", gauge == 0, std::to_string(gauge) + " (exact)"});
  }
  r.null_dimension = static_cast<Index>(null_space_basis(L.cast<double>()).size());
  r.checks.push_back({"null space dimension", r.null_dimension >= 1, std::to_string(r.null_dimension)});
  return r;
}

}  // namespace gpath
