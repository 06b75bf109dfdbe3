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
#include <cstdint>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "gpath/partition.hpp"

namespace gpath {

enum class OracleMethod { quadrature, montecarlo };

inline constexpr Index kMaxQuadratureDimension = 6;

struct OracleOptions {
  OracleMethod method = OracleMethod::quadrature;
  std::size_t budget = 32;  // nodes per axis (quadrature) or samples (Monte Carlo)
  std::uint64_t seed = 1;
  double target_error = 1e-6;  // on ln Z; exceeding it raises the warning flag
  unsigned threads = 0;        // 0 selects the hardware concurrency
};

struct OracleEstimate {
  PartitionResult result;
  double error_estimate = 0.0;  // absolute, on ln Z
  bool precision_warning = false;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
};

struct QuadratureRule {
  Vector nodes;
  Vector weights;
};

/// n-point Gauss-Hermite rule for the weight exp(-x^2) (Golub-Welsch).
inline QuadratureRule gauss_hermite(Index n) {
  if (n < 1) throw std::invalid_argument("quadrature needs at least one node");
  Matrix jacobi = Matrix::Zero(n, n);
  for (Index k = 1; k < n; ++k) jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Matrix> es(jacobi);
  QuadratureRule rule{es.eigenvalues(), Vector(n)};
  const double sqrt_pi = std::sqrt(kPi);
  for (Index k = 0; k < n; ++k) rule.weights(k) = sqrt_pi * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
  return rule;
}

namespace detail {

/// Row-space coordinates of the action, built from a pivoted QR of K so the
/// oracle shares nothing with the eigen route.
struct ReducedAction {
  Matrix M;  // B^T K B
  Vector c;  // B^T J
};

inline ReducedAction reduce_to_row_space(const Matrix& K, const Vector& J, Index expected_rank) {
  Eigen::ColPivHouseholderQR<Matrix> qr(K);
  qr.setThreshold(1e-9);
  const Index rank = qr.rank();
  if (rank != expected_rank) {
    throw DomainError("row-space rank " + std::to_string(rank) + " disagrees with spectrum (" +
                      std::to_string(expected_rank) + ")");
  }
  const Matrix Q = qr.householderQ();
  const Matrix B = Q.leftCols(rank);
  ReducedAction out;
  out.M = B.transpose() * K * B;
  out.M = 0.5 * (out.M + out.M.transpose()).eval();
  out.c = B.transpose() * J;
  return out;
}

/// ln of the tensor-product Gauss-Hermite estimate of
/// int exp(-y^T M y / 2 + c^T y) dy with per-axis scaling y_i = s_i x_i.
inline double quadrature_log_integral(const ReducedAction& a, Index nodes, std::size_t& evaluations) {
  const Index d = a.M.rows();
  const QuadratureRule rule = gauss_hermite(nodes);
  Vector scale(d);
  for (Index i = 0; i < d; ++i) {
    if (!(a.M(i, i) > 0.0)) throw DomainError("reduced action is not positive definite");
    scale(i) = std::sqrt(2.0 / a.M(i, i));
  }
  // Exponent contributions beyond the diagonal, which the weight absorbs.
  Matrix coupling = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < i; ++j) coupling(i, j) = a.M(i, j) * scale(i) * scale(j);
  Vector linear = a.c.cwiseProduct(scale);

  std::vector<double> point(static_cast<std::size_t>(d), 0.0);
  // Hierarchical summation: each level sums its own axis.
  auto level = [&](auto&& self, Index depth, double exponent) -> double {
    double sum = 0.0;
    for (Index k = 0; k < nodes; ++k) {
      const double x = rule.nodes(k);
      double e = exponent + linear(depth) * x;
      for (Index i = 0; i < depth; ++i) e -= coupling(depth, i) * point[static_cast<std::size_t>(i)] * x;
      point[static_cast<std::size_t>(depth)] = x;
      if (depth + 1 == d) {
        sum += rule.weights(k) * std::exp(e);
        ++evaluations;
      } else {
        sum += rule.weights(k) * self(self, depth + 1, e);
      }
    }
    return sum;
  };
  const double integral = d == 0 ? 1.0 : level(level, 0, 0.0);
  return std::log(integral) + scale.array().log().sum();
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct BlockMoments {
  double shift = -std::numeric_limits<double>::infinity();
  double s1 = 0.0;  // sum exp(lw - shift)
  double s2 = 0.0;  // sum exp(2 (lw - shift))
  std::size_t count = 0;
};

inline BlockMoments merge(const BlockMoments& a, const BlockMoments& b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  BlockMoments m;
  m.shift = std::max(a.shift, b.shift);
  const double fa = std::exp(a.shift - m.shift), fb = std::exp(b.shift - m.shift);
  m.s1 = a.s1 * fa + b.s1 * fb;
  m.s2 = a.s2 * fa * fa + b.s2 * fb * fb;
  m.count = a.count + b.count;
  return m;
}

/// Pairwise reduction in block order: independent of how blocks were
/// distributed over threads.
inline BlockMoments reduce_pairwise(const std::vector<BlockMoments>& blocks, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return blocks[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return merge(reduce_pairwise(blocks, lo, mid), reduce_pairwise(blocks, mid, hi));
}

inline constexpr std::size_t kMonteCarloBlock = 4096;

/// Importance-sampled estimate of the same integral. Proposal: N(0, (tau M)^-1)
/// with tau = 1/2, wider than the target in every direction.
inline double montecarlo_log_integral(const ReducedAction& a, const OracleOptions& opt, double& log_error) {
  const Index d = a.M.rows();
  constexpr double tau = 0.5;
  Eigen::LLT<Matrix> llt(a.M);
  if (llt.info() != Eigen::Success) throw DomainError("reduced action is not positive definite");
  const Matrix U = llt.matrixU();  // M = U^T U
  double log_det_m = 0.0;
  for (Index i = 0; i < d; ++i) log_det_m += 2.0 * std::log(U(i, i));
  const double log_norm = 0.5 * static_cast<double>(d) * std::log(kTwoPi) -
                          0.5 * (static_cast<double>(d) * std::log(tau) + log_det_m);

  const std::size_t samples = opt.budget;
  const std::size_t n_blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<BlockMoments> blocks(n_blocks);

  auto run_block = [&](std::size_t b) {
    std::mt19937_64 rng(splitmix64(opt.seed ^ splitmix64(b + 1)));
    std::normal_distribution<double> normal;
    const std::size_t begin = b * kMonteCarloBlock;
    const std::size_t end = std::min(samples, begin + kMonteCarloBlock);
    std::vector<double> lw(end - begin);
    Vector z(d);
    for (std::size_t s = begin; s < end; ++s) {
      for (Index i = 0; i < d; ++i) z(i) = normal(rng);
      const Vector y = U.triangularView<Eigen::Upper>().solve(z) / std::sqrt(tau);
      const double zz = z.squaredNorm();
      // ln f(y) - ln p(y) with y^T M y = |z|^2 / tau.
      lw[s - begin] = -0.5 * zz / tau + a.c.dot(y) + 0.5 * zz + log_norm;
    }
    BlockMoments m;
    m.shift = *std::max_element(lw.begin(), lw.end());
    for (double w : lw) {
      const double r = std::exp(w - m.shift);
      m.s1 += r;
      m.s2 += r * r;
    }
    m.count = lw.size();
    blocks[b] = m;
  };

  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n_blocks, 1)));
  if (threads <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t b = t; b < n_blocks; b += threads) run_block(b);
      });
    }
  }

  const BlockMoments total = reduce_pairwise(blocks, 0, n_blocks);
  const double n = static_cast<double>(total.count);
  const double mean = total.s1 / n;
  const double var = std::max(0.0, total.s2 / n - mean * mean) * n / std::max(1.0, n - 1.0);
  log_error = std::sqrt(var / n) / mean;
  return std::log(mean) + total.shift;
}

}  // namespace detail

/// Brute-force evaluation of the row-space Gaussian integral, independent of
/// the closed form: a pivoted-QR basis of the row space replaces the
/// eigenbasis. Quadrature runs a tensor-product Gauss-Hermite grid with
/// `budget` nodes per axis and compares against a coarser grid for its error
/// estimate; Monte Carlo reports one standard error.
inline OracleEstimate brute_force_Z(const SccSystem& sys, const Spectrum& s, const OracleOptions& opt) {
  const Index r = s.size() - static_cast<Index>(s.zero_modes.size());
  if (opt.method == OracleMethod::quadrature && r > kMaxQuadratureDimension) {
    throw std::invalid_argument("quadrature oracle supports at most " + std::to_string(kMaxQuadratureDimension) +
                                " row-space coordinates (got " + std::to_string(r) + ")");
  }
  if (opt.budget < 2) throw std::invalid_argument("oracle budget must be at least 2");
  require_row_space(sys.J, s);
  const detail::ReducedAction action = detail::reduce_to_row_space(sys.K, sys.J, r);

  OracleEstimate out;
  out.seed = opt.seed;
  out.result.restricted_dimension = r;
  if (opt.method == OracleMethod::quadrature) {
    const Index fine = static_cast<Index>(opt.budget);
    const Index coarse = std::max<Index>(2, fine - fine / 4);
    out.result.log_magnitude = detail::quadrature_log_integral(action, fine, out.evaluations);
    std::size_t extra = 0;
    const double coarse_value = detail::quadrature_log_integral(action, coarse, extra);
    out.evaluations += extra;
    out.error_estimate = std::abs(out.result.log_magnitude - coarse_value);
  } else {
    out.result.log_magnitude = detail::montecarlo_log_integral(action, opt, out.error_estimate);
    out.evaluations = opt.budget;
  }
  out.precision_warning = !(out.error_estimate <= opt.target_error);

  Eigen::LLT<Matrix> llt(action.M);
  double log_det = 0.0;
  for (Index i = 0; i < r; ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
  out.result.exponent_term =
      out.result.log_magnitude - 0.5 * (static_cast<double>(r) * std::log(kTwoPi) - log_det);
  return out;
}

}  // namespace gpath
