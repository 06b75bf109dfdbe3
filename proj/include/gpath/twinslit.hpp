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
#include <cstdint>
#include <string>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

#include "gpath/chain_complex.hpp"
#include "gpath/core.hpp"
#include "gpath/partition.hpp"
#include "gpath/scc.hpp"
#include "gpath/spectral.hpp"

namespace gpath {

/// A nonzero source component along a Lorentzian zero mode beyond the gauge
/// direction. The magnitude of Z and its phase are undefined there.
class ZeroModeObstruction : public DomainError {
 public:
  ZeroModeObstruction(Index wavenumber, double projection)
      : DomainError("K_M zero-mode obstruction at j=" + std::to_string(wavenumber) + " (source projection " +
                    std::to_string(projection) + ")"),
        wavenumber_(wavenumber) {}
  Index wavenumber() const { return wavenumber_; }

 private:
  Index wavenumber_;
};

/// Phi = sum_i J~_i^2 / (2 a_i hbar beta) over the supplied modes. The a_i
/// are eigenvalues of the dimensionless operator d1 d1^T (or its Lorentzian
/// continuation); beta enters only through the explicit factor.
inline double phase_exponent(const Vector& projected, const Vector& eigenvalues, double hbar, double beta) {
  if (projected.size() != eigenvalues.size()) throw std::invalid_argument("projection and eigenvalue counts differ");
  const double top = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  double phi = 0.0;
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    if (std::abs(eigenvalues(i)) <= kZeroModeTol * top) {
      throw std::invalid_argument("zero eigenvalue at position " + std::to_string(i) + " in phase exponent");
    }
    phi += projected(i) * projected(i) / (2.0 * eigenvalues(i) * hbar * beta);
  }
  return phi;
}

/// Projection route for Phi: projects J onto the spectrum, drops zero modes
/// after checking the source has no component along them, and rescales the
/// eigenvalues by 1/s.scale.
inline double phase_from_spectrum(const Vector& J, const Spectrum& s, double hbar, double beta) {
  const Vector proj = project_source(J, s);
  const double tol = kRowSpaceTol * J.norm();
  Vector kept_proj(s.size()), kept_vals(s.size());
  Index m = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s.is_zero_mode(i)) {
      if (std::abs(proj(i)) > tol) throw ZeroModeObstruction(s[i].wavenumber, proj(i));
      continue;
    }
    kept_proj(m) = proj(i);
    kept_vals(m) = s[i].value / s.scale;
    ++m;
  }
  return phase_exponent(kept_proj.head(m), kept_vals.head(m), hbar, beta);
}

struct PhaseDecomposition {
  double phi_S = 0.0;   // spatial links only
  double phi_T = 0.0;   // temporal links only
  double phi_ST = 0.0;  // mixed
  double total = 0.0;   // (phi_S + phi_T + phi_ST) / (2 hbar beta)
  Regime regime = Regime::euclidean;
};

/// Closed-form parts of Phi for ladder links in canonical order.
///
/// With S = sum of spatial links, T_k = e_k + e_{k+N/2-1} and
/// D_k = e_k - e_{k+N/2-1} (left and right rail link k):
///   phi_S  = s (2 a^2 / N) S^2                                   s = +1 / -1
///   phi_T  = (2 a^2 / N) sum_j [sum_k T_k sin(2 pi j k / N)]^2
///   phi_ST = sum_j 4 a^2 / (N (s + 2 sin^2(j pi / N)))
///            [sin(j pi / N) sum_k D_k sin(2 pi j k / N) + sum_k e_{N+k-2} cos((2k-1) j pi / N)]^2
/// where s is +1 in the Euclidean sector and -1 in the Lorentzian one. In the
/// Lorentzian sector the j = N/4 term has a vanishing denominator; it is
/// dropped when its bracket vanishes and raises ZeroModeObstruction otherwise.
inline PhaseDecomposition phase_decomposition(const Vector& links, Index n_vertices, const Couplings& k,
                                              Regime regime) {
  require_ladder_size(n_vertices);
  k.validate();
  const Index half = n_vertices / 2;
  if (links.size() != 3 * half - 2) {
    throw std::invalid_argument("link vector has length " + std::to_string(links.size()) + ", expected " +
                                std::to_string(3 * half - 2));
  }
  const double n = static_cast<double>(n_vertices);
  const double a2 = k.alpha * k.alpha;
  const double sign = regime == Regime::euclidean ? 1.0 : -1.0;
  const auto left = [&](Index kk) { return links(kk - 1); };              // e_k
  const auto right = [&](Index kk) { return links(kk + half - 2); };      // e_{k+N/2-1}
  const auto rung = [&](Index kk) { return links(kk + n_vertices - 3); }; // e_{k+N-2}

  PhaseDecomposition out;
  out.regime = regime;
  double spatial_sum = 0.0;
  for (Index kk = 1; kk <= half; ++kk) spatial_sum += rung(kk);
  out.phi_S = sign * 2.0 * a2 / n * spatial_sum * spatial_sum;

  const double link_scale = links.size() ? links.norm() : 0.0;
  for (Index j = 1; j < half; ++j) {
    const double sj = std::sin(static_cast<double>(j) * kPi / n);
    double t = 0.0, d = 0.0, c = 0.0;
    for (Index kk = 1; kk < half; ++kk) {
      const double s = std::sin(kTwoPi * static_cast<double>(j * kk) / n);
      t += (left(kk) + right(kk)) * s;
      d += (left(kk) - right(kk)) * s;
    }
    for (Index kk = 1; kk <= half; ++kk) c += rung(kk) * std::cos(static_cast<double>((2 * kk - 1) * j) * kPi / n);
    out.phi_T += 2.0 * a2 / n * t * t;

    const double bracket = sj * d + c;
    if (regime == Regime::lorentzian && 4 * j == n_vertices) {
      if (std::abs(bracket) > kRowSpaceTol * link_scale) throw ZeroModeObstruction(j, bracket);
      continue;
    }
    out.phi_ST += 4.0 * a2 / (n * (sign + 2.0 * sj * sj)) * bracket * bracket;
  }
  out.total = (out.phi_S + out.phi_T + out.phi_ST) / (2.0 * k.hbar * k.beta);
  return out;
}

/// Ladder links with every temporal link e_T and every spatial link e_x.
inline Vector uniform_links(Index n_vertices, double e_temporal, double e_spatial) {
  require_ladder_size(n_vertices);
  Vector e(3 * n_vertices / 2 - 2);
  e.head(n_vertices - 2).setConstant(e_temporal);
  e.tail(n_vertices / 2).setConstant(e_spatial);
  return e;
}

struct TrigLemmaReport {
  Index n_vertices = 0;
  double max_sine_sum_error = 0.0;       // sum_k sin(2 pi j k / N) vs {0, cot(j pi / N)}
  double max_cot_square_error = 0.0;     // relative, sum_k cot^2((2k-1) pi / (4n)) vs 2n^2 - n
  double composite = 0.0;                // sum_j [sum_k sin]^2
  double composite_expected = 0.0;       // ((N-2)/4)(N/2)
  double composite_relative_error = 0.0;

  bool passed(double tol = 1e-9) const {
    return max_sine_sum_error <= tol && max_cot_square_error <= tol && composite_relative_error <= tol;
  }
};

/// Checks the two trigonometric identities behind the uniform-link
/// temporal phase and their composite, by direct summation. The sine sums
/// run over k, j = 1 .. N/2-1; the cotangent identity is checked for
/// n = 1 .. N/2.
inline TrigLemmaReport trig_lemmas(Index n_vertices) {
  require_ladder_size(n_vertices);
  const Index half = n_vertices / 2;
  const double n = static_cast<double>(n_vertices);
  TrigLemmaReport r;
  r.n_vertices = n_vertices;
  for (Index j = 1; j < half; ++j) {
    double inner = 0.0;
    for (Index kk = 1; kk < half; ++kk) inner += std::sin(kTwoPi * static_cast<double>(j * kk) / n);
    const double expected = j % 2 == 0 ? 0.0 : 1.0 / std::tan(static_cast<double>(j) * kPi / n);
    r.max_sine_sum_error = std::max(r.max_sine_sum_error, std::abs(inner - expected) / std::max(1.0, std::abs(expected)));
    r.composite += inner * inner;
  }
  r.composite_expected = (n - 2.0) / 4.0 * (n / 2.0);
  r.composite_relative_error = std::abs(r.composite - r.composite_expected) / r.composite_expected;
  for (Index m = 1; m <= half; ++m) {
    double sum = 0.0;
    for (Index kk = 1; kk <= m; ++kk) {
      const double t = std::tan(kPi / 2.0 * static_cast<double>(2 * kk - 1) / static_cast<double>(2 * m));
      sum += 1.0 / (t * t);
    }
    const double expected = static_cast<double>(2 * m * m - m);
    r.max_cot_square_error = std::max(r.max_cot_square_error, std::abs(sum - expected) / expected);
  }
  return r;
}

/// h = 2 pi hbar; alpha = h / lambda_hat, beta = h / lambda_hat^2, giving
/// alpha^2 / (hbar beta) = 2 pi.
inline Couplings calibrated_couplings(double lambda_hat, double hbar = 1.0) {
  if (!(lambda_hat > 0.0) || !(hbar > 0.0)) throw std::invalid_argument("lambda_hat and hbar must be positive");
  const double h = kTwoPi * hbar;
  return {h / lambda_hat, h / (lambda_hat * lambda_hat), hbar};
}

/// One of the two coherent graphs: shared N and temporal link, own spatial link.
struct SlitGraph {
  Index n_vertices = 0;
  double e_temporal = 0.0;
  double e_spatial = 0.0;
};

struct TwinSlitConfig {
  Index n_vertices = 0;
  double e_x = 0.0;        // spatial links of graph 1
  double e_x_tilde = 0.0;  // spatial links of graph 2
  double e_T = 0.0;        // every temporal link of both graphs
  Couplings couplings;
  double lambda_hat = 1.0;

  void validate() const {
    require_ladder_size(n_vertices);
    couplings.validate();
    if (!(lambda_hat > 0.0)) throw std::invalid_argument("lambda_hat must be positive");
  }

  Vector links(int graph) const {
    if (graph != 1 && graph != 2) throw std::invalid_argument("graph must be 1 or 2");
    return uniform_links(n_vertices, e_T, graph == 1 ? e_x : e_x_tilde);
  }
};

/// Pairs two graphs into a twin-slit configuration; they must share N and
/// the temporal link value.
inline TwinSlitConfig make_twin_slit(const SlitGraph& first, const SlitGraph& second, const Couplings& k,
                                     double lambda_hat) {
  if (first.n_vertices != second.n_vertices) {
    throw std::invalid_argument("twin-slit graphs must share the vertex count (" + std::to_string(first.n_vertices) +
                                " vs " + std::to_string(second.n_vertices) + ")");
  }
  if (first.e_temporal != second.e_temporal) {
    throw std::invalid_argument("twin-slit graphs must share the temporal link value");
  }
  TwinSlitConfig cfg{first.n_vertices, first.e_spatial, second.e_spatial, first.e_temporal, k, lambda_hat};
  cfg.validate();
  return cfg;
}

struct Amplitude {
  double log_magnitude = 0.0;
  double phase = 0.0;
};

/// Lorentzian two-source amplitude of one graph with mode k pinned at q:
///   |Z| = sqrt((2 pi)^m / prod_{j != k} |a_j|),   m = retained modes - 1
///   arg Z = -[q^2 a_k / 2 + J~_k q + Phi]
/// with a_j the eigenvalues of K_M (including beta), Phi the closed-form
/// total phase of the graph and the product over nonzero modes only.
inline Amplitude conditional_amplitude(const TwinSlitConfig& cfg, int graph, double q, Index k) {
  cfg.validate();
  const LadderGraph g = build_ladder_graph(cfg.n_vertices);
  const ChainComplex c = make_chain_complex(g);
  const Vector e = cfg.links(graph);
  const Vector J = build_source(c, 1, e, cfg.couplings.alpha);
  const Spectrum s = continue_to_lorentzian(ladder_spectrum_closed_form(cfg.n_vertices, cfg.couplings.beta),
                                            cfg.n_vertices);
  if (k < 0 || k >= s.size()) throw std::invalid_argument("mode index out of range");
  if (s.is_zero_mode(k)) throw DomainError("cannot pin a zero mode of K_M");
  const Vector proj = project_source(J, s);
  for (Index z : s.zero_modes) {
    if (std::abs(proj(z)) > kRowSpaceTol * J.norm()) throw ZeroModeObstruction(s[z].wavenumber, proj(z));
  }
  const PhaseDecomposition phi = phase_decomposition(e, cfg.n_vertices, cfg.couplings, Regime::lorentzian);

  Amplitude out;
  Index m = 0;
  double log_prod = 0.0;
  for (Index j = 0; j < s.size(); ++j) {
    if (j == k || s.is_zero_mode(j)) continue;
    log_prod += std::log(std::abs(s[j].value));
    ++m;
  }
  out.log_magnitude = 0.5 * (static_cast<double>(m) * std::log(kTwoPi) - log_prod);
  const double ak = s[k].value;
  out.phase = -(0.5 * q * q * ak + proj(k) * q + phi.total);
  return out;
}

/// Delta phi = N alpha^2 (e_x^2 - e~_x^2) / (4 hbar beta).
inline double interference_phase_difference(const TwinSlitConfig& cfg) {
  cfg.validate();
  const auto& k = cfg.couplings;
  return static_cast<double>(cfg.n_vertices) * k.alpha * k.alpha * (cfg.e_x * cfg.e_x - cfg.e_x_tilde * cfg.e_x_tilde) /
         (4.0 * k.hbar * k.beta);
}

/// (N/2)(e_x^2 - e~_x^2)/2: an integer at every interference maximum under
/// the calibrated couplings.
inline double fringe_order(Index n_vertices, double e_x, double e_x_tilde) {
  return static_cast<double>(n_vertices) / 2.0 * (e_x * e_x - e_x_tilde * e_x_tilde) / 2.0;
}

/// Laboratory geometry: slits at +d/2 (slit 1) and -d/2 (slit 2), a screen
/// at distance L, a detector at height y.
struct SlitGeometry {
  double slit_separation = 0.0;
  double screen_distance = 0.0;
  double detector_position = 0.0;
  double wavelength = 0.0;

  void validate() const {
    if (!(screen_distance > 0.0) || !(wavelength > 0.0)) {
      throw std::invalid_argument("screen distance and wavelength must be positive");
    }
  }
};

/// Slit-to-detector path lengths (l1, l2).
inline std::pair<double, double> path_lengths(const SlitGeometry& g) {
  const double dy1 = g.detector_position - 0.5 * g.slit_separation;
  const double dy2 = g.detector_position + 0.5 * g.slit_separation;
  return {std::hypot(g.screen_distance, dy1), std::hypot(g.screen_distance, dy2)};
}

/// Model calibration from lab geometry to spatial link values:
/// e_x^2 = 4 l / (N lambda), so N e_x^2 / 4 counts wavelengths along a path.
inline std::pair<double, double> geometry_to_links(const SlitGeometry& g, Index n_vertices) {
  g.validate();
  require_ladder_size(n_vertices);
  const auto [l1, l2] = path_lengths(g);
  const double unit = 4.0 / (static_cast<double>(n_vertices) * g.wavelength);
  return {std::sqrt(unit * l1), std::sqrt(unit * l2)};
}

/// Two-path interference intensity 2 + 2 cos(2 pi delta / lambda), in [0, 4].
inline double nrqm_intensity(double delta_ell, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("wavelength must be positive");
  return 2.0 + 2.0 * std::cos(kTwoPi * delta_ell / lambda);
}

/// Detector height of the order-n maximum predicted by the graph model: the
/// root in y of fringe_order(geometry_to_links(g(y))) = n, found by TOMS 748
/// on an expanding symmetric bracket.
inline double graph_fringe_position(SlitGeometry g, Index n_vertices, std::int64_t order) {
  g.validate();
  if (std::abs(static_cast<double>(order)) * g.wavelength >= std::abs(g.slit_separation)) {
    throw DomainError("no interference maximum of order " + std::to_string(order) + " for this geometry");
  }
  auto f = [&](double y) {
    g.detector_position = y;
    const auto [ex, ext] = geometry_to_links(g, n_vertices);
    return fringe_order(n_vertices, ex, ext) - static_cast<double>(order);
  };
  double bound = g.screen_distance + std::abs(g.slit_separation);
  double lo = -bound, hi = bound;
  while (f(lo) * f(hi) > 0.0) {
    bound *= 2.0;
    lo = -bound;
    hi = bound;
    if (!std::isfinite(bound)) throw DomainError("could not bracket interference maximum");
  }
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52),
                                                        iterations);
  return 0.5 * (a + b);
}

}  // namespace gpath
