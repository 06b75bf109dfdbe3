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

#include <random>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace gpath;
namespace fig = gpath::testing::figure;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("six-vertex operator equals the worked Laplacian", "[scc][fixture]") {
  const ChainComplex c = make_chain_complex(build_ladder_graph(6));
  CHECK(exact_operator(c, 1) == fig::laplacian());
  CHECK(build_operator(c, 1, 1.0) == fig::laplacian().cast<double>());
  CHECK(build_operator(c, 1, 2.5) == 2.5 * fig::laplacian().cast<double>());
}

TEST_CASE("six-vertex source in figure labels", "[scc][fixture]") {
  const ChainComplex c = make_chain_complex(build_ladder_graph(6));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const IntVector e_fig = gpath::testing::random_integers(7, -50, 50, rng);
    IntVector e_can(7);
    for (Index f = 0; f < 7; ++f) e_can(fig::kToCanonical[static_cast<std::size_t>(f)]) = e_fig(f);
    CHECK(exact_source(c, 1, e_can) == fig::source(e_fig));
    CHECK(build_source(c, 1, e_can.cast<double>(), 3.0) == 3.0 * fig::source(e_fig).cast<double>());
  }
}

TEST_CASE("general-N source pattern at the first vertex", "[scc]") {
  // Vertex 1 is the tail of left link 1 and of rung 1.
  for (Index n : {6, 10, 16}) {
    const ChainComplex c = make_chain_complex(build_ladder_graph(n));
    Vector e = Vector::LinSpaced(3 * n / 2 - 2, 1.0, static_cast<double>(3 * n / 2 - 2));
    const Vector J = build_source(c, 1, e, 1.0);
    CHECK(J(0) == -e(0) - e(n - 2));
  }
}

TEST_CASE("source linearity and divergence", "[scc][property]") {
  const ChainComplex c = make_chain_complex(build_ladder_graph(14));
  CHECK(build_source(c, 1, Vector::Zero(c.n_links()), 2.0).isZero(0.0));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const IntVector e = gpath::testing::random_integers(c.n_links(), -1000, 1000, rng);
    CHECK(exact_source(c, 1, e).sum() == 0);
  }
  CHECK_THROWS_AS(build_source(c, 1, Vector::Zero(3), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_source(c, 1, Vector::Zero(c.n_links()), 0.0), std::invalid_argument);
}

TEST_CASE("unsupported degree", "[scc]") {
  const ChainComplex c = make_chain_complex(build_ladder_graph(6));
  CHECK_THROWS_WITH(build_operator(c, 3, 1.0), ContainsSubstring("unsupported chain degree"));
  CHECK_THROWS_WITH(build_operator(c, 0, 1.0), ContainsSubstring("unsupported chain degree"));
}

TEST_CASE("worked identity in integer arithmetic", "[scc][fixture]") {
  const ChainComplex c = make_chain_complex(build_ladder_graph(6));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const IntVector v = gpath::testing::random_integers(6, -1000, 1000, rng);
    const IntVector e = coboundary(c, 1, v);
    CHECK(exact_operator(c, 1) * v == fig::laplacian_column(v));
    CHECK(exact_source(c, 1, e) == fig::laplacian_column(v));
    const SccReport r = verify_scc_exact(c, 1, e, v);
    CHECK(r.ok());
    CHECK(r.null_dimension == 1);
  }
}

TEST_CASE("constant potential is the gauge direction", "[scc]") {
  const ChainComplex c = make_chain_complex(build_ladder_graph(8));
  const IntVector v = IntVector::Constant(8, 42);
  const IntVector e = coboundary(c, 1, v);
  CHECK(e.isZero());
  CHECK(exact_source(c, 1, e).isZero());
  CHECK(verify_scc_exact(c, 1, e, v).ok());
}

TEST_CASE("random integer potentials on N=20", "[scc][property]") {
  const ChainComplex c = make_chain_complex(build_ladder_graph(20));
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 30; ++trial) {
    const IntVector v = gpath::testing::random_integers(20, -1000, 1000, rng);
    const IntVector e = coboundary(c, 1, v);
    CHECK(IntVector(exact_operator(c, 1) * v) == IntVector(c.d1 * e));
    CHECK_NOTHROW(verify_scc_exact(c, 1, e, v));
  }
}

TEST_CASE("floating SCC check with couplings", "[scc]") {
  const ChainComplex c = make_chain_complex(build_ladder_graph(10));
  std::mt19937_64 rng(3);
  const Vector v = gpath::testing::random_vector(10, rng, 5.0);
  const Vector e = coboundary(c, 1, v);
  const SccSystem sys = make_scc_system(c, 1, e, Couplings{0.7, 2.3, 1.0});
  const SccReport r = verify_scc(sys, v);
  CHECK(r.ok());
  CHECK(r.checks.size() == 4);
  CHECK(r.null_dimension == 1);
  CHECK(std::abs(r.source_sum) <= 1e-12 * sys.J.lpNorm<1>());
  // K v = (beta / alpha) J directly.
  CHECK((sys.K * v - (2.3 / 0.7) * sys.J).cwiseAbs().maxCoeff() <= 1e-12 * (sys.K * v).cwiseAbs().maxCoeff());
}

TEST_CASE("SCC violation carries the residual", "[scc]") {
  const ChainComplex c = make_chain_complex(build_ladder_graph(6));
  Vector v(6);
  v << 1, 2, 3, 4, 5, 6;
  Vector e = coboundary(c, 1, v);
  e(6) += 1.0;  // the last rung no longer matches a gradient
  const SccSystem sys = make_scc_system(c, 1, e, Couplings{});
  try {
    verify_scc(sys, v);
    FAIL("expected SccViolation");
  } catch (const SccViolation& ex) {
    CHECK_THAT(std::string(ex.what()), ContainsSubstring("SCC violated: e not a vertex gradient"));
    CHECK(ex.max_residual() == Catch::Approx(1.0));
  }
  CHECK_THROWS_AS(verify_scc_exact(c, 1, e.cast<std::int64_t>(), v.cast<std::int64_t>()), SccViolation);
  CHECK_THROWS_AS(verify_scc(sys, Vector::Zero(4)), std::invalid_argument);
}

TEST_CASE("degree-2 identity", "[scc]") {
  const ChainComplex c = make_chain_complex(build_ladder_graph(10));
  std::mt19937_64 rng(2);
  const IntVector w = gpath::testing::random_integers(c.n_links(), -30, 30, rng);
  const IntVector f = coboundary(c, 2, w);
  REQUIRE(f.size() == c.n_plaquettes());
  const SccReport exact = verify_scc_exact(c, 2, f, w);
  CHECK(exact.ok());
  CHECK(exact.null_dimension == c.n_links() - c.n_plaquettes());

  const SccSystem sys = make_scc_system(c, 2, f.cast<double>(), Couplings{1.0, 1.0, 1.0});
  CHECK(verify_scc(sys, w.cast<double>()).ok());
  IntVector bad = f;
  bad(0) += 1;
  CHECK_THROWS_WITH(verify_scc_exact(c, 2, bad, w), ContainsSubstring("e not a coboundary of v"));
}

TEST_CASE("null space", "[scc]") {
  const ChainComplex c = make_chain_complex(build_ladder_graph(6));
  const auto basis = null_space_basis(build_operator(c, 1, 1.0));
  REQUIRE(basis.size() == 1);
  CHECK((basis[0] - Vector::Constant(6, 1.0 / std::sqrt(6.0))).norm() < 1e-12);

  CHECK(null_space_basis(Matrix::Identity(5, 5)).empty());

  const ChainComplex c4 = make_chain_complex(build_ladder_graph(4));
  const Matrix KM = lorentzian_operator(build_operator(c4, 1, 1.0), 1.0);
  const auto lorentz = null_space_basis(KM);
  REQUIRE(lorentz.size() == 2);
  for (const Vector& x : lorentz) CHECK((KM * x).norm() < 1e-12);
  CHECK(std::abs(lorentz[0].dot(lorentz[1])) < 1e-12);
}
