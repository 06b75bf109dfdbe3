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

#include <sstream>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace gpath;
namespace fig = gpath::testing::figure;

TEST_CASE("ladder sizes", "[chain_complex]") {
  const LadderGraph six = build_ladder_graph(6);
  CHECK(six.n_links() == 7);
  CHECK(six.n_plaquettes() == 2);

  const LadderGraph four = build_ladder_graph(4);
  CHECK(four.n_links() == 4);
  CHECK(four.n_plaquettes() == 1);
  Index temporal = 0;
  for (Index l = 0; l < four.n_links(); ++l) temporal += four.is_temporal(l) ? 1 : 0;
  CHECK(temporal == 2);

  for (Index n = 4; n <= 60; n += 2) {
    const LadderGraph g = build_ladder_graph(n);
    CHECK(g.n_links() == 3 * n / 2 - 2);
    CHECK(g.n_plaquettes() == n / 2 - 1);
  }
}

TEST_CASE("invalid vertex counts are rejected", "[chain_complex]") {
  CHECK_THROWS_WITH(build_ladder_graph(3), Catch::Matchers::ContainsSubstring("vertex count must be even and ≥ 4"));
  CHECK_THROWS_AS(build_ladder_graph(2), std::invalid_argument);
  CHECK_THROWS_AS(build_ladder_graph(7), std::invalid_argument);
  CHECK_THROWS_AS(build_ladder_graph(-4), std::invalid_argument);
}

TEST_CASE("six-vertex boundaries match the figure up to link relabelling", "[chain_complex][fixture]") {
  const ChainComplex c = make_chain_complex(build_ladder_graph(6));
  CHECK(fig::to_figure_columns(c.d1) == fig::d1());
  CHECK(fig::to_figure_rows(c.d2) == fig::d2());
}

TEST_CASE("d1 columns carry one tail and one head", "[chain_complex]") {
  const LadderGraph g = build_ladder_graph(10);
  const IntMatrix d1 = boundary_1(g);
  for (Index l = 0; l < g.n_links(); ++l) {
    const Link& k = g.links()[static_cast<std::size_t>(l)];
    CHECK(d1(k.tail, l) == -1);
    CHECK(d1(k.head, l) == 1);
    CHECK(d1.col(l).cwiseAbs().sum() == 2);
  }
}

TEST_CASE("plaquette circulation", "[chain_complex]") {
  // Each plaquette runs rung_i, right_i, back along rung_{i+1}, back along left_i.
  const Index n = 8;
  const LadderGraph g = build_ladder_graph(n);
  const IntMatrix d2 = boundary_2(g);
  const Index half = n / 2;
  for (Index i = 0; i + 1 < half; ++i) {
    IntVector expected = IntVector::Zero(g.n_links());
    expected(i) = -1;
    expected(half - 1 + i) = 1;
    expected(n - 2 + i) = 1;
    expected(n - 1 + i) = -1;
    CHECK(d2.col(i) == expected);
  }
}

TEST_CASE("boundary of a boundary vanishes", "[chain_complex][property]") {
  for (Index n = 4; n <= 400; n += 2) {
    const ChainComplex c = make_chain_complex(build_ladder_graph(n));
    const IntMatrix dd = boundary_of_boundary(c);
    REQUIRE(dd.rows() == n);
    REQUIRE(dd.cols() == n / 2 - 1);
    CHECK(dd.cwiseAbs().maxCoeff() == 0);
  }
}

TEST_CASE("boundary_of_boundary rejects mismatched shapes", "[chain_complex]") {
  ChainComplex c = make_chain_complex(build_ladder_graph(6));
  c.d2 = IntMatrix::Zero(5, 2);
  CHECK_THROWS_AS(boundary_of_boundary(c), std::invalid_argument);
  CHECK_THROWS_WITH(validate_complex(c), Catch::Matchers::ContainsSubstring("dimension mismatch"));
}

TEST_CASE("validate_complex", "[chain_complex]") {
  SECTION("canonical complex passes") {
    const ValidationReport r = validate_complex(make_chain_complex(build_ladder_graph(6)));
    CHECK(r.ok());
    CHECK(r.checks.size() == 4);
  }
  SECTION("a reversed link breaks only d1 d2 = 0") {
    ChainComplex c = make_chain_complex(build_ladder_graph(6));
    c.d1.col(2) *= -1;
    const ValidationReport r = validate_complex(c);
    CHECK_FALSE(r.ok());
    CHECK(r.find("d1_incidence")->passed);
    CHECK(r.find("d1_column_sums")->passed);
    CHECK_FALSE(r.find("boundary_of_boundary")->passed);
  }
  SECTION("a single flipped entry also breaks incidence") {
    ChainComplex c = make_chain_complex(build_ladder_graph(6));
    c.d1(0, 0) = 1;
    const ValidationReport r = validate_complex(c);
    CHECK_FALSE(r.find("d1_incidence")->passed);
    CHECK_FALSE(r.find("d1_column_sums")->passed);
    CHECK_FALSE(r.find("boundary_of_boundary")->passed);
  }
  SECTION("zero column in d2") {
    ChainComplex c = make_chain_complex(build_ladder_graph(6));
    c.d2.col(1).setZero();
    const ValidationReport r = validate_complex(c);
    const ValidationCheck* chk = r.find("d2_plaquette_boundary");
    REQUIRE(chk != nullptr);
    CHECK_FALSE(chk->passed);
    CHECK_THAT(chk->detail, Catch::Matchers::ContainsSubstring("degenerate plaquette"));
  }
  SECTION("empty d2") {
    ChainComplex c = make_chain_complex(build_ladder_graph(6));
    c.d2.resize(7, 0);
    const ValidationReport r = validate_complex(c);
    CHECK_THAT(r.find("d2_plaquette_boundary")->detail, Catch::Matchers::ContainsSubstring("degenerate plaquette"));
  }
  SECTION("unknown check name") {
    CHECK(validate_complex(make_chain_complex(build_ladder_graph(4))).find("nope") == nullptr);
  }
}

TEST_CASE("sparse and dense forms agree", "[chain_complex]") {
  const ChainComplex c = make_chain_complex(build_ladder_graph(12));
  CHECK(IntMatrix(to_sparse(c.d1)) == c.d1);
  CHECK(IntMatrix(to_sparse(c.d2)) == c.d2);
  CHECK(c.boundary(1) == c.d1);
  CHECK(c.boundary(2) == c.d2);
  CHECK_THROWS_AS(c.boundary(3), std::invalid_argument);
}

TEST_CASE("d1 d1^T is the graph Laplacian", "[chain_complex][property]") {
  for (Index n : {4, 6, 10, 24}) {
    const LadderGraph g = build_ladder_graph(n);
    const IntMatrix d1 = boundary_1(g);
    CHECK(IntMatrix(d1 * d1.transpose()) == gpath::testing::adjacency_laplacian(g));
  }
}

TEST_CASE("graph text round trip", "[chain_complex][io]") {
  const LadderGraph g = build_ladder_graph(8);
  std::stringstream ss;
  ss << "# written by the test\n";
  write_graph(ss, g);
  const LadderGraph back = read_graph(ss);
  CHECK(back.n_vertices() == 8);
  CHECK(back.links() == g.links());
}

TEST_CASE("graph text errors", "[chain_complex][io]") {
  auto parse = [](const std::string& text) {
    std::istringstream is(text);
    return read_graph(is);
  };
  CHECK_THROWS_WITH(parse(""), Catch::Matchers::ContainsSubstring("missing ladder header"));
  CHECK_THROWS_WITH(parse("link 1 1 2 temporal\n"), Catch::Matchers::ContainsSubstring("before ladder header"));
  CHECK_THROWS_WITH(parse("ladder N=4\nlink 1 1 2 sideways\n"), Catch::Matchers::ContainsSubstring("unknown link kind"));
  CHECK_THROWS_WITH(parse("ladder N=4\nlink 2 1 2 temporal\n"), Catch::Matchers::ContainsSubstring("consecutive"));
  CHECK_THROWS_WITH(parse("ladder N=4\nlink 1 2 1 temporal\nlink 2 3 4 temporal\nlink 3 1 3 spatial\nlink 4 2 4 spatial\n"),
                    Catch::Matchers::ContainsSubstring("canonical"));
  CHECK_THROWS_WITH(parse("ladder N=4\nface 1\n"), Catch::Matchers::ContainsSubstring("unknown record"));
}
