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
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "gpath/core.hpp"

namespace gpath {

enum class LinkKind { temporal, spatial };

inline const char* to_string(LinkKind k) { return k == LinkKind::temporal ? "temporal" : "spatial"; }

/// Oriented link. Vertex indices are zero-based; the text format writes
/// them one-based.
struct Link {
  Index tail = 0;
  Index head = 0;
  LinkKind kind = LinkKind::temporal;

  friend bool operator==(const Link&, const Link&) = default;
};

struct SignedLink {
  Index link = 0;
  int sign = 1;

  friend bool operator==(const SignedLink&, const SignedLink&) = default;
};

/// Oriented 4-link boundary of an elementary rectangle.
using Plaquette = std::array<SignedLink, 4>;

/// The (1+1)-dimensional ladder: two rails of N/2 vertices joined by N/2
/// rungs.
///
/// Numbering (one-based, as written in the text format):
///   left rail   e_i           = v_{i+1} - v_i              i = 1 .. N/2-1
///   right rail  e_{N/2+i-1}   = v_{N/2+i+1} - v_{N/2+i}    i = 1 .. N/2-1
///   rungs       e_{N+i-2}     = v_{N/2+i} - v_i            i = 1 .. N/2
/// so links [0, N-2) are temporal and [N-2, 3N/2-2) spatial (zero-based).
class LadderGraph {
 public:
  Index n_vertices() const { return n_vertices_; }
  Index n_links() const { return static_cast<Index>(links_.size()); }
  Index n_plaquettes() const { return static_cast<Index>(plaquettes_.size()); }
  Index rail_length() const { return n_vertices_ / 2; }

  const std::vector<Link>& links() const { return links_; }
  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }

  Index first_spatial_link() const { return n_vertices_ - 2; }
  bool is_temporal(Index link) const { return link < first_spatial_link(); }

  friend LadderGraph build_ladder_graph(Index n_vertices);

 private:
  Index n_vertices_ = 0;
  std::vector<Link> links_;
  std::vector<Plaquette> plaquettes_;
};

inline void require_ladder_size(Index n_vertices) {
  if (n_vertices < 4 || n_vertices % 2 != 0) {
    throw std::invalid_argument("vertex count must be even and ≥ 4 (got " +
                                std::to_string(n_vertices) + ")");
  }
}

inline LadderGraph build_ladder_graph(Index n_vertices) {
  require_ladder_size(n_vertices);
  const Index half = n_vertices / 2;

  LadderGraph g;
  g.n_vertices_ = n_vertices;
  g.links_.reserve(static_cast<std::size_t>(3 * half - 2));
  for (Index i = 0; i + 1 < half; ++i) g.links_.push_back({i, i + 1, LinkKind::temporal});
  for (Index i = 0; i + 1 < half; ++i)
    g.links_.push_back({half + i, half + i + 1, LinkKind::temporal});
  for (Index i = 0; i < half; ++i) g.links_.push_back({i, half + i, LinkKind::spatial});

  // Counter-clockwise with the left rail drawn upward and rungs pointing
  // right: lower rung, right rail, back along the upper rung, down the left.
  const Index right0 = half - 1;
  const Index rung0 = n_vertices - 2;
  for (Index i = 0; i + 1 < half; ++i) {
    g.plaquettes_.push_back(Plaquette{SignedLink{rung0 + i, +1}, SignedLink{right0 + i, +1},
                                      SignedLink{rung0 + i + 1, -1}, SignedLink{i, -1}});
  }
  return g;
}

/// Vertices x links incidence: -1 at the tail, +1 at the head.
inline IntMatrix boundary_1(const LadderGraph& g) {
  IntMatrix d1 = IntMatrix::Zero(g.n_vertices(), g.n_links());
  for (Index l = 0; l < g.n_links(); ++l) {
    const Link& link = g.links()[static_cast<std::size_t>(l)];
    d1(link.tail, l) = -1;
    d1(link.head, l) = +1;
  }
  return d1;
}

/// Links x plaquettes: column p holds the signed boundary of plaquette p.
inline IntMatrix boundary_2(const LadderGraph& g) {
  IntMatrix d2 = IntMatrix::Zero(g.n_links(), g.n_plaquettes());
  for (Index p = 0; p < g.n_plaquettes(); ++p) {
    for (const SignedLink& s : g.plaquettes()[static_cast<std::size_t>(p)]) d2(s.link, p) += s.sign;
  }
  return d2;
}

/// C0 <- C1 <- C2 for a graph.
struct ChainComplex {
  IntMatrix d1;
  IntMatrix d2;

  Index n_vertices() const { return d1.rows(); }
  Index n_links() const { return d1.cols(); }
  Index n_plaquettes() const { return d2.cols(); }

  /// Boundary operator of the given degree (1 or 2).
  const IntMatrix& boundary(int degree) const {
    if (degree == 1) return d1;
    if (degree == 2) return d2;
    throw std::invalid_argument("unsupported chain degree " + std::to_string(degree) +
                                " (expected 1 or 2)");
  }
};

inline ChainComplex make_chain_complex(const LadderGraph& g) { return {boundary_1(g), boundary_2(g)}; }

/// Sparse copy of an integer boundary matrix.
inline Eigen::SparseMatrix<std::int64_t> to_sparse(const IntMatrix& m) {
  return m.sparseView().eval();
}

/// d1 * d2 computed through the sparse path. Exact.
inline IntMatrix boundary_of_boundary(const ChainComplex& c) {
  if (c.d1.cols() != c.d2.rows()) {
    throw std::invalid_argument("dimension mismatch: d1 has " + std::to_string(c.d1.cols()) +
                                " columns but d2 has " + std::to_string(c.d2.rows()) + " rows");
  }
  const Eigen::SparseMatrix<std::int64_t> product = to_sparse(c.d1) * to_sparse(c.d2);
  return IntMatrix(product);
}

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }

  const ValidationCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Runs every structural invariant of the complex and reports each one.
/// Throws std::invalid_argument on a dimension mismatch.
inline ValidationReport validate_complex(const ChainComplex& c) {
  if (c.d1.cols() != c.d2.rows()) {
    throw std::invalid_argument("dimension mismatch: d1 has " + std::to_string(c.d1.cols()) +
                                " columns but d2 has " + std::to_string(c.d2.rows()) + " rows");
  }
  ValidationReport report;

  {
    ValidationCheck chk{"d1_incidence", true, ""};
    for (Index l = 0; l < c.d1.cols() && chk.passed; ++l) {
      Index plus = 0, minus = 0, other = 0;
      for (Index v = 0; v < c.d1.rows(); ++v) {
        const auto x = c.d1(v, l);
        if (x == 1) ++plus;
        else if (x == -1) ++minus;
        else if (x != 0) ++other;
      }
      if (plus != 1 || minus != 1 || other != 0) {
        chk.passed = false;
        chk.detail = "link " + std::to_string(l + 1) + " is not a single tail/head pair";
      }
    }
    report.checks.push_back(chk);
  }

  {
    ValidationCheck chk{"d1_column_sums", true, ""};
    const IntVector sums = c.d1.colwise().sum().transpose();
    for (Index l = 0; l < sums.size(); ++l) {
      if (sums(l) != 0) {
        chk.passed = false;
        chk.detail = "column " + std::to_string(l + 1) + " sums to " + std::to_string(sums(l));
        break;
      }
    }
    report.checks.push_back(chk);
  }

  {
    ValidationCheck chk{"d2_plaquette_boundary", true, ""};
    if (c.d2.cols() == 0) {
      chk.passed = false;
      chk.detail = "degenerate plaquette: d2 has no columns";
    }
    for (Index p = 0; p < c.d2.cols() && chk.passed; ++p) {
      Index plus = 0, minus = 0, other = 0;
      for (Index l = 0; l < c.d2.rows(); ++l) {
        const auto x = c.d2(l, p);
        if (x == 1) ++plus;
        else if (x == -1) ++minus;
        else if (x != 0) ++other;
      }
      if (plus + minus + other == 0) {
        chk.passed = false;
        chk.detail = "degenerate plaquette " + std::to_string(p + 1) + ": empty boundary";
      } else if (plus != 2 || minus != 2 || other != 0) {
        chk.passed = false;
        chk.detail = "plaquette " + std::to_string(p + 1) + " boundary is not 4 unit links";
      }
    }
    report.checks.push_back(chk);
  }

  {
    ValidationCheck chk{"boundary_of_boundary", true, ""};
    const IntMatrix dd = boundary_of_boundary(c);
    Index bad = 0;
    for (Index i = 0; i < dd.size(); ++i) bad += dd.data()[i] != 0 ? 1 : 0;
    if (bad != 0) {
      chk.passed = false;
      chk.detail = std::to_string(bad) + " nonzero entries in d1*d2";
    }
    report.checks.push_back(chk);
  }
  return report;
}

/// Text form: a `ladder N=<n>` header then `link <index> <tail> <head> <kind>`
/// per link, all one-based. Lines starting with '#' are comments.
inline void write_graph(std::ostream& os, const LadderGraph& g) {
  os << "ladder N=" << g.n_vertices() << '\n';
  for (Index l = 0; l < g.n_links(); ++l) {
    const Link& k = g.links()[static_cast<std::size_t>(l)];
    os << "link " << (l + 1) << ' ' << (k.tail + 1) << ' ' << (k.head + 1) << ' '
       << to_string(k.kind) << '\n';
  }
}

/// Parses the text form and checks it against the canonical ladder.
inline LadderGraph read_graph(std::istream& is) {
  std::string line;
  Index n = -1;
  std::vector<Link> links;
  Index line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("graph text, line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "ladder") {
      std::string field;
      ls >> field;
      if (field.rfind("N=", 0) != 0) fail("expected N=<n> in header");
      n = std::stol(field.substr(2));
    } else if (tag == "link") {
      if (n < 0) fail("link record before ladder header");
      Index idx = 0, tail = 0, head = 0;
      std::string kind;
      if (!(ls >> idx >> tail >> head >> kind)) fail("malformed link record");
      if (idx != static_cast<Index>(links.size()) + 1) fail("link indices must be consecutive");
      if (kind != "temporal" && kind != "spatial") fail("unknown link kind '" + kind + "'");
      links.push_back({tail - 1, head - 1, kind == "temporal" ? LinkKind::temporal : LinkKind::spatial});
    } else {
      fail("unknown record '" + tag + "'");
    }
  }
  if (n < 0) throw std::invalid_argument("graph text: missing ladder header");
  LadderGraph g = build_ladder_graph(n);
  if (links != g.links()) throw std::invalid_argument("graph text: links do not match the canonical ladder numbering");
  return g;
}

}  // namespace gpath
