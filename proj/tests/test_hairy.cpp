#include "gcx/colored.hpp"

#include <gtest/gtest.h>

using namespace gcx;

namespace {

GraphVector single(int n, Ring ring, const std::string& key) {
  GraphVector x(n, ring);
  x.add_key(key, RingElem(ring, 1));
  return x;
}

}  // namespace

TEST(Zhat0, LeadingTermsAndDegrees) {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 3}, {2, 4}}) {
    auto z = zhat0(m, n);
    ASSERT_EQ(z.size(), 3u);
    assert_sector_homogeneity(m, n);
    int with_E = 0;
    for (const auto& [k, c] : z.terms()) {
      OrientedGraph g = gcx1_decode(k);
      int cd = 0;
      ASSERT_TRUE(c.is_homogeneous(&cd));
      EXPECT_EQ(colored_degree(g, m, n) + cd, 1);
      if (!c.terms().empty() && cd == n - m) ++with_E;
    }
    EXPECT_EQ(with_E, 1);  // exactly the II-II edge carries E_{n-m}
  }
  EXPECT_THROW((void)zhat0(2, 3), std::invalid_argument);
}

TEST(Zhat0, IsMaurerCartan) {
  // the untwisted differential vanishes, so MC means [z, z] = 0
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 3}, {2, 4}}) {
    auto z = zhat0(m, n);
    EXPECT_TRUE(colored_bracket(z, z).is_zero()) << "m=" << m << " n=" << n;
  }
}

TEST(Iota, SingleVertexAndZero) {
  int m = 1, n = 3;
  Ring ring = colored_ring(m, n);
  OrientedGraph pt;
  pt.parity = 1;
  pt.verts = {internal_vertex()};
  GraphVector x(n, ring);
  x.add(pt, RingElem(ring, 1));
  auto img = iota(x, m, n);
  // point + (type II point), both weight 1 = E^0
  ASSERT_EQ(img.size(), 2u);
  for (const auto& [k, c] : img.terms()) EXPECT_EQ(c, RingElem(ring, 1));
  EXPECT_TRUE(iota(GraphVector(n, ring), m, n).is_zero());
}

TEST(Iota, K4TermCountAndHomogeneity) {
  int m = 1, n = 3;
  Ring ring = colored_ring(m, n);
  OrientedGraph k4;
  k4.parity = 1;
  k4.verts.assign(4, internal_vertex());
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.edges.emplace_back(i, j);
  GraphVector x(n, ring);
  x.add(k4, RingElem(ring, 1));
  ASSERT_FALSE(x.is_zero());
  auto img = iota(x, m, n);
  // one term per number of type II vertices, 0..4 (K4 is vertex-transitive)
  std::map<int, int> by_k;
  for (const auto& [k, c] : img.terms())
    by_k[gcx1_decode(k).count_kind(VertexKind::Baseline)]++;
  EXPECT_EQ(by_k.size(), 5u);
  // degree 0 overall
  int src_deg = degree(k4, n);
  for (const auto& [k, c] : img.terms()) {
    int cd = 0;
    ASSERT_TRUE(c.is_homogeneous(&cd));
    EXPECT_EQ(colored_degree(gcx1_decode(k), m, n) + cd, src_deg);
  }
}

TEST(Projections, SectionProperties) {
  int m = 1, n = 3;
  Ring ring = colored_ring(m, n);
  for (int v = 1; v <= 4; ++v)
    for (int e = 0; e <= 5; ++e)
      for (const auto& k : enumerate_connected(n % 2, v, e, 0)) {
        GraphVector x = single(n, ring, k);
        auto img = iota(x, m, n);
        EXPECT_EQ(p0(img), x);
        EXPECT_EQ(p1(img, m, n), x);
      }
  // p1 kills mixed graphs
  auto z = zhat0(m, n);
  for (const auto& [k, c] : z.terms()) {
    OrientedGraph g = gcx1_decode(k);
    if (g.count_kind(VertexKind::Internal) == 1 && g.count_kind(VertexKind::Baseline) == 1)
      EXPECT_TRUE(p1(single(n, ring, k), m, n).is_zero());
  }
}

TEST(P1, AllBaselineWeights) {
  int m = 1, n = 3;
  Ring ring = colored_ring(m, n);
  // all-type-II triangle -> E^{1-3} x plain triangle
  OrientedGraph tri;
  tri.parity = 1;
  tri.verts.assign(3, baseline_vertex());
  tri.edges = {{0, 1}, {1, 2}, {0, 2}};
  GraphVector y(n, ring);
  y.add(tri, RingElem(ring, 1));
  auto img = p1(y, m, n);
  ASSERT_EQ(img.size(), 1u);
  OrientedGraph plain_tri = tri;
  for (auto& v : plain_tri.verts) v = internal_vertex();
  auto cf = canonical_form(plain_tri);
  auto it = img.terms().find(cf.key);
  ASSERT_NE(it, img.terms().end());
  EXPECT_EQ(it->second, (cf.sign > 0 ? Rat(1) : Rat(-1)) * RingElem::monomial(ring, "E", -2));
}

TEST(Homotopy, QuantitativeIdentity) {
  // (delta0 h0' + h0' delta0)(Gamma) = (#type I) * E * Gamma on the window
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 3}, {2, 4}}) {
    Ring ring = colored_ring(m, n);
    RingElem E = RingElem::monomial(ring, "E");
    int checked = 0;
    for (int v = 1; v <= 3; ++v)
      for (int e = 0; e <= 4; ++e)
        for (const auto& k : colored_basis(m, n, v, e)) {
          GraphVector y = single(n, ring, k);
          int ni = gcx1_decode(k).count_kind(VertexKind::Internal);
          auto lhs = delta0(h0prime(y, m, n), m, n) + h0prime(delta0(y, m, n), m, n);
          EXPECT_EQ(lhs, Rat(ni) * (E * y)) << k;
          ++checked;
        }
    EXPECT_GT(checked, 10);
  }
}

TEST(Homotopy, RetractionIdentity) {
  // delta0 h0 + h0 delta0 = id - pi, pi = projection onto no-type-I graphs
  int m = 1, n = 3;
  Ring ring = colored_ring(m, n);
  for (int v = 1; v <= 3; ++v)
    for (int e = 0; e <= 4; ++e)
      for (const auto& k : colored_basis(m, n, v, e)) {
        GraphVector y = single(n, ring, k);
        auto lhs = delta0(homotopy_h0(y, m, n), m, n) + homotopy_h0(delta0(y, m, n), m, n);
        bool no_type_i = gcx1_decode(k).count_kind(VertexKind::Internal) == 0;
        if (no_type_i)
          EXPECT_TRUE(lhs.is_zero()) << k;
        else
          EXPECT_EQ(lhs, y) << k;
      }
  // triangle example: h0-identity yields 3 E Gamma before normalization
  OrientedGraph tri;
  tri.parity = 1;
  tri.verts.assign(3, internal_vertex());
  tri.edges = {{0, 1}, {1, 2}, {0, 2}};
  GraphVector y(n, ring);
  y.add(tri, RingElem(ring, 1));
  auto lhs = delta0(h0prime(y, m, n), m, n) + h0prime(delta0(y, m, n), m, n);
  EXPECT_EQ(lhs, Rat(3) * (RingElem::monomial(ring, "E") * y));
  // no type I vertices -> h0 = 0
  OrientedGraph bb;
  bb.parity = 1;
  bb.verts.assign(2, baseline_vertex());
  bb.edges = {{0, 1}};
  GraphVector yb(n, ring);
  yb.add(bb, RingElem(ring, 1));
  EXPECT_TRUE(homotopy_h0(yb, m, n).is_zero());
  EXPECT_TRUE(homotopy_h0(GraphVector(n, ring), m, n).is_zero());
}

TEST(Morphisms, ZeroViolations13) {
  for (const char* which : {"iota", "p0", "p1"}) {
    auto rep = check_morphism(which, 1, 3, 3, 4);
    EXPECT_GT(rep.graphs_checked, 0) << which;
    EXPECT_EQ(rep.violations, 0) << which;
  }
}

TEST(Morphisms, ZeroViolations24) {
  for (const char* which : {"iota", "p0", "p1"}) {
    auto rep = check_morphism(which, 2, 4, 3, 4);
    EXPECT_GT(rep.graphs_checked, 0) << which;
    EXPECT_EQ(rep.violations, 0) << which;
  }
}

TEST(Morphisms, EmptyWindowTriviallyZero) {
  auto rep = check_morphism("iota", 1, 3, 0, 0);
  EXPECT_EQ(rep.violations, 0);
}
