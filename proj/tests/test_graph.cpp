#include "gcx/graph.hpp"

#include <gtest/gtest.h>

using namespace gcx;

namespace {

OrientedGraph make(int parity, int nverts, std::vector<std::pair<int, int>> edges) {
  OrientedGraph g;
  g.parity = parity;
  g.verts.assign(nverts, internal_vertex());
  g.edges = std::move(edges);
  return g;
}

OrientedGraph theta(int parity) { return make(parity, 2, {{0, 1}, {0, 1}, {0, 1}}); }
OrientedGraph tadpole(int parity) { return make(parity, 1, {{0, 0}}); }

// Brute-force zero-by-symmetry oracle: enumerate all vertex bijections and
// edge matchings directly from the definition of the sign rules.
bool zero_by_symmetry_brute(const OrientedGraph& g) {
  int nv = g.num_vertices();
  std::vector<int> perm(nv);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool kind_ok = true;
    for (int i = 0; i < nv; ++i) {
      if (g.verts[i].kind != g.verts[perm[i]].kind ||
          g.verts[i].label != g.verts[perm[i]].label) {
        kind_ok = false;
        break;
      }
      if (g.verts[i].kind == VertexKind::External && perm[i] != i) {
        kind_ok = false;
        break;
      }
    }
    if (!kind_ok) continue;
    // try to match relabeled edges to original edges bijectively
    int ne = g.num_edges();
    std::vector<int> assign(ne, -1);
    std::vector<bool> used(ne, false);
    // count sign over all consistent matchings; if any matching yields an
    // automorphism of sign -1 the graph vanishes
    std::function<bool(int, int)> search = [&](int i, int flips) -> bool {
      if (i == ne) {
        int sign = 1;
        if (g.parity == 1) {
          sign *= detail::perm_sign(perm);
          if (flips % 2) sign = -sign;
        } else {
          sign *= detail::perm_sign(assign);
        }
        return sign == -1;
      }
      auto [a, b] = g.edges[i];
      std::pair<int, int> img = {perm[a], perm[b]};
      for (int j = 0; j < ne; ++j) {
        if (used[j]) continue;
        if (g.edges[j] == img) {
          used[j] = true;
          assign[i] = j;
          if (search(i + 1, flips)) return true;
          used[j] = false;
        }
        std::pair<int, int> rev = {img.second, img.first};
        if (g.edges[j] == rev) {
          used[j] = true;
          assign[i] = j;
          if (search(i + 1, flips + 1)) return true;
          used[j] = false;
        }
      }
      return false;
    };
    if (search(0, 0)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST(Canonical, SignConventionTriple) {
  // theta nonzero for odd n
  EXPECT_FALSE(canonical_form(theta(1)).zero);
  // double edge zero for even n
  EXPECT_TRUE(canonical_form(make(0, 2, {{0, 1}, {0, 1}})).zero);
  // tadpole zero for odd n, nonzero for even n
  EXPECT_TRUE(canonical_form(tadpole(1)).zero);
  EXPECT_FALSE(canonical_form(tadpole(0)).zero);
}

TEST(Canonical, SingleVertexIdentity) {
  OrientedGraph pt = make(0, 1, {});
  auto cf = canonical_form(pt);
  EXPECT_FALSE(cf.zero);
  EXPECT_EQ(cf.sign, 1);
  EXPECT_EQ(cf.key, gcx1_encode(pt));
}

TEST(Canonical, Idempotent) {
  for (int parity : {0, 1}) {
    std::vector<OrientedGraph> samples = {
        theta(parity), make(parity, 3, {{0, 1}, {1, 2}, {0, 2}}),
        make(parity, 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}),
        make(parity, 2, {{1, 0}})};
    for (const auto& g : samples) {
      auto cf = canonical_form(g);
      if (cf.zero) continue;
      auto cf2 = canonical_form(gcx1_decode(cf.key));
      EXPECT_FALSE(cf2.zero);
      EXPECT_EQ(cf2.sign, 1);
      EXPECT_EQ(cf2.key, cf.key);
    }
  }
}

TEST(Canonical, RelabelingSignComposes) {
  // pentagon with a chord, odd parity: relabeled copies must agree up to the
  // parity-rule sign of the relabeling
  OrientedGraph g = make(1, 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}});
  auto base = canonical_form(g);
  ASSERT_FALSE(base.zero);
  SampleRng rng(7);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 4; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    OrientedGraph h = g;
    h.verts = g.verts;
    int flips = 0;
    for (size_t e = 0; e < g.edges.size(); ++e) {
      int a = perm[g.edges[e].first], b = perm[g.edges[e].second];
      h.edges[e] = {a, b};
      if (t % 2 == 0 && a != b) {  // also flip some directions
        std::swap(h.edges[e].first, h.edges[e].second);
        ++flips;
      }
    }
    auto cf = canonical_form(h);
    ASSERT_FALSE(cf.zero);
    int expected = detail::perm_sign(perm) * (flips % 2 ? -1 : 1) * base.sign;
    EXPECT_EQ(cf.key, base.key);
    EXPECT_EQ(cf.sign, expected);
  }
}

TEST(Canonical, EvenParityEdgeOrderSign) {
  // swapping two edges in the sequence changes the sign for even parity
  OrientedGraph g = make(0, 3, {{0, 1}, {1, 2}});
  OrientedGraph h = make(0, 3, {{1, 2}, {0, 1}});
  auto cg = canonical_form(g), ch = canonical_form(h);
  // the 2-path has a -1 automorphism for even parity (edge transposition)
  EXPECT_TRUE(cg.zero);
  EXPECT_TRUE(ch.zero);
  // a graph whose automorphisms all act evenly on edges
  OrientedGraph a = make(0, 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  OrientedGraph b = make(0, 4, {{0, 2}, {0, 1}, {0, 3}, {1, 2}, {1, 3}});
  auto ca = canonical_form(a), cb = canonical_form(b);
  ASSERT_FALSE(ca.zero);
  EXPECT_EQ(ca.key, cb.key);
  EXPECT_EQ(ca.sign, -cb.sign);
}

TEST(Canonical, ZeroBySymmetryMatchesBruteForce) {
  // random graphs up to 7 vertices, both parities
  SampleRng rng(99);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int nv = 1 + (int)rng.below(trial % 4 == 0 ? 7 : 5);
    int ne = (int)rng.below(7);
    OrientedGraph g;
    g.parity = (int)rng.below(2);
    g.verts.assign(nv, internal_vertex());
    for (int e = 0; e < ne; ++e)
      g.edges.emplace_back((int)rng.below(nv), (int)rng.below(nv));
    bool brute = zero_by_symmetry_brute(g);
    bool fast = canonical_form(g).zero;
    EXPECT_EQ(fast, brute) << gcx1_encode(g);
    ++checked;
  }
  EXPECT_EQ(checked, 400);
  // 7-vertex handpicked cases: the 7-loop (nonzero both parities by the
  // rotation/reflection count) and a 7-vertex path (zero both parities)
  OrientedGraph loop7;
  loop7.verts.assign(7, internal_vertex());
  for (int i = 0; i < 7; ++i) loop7.edges.emplace_back(i, (i + 1) % 7);
  OrientedGraph path7;
  path7.verts.assign(7, internal_vertex());
  for (int i = 0; i < 6; ++i) path7.edges.emplace_back(i, i + 1);
  for (int parity : {0, 1}) {
    loop7.parity = path7.parity = parity;
    EXPECT_EQ(canonical_form(loop7).zero, zero_by_symmetry_brute(loop7)) << parity;
    EXPECT_EQ(canonical_form(path7).zero, zero_by_symmetry_brute(path7)) << parity;
  }
}

TEST(Degree, Formulas) {
  // loop graph: r vertices, r edges -> degree r - n
  for (int n : {2, 3}) {
    for (int r : {3, 4, 5}) {
      OrientedGraph loop;
      loop.parity = n % 2;
      loop.verts.assign(r, internal_vertex());
      for (int i = 0; i < r; ++i) loop.edges.emplace_back(i, (i + 1) % r);
      EXPECT_EQ(degree(loop, n), r - n);
    }
    // single edge -> 1, single vertex -> 0
    EXPECT_EQ(degree(make(n % 2, 2, {{0, 1}}), n), 1);
    EXPECT_EQ(degree(make(n % 2, 1, {}), n), 0);
    // theta with coefficient p_{2n-2} is a degree-1 MC candidate
    EXPECT_EQ(degree(theta(n % 2), n) + 2 * n - 2, 1);
  }
}

TEST(Predicates, LoopOrderConnectivityValence) {
  EXPECT_EQ(loop_order(theta(1)), 2);
  EXPECT_EQ(loop_order(make(0, 2, {{0, 1}})), 0);
  EXPECT_TRUE(is_connected(theta(0)));
  EXPECT_FALSE(is_connected(make(0, 3, {{0, 1}})));
  EXPECT_EQ(min_internal_valence(theta(0)), 3);
  EXPECT_EQ(min_internal_valence(tadpole(0)), 2);
}

TEST(Predicates, VeryLoopy) {
  // theta: deleting either vertex leaves a single vertex without a cycle
  EXPECT_FALSE(is_very_loopy(theta(1)));
  // star with 3 leaves: complement of the center is a forest
  EXPECT_FALSE(is_very_loopy(make(1, 4, {{0, 1}, {0, 2}, {0, 3}})));
  // two thetas sharing no vertex, joined by an edge: every complement keeps a cycle
  OrientedGraph g = make(1, 4, {{0, 1}, {0, 1}, {0, 1}, {2, 3}, {2, 3}, {2, 3}, {1, 2}});
  EXPECT_TRUE(is_very_loopy(g));
}

TEST(Gcx1, RoundTrip) {
  OrientedGraph g;
  g.parity = 1;
  g.verts = {internal_vertex(), external_vertex(2), baseline_vertex()};
  g.edges = {{0, 1}, {2, 0}};
  auto s = gcx1_encode(g);
  EXPECT_EQ(s, "GCX1 p=1 v=3 kinds=I,E2,B edges=(1,2);(3,1)");
  auto h = gcx1_decode(s);
  EXPECT_EQ(gcx1_encode(h), s);
  EXPECT_THROW(gcx1_decode("GCX2 nope"), std::invalid_argument);
}

TEST(Gcx1, MalformedEdges) {
  OrientedGraph g = make(0, 1, {{0, 3}});
  EXPECT_THROW(canonical_form(g), std::invalid_argument);
}
