#include "gcx/mc.hpp"

#include <gtest/gtest.h>

using namespace gcx;

TEST(ConjecturedM, EvenIsEulerTadpole) {
  auto m = conjectured_m(4);
  ASSERT_EQ(m.gv.size(), 1u);
  auto cf = canonical_form(tadpole_graph(0));
  auto it = m.gv.terms().find(cf.key);
  ASSERT_NE(it, m.gv.terms().end());
  EXPECT_EQ(it->second, RingElem::monomial(so_ring(4), "E"));
}

TEST(ConjecturedM, OddSeriesCoefficients) {
  auto m = conjectured_m(3, 6, 2 * 4);  // degree cap 8: j = 1, 2
  auto ring = m.gv.ring();
  auto theta = canonical_form(multi_edge_graph(1, 3));
  auto five = canonical_form(multi_edge_graph(1, 5));
  ASSERT_FALSE(theta.zero);
  ASSERT_FALSE(five.zero);
  auto t = m.gv.terms().find(theta.key);
  ASSERT_NE(t, m.gv.terms().end());
  EXPECT_EQ(t->second, rat(1, 48) * RingElem::monomial(ring, "p4"));
  auto f = m.gv.terms().find(five.key);
  ASSERT_NE(f, m.gv.terms().end());
  EXPECT_EQ(f->second, rat(1, 7680) * RingElem::monomial(ring, "p4", 2));
  // every term is homogeneous of total degree 1
  for (const auto& [k, c] : m.gv.terms()) {
    int cd = 0;
    ASSERT_TRUE(c.is_homogeneous(&cd));
    EXPECT_EQ(degree(gcx1_decode(k), 3) + cd, 1);
  }
}

TEST(McResidue, EulerTadpoleEvenVanishes) {
  auto m = conjectured_m(4, 4);
  EXPECT_TRUE(mc_residue(m, 3, GcFlavor::FGC).is_zero());
  EXPECT_TRUE(mc_residue(m, 4, GcFlavor::FGC).is_zero());
}

TEST(McResidue, ConjecturedOddVanishes) {
  auto m = conjectured_m(3, 4, 16);
  EXPECT_TRUE(mc_residue(m, 4, GcFlavor::GC).is_zero());
  // stronger: the raw residue vanishes before any valence projection
  EXPECT_TRUE(mc_residue(m, 4, GcFlavor::FGC).is_zero());
}

TEST(McResidue, ZeroElement) {
  BGCElement zero{GraphVector(3, so_ring(3)), 3, 4, 16};
  EXPECT_TRUE(mc_residue(zero, 4, GcFlavor::FGC).is_zero());
}

TEST(TwistedDifferential, ReducesToDeltaAndSquaresToZero) {
  int n = 4;
  auto ring = so_ring(n);
  BGCElement zero{GraphVector(n, ring), n, 5, 32};
  GraphVector x(n, ring);
  OrientedGraph tri;
  tri.parity = 0;
  tri.verts.assign(3, internal_vertex());
  tri.edges = {{0, 1}, {1, 2}, {0, 2}, {0, 1}};  // triangle with doubled edge is zero; use loop
  GraphVector probe(n, ring);
  for (const auto& k : gc_basis(n, 3, 4, GcFlavor::FGC)) {
    probe.add_key(k, RingElem(ring, 1));
    break;
  }
  ASSERT_FALSE(probe.is_zero());
  EXPECT_EQ(twisted_differential(zero, probe, 5), differential(probe, GcFlavor::FGC));

  auto m = conjectured_m(4, 5);
  // D^2 = 0 on seed-fixed samples within the window
  std::vector<std::string> pool;
  for (int v = 1; v <= 3; ++v)
    for (int e = 0; e <= 4; ++e)
      for (const auto& k : gc_basis(n, v, e, GcFlavor::FGC)) pool.push_back(k);
  SampleRng rng(31337);
  for (int t = 0; t < 12; ++t) {
    GraphVector y(n, ring);
    y.add_key(pool[rng.below(pool.size())], RingElem(ring, 1));
    auto d2 = twisted_differential(m, twisted_differential(m, y, 5), 5);
    EXPECT_TRUE(d2.is_zero()) << "t=" << t;
  }
}

TEST(Gauge, GroupLawAndMcPreservation) {
  int n = 4;
  auto m = conjectured_m(n, 5);
  ASSERT_TRUE(mc_residue(m, 5, GcFlavor::FGC).is_zero());

  // nu: a degree-0 combination; theta-with-pendant style graph at even parity
  GraphVector nu(n, m.gv.ring());
  for (const auto& k : gc_basis(n, 4, 4, GcFlavor::FGC)) {
    OrientedGraph g = gcx1_decode(k);
    if (degree(g, n) == 0) {
      nu.add_key(k, RingElem(m.gv.ring(), 1));
      break;
    }
  }
  // nu = 0 -> m
  GraphVector zero_nu(n, m.gv.ring());
  EXPECT_EQ(gauge(m, zero_nu, 5).gv, m.gv);

  if (!nu.is_zero()) {
    auto g1 = gauge(m, nu, 5);
    // gauge preserves the MC property to truncation order
    EXPECT_TRUE(mc_residue(g1, 5, GcFlavor::FGC).is_zero());
    // gauge then gauge by -nu returns m to truncation order
    auto back = gauge(g1, Rat(-1) * nu, 5);
    EXPECT_EQ(back.gv, m.gv);
  } else {
    GTEST_SKIP() << "no degree-0 sample in the small pool";
  }

  // gauge of 0 by closed nu is 0
  BGCElement zero{GraphVector(n, m.gv.ring()), n, 5, 32};
  GraphVector closed_nu(n, m.gv.ring());
  for (const auto& k : gc_basis(n, 3, 3, GcFlavor::FGC)) {
    GraphVector cand(n, m.gv.ring());
    cand.add_key(k, RingElem(m.gv.ring(), 1));
    if (degree(gcx1_decode(k), n) == 0 &&
        differential(cand, GcFlavor::FGC).is_zero()) {
      closed_nu = cand;
      break;
    }
  }
  if (!closed_nu.is_zero())
    EXPECT_TRUE(gauge(zero, closed_nu, 5).gv.is_zero());
}

TEST(GaugeGuard, RejectsNonFiltrationRaising) {
  auto m = conjectured_m(4, 4);
  GraphVector nu(4, m.gv.ring());
  nu.add(tadpole_graph(0), RingElem(m.gv.ring(), 1));
  EXPECT_THROW((void)gauge(m, nu, 4), std::invalid_argument);
}

TEST(Z2Check, Cases) {
  EXPECT_TRUE(z2_check(conjectured_m(3, 4)));
  EXPECT_TRUE(z2_check(conjectured_m(4, 4)));
  // E times a loop-order-2 graph is anti-invariant
  auto ring = so_ring(4);
  BGCElement bad{GraphVector(4, ring), 4, 5, 32};
  for (const auto& k : gc_basis(4, 4, 5, GcFlavor::FGC))
    if (loop_order(gcx1_decode(k)) == 2) {
      bad.gv.add_key(k, RingElem::monomial(ring, "E"));
      break;
    }
  ASSERT_FALSE(bad.gv.is_zero());
  EXPECT_FALSE(z2_check(bad));
}

TEST(Restriction, CommutesWithResidue) {
  // residue of the restricted element = restriction of the residue
  int n = 6;
  auto ring = so_ring(n);
  BGCElement x{GraphVector(n, ring), n, 4, 40};
  x.gv.add(tadpole_graph(0), RingElem::monomial(ring, "E"));
  // perturb by a closed-but-not-MC term to make the residue nonzero
  for (const auto& k : gc_basis(n, 2, 3, GcFlavor::FGC)) {
    x.gv.add_key(k, RingElem::monomial(ring, "p4"));
    break;
  }
  auto lhs = restrict_coeffs(mc_residue(x, 4, GcFlavor::FGC), RestrictionMap::ToProduct2);
  BGCElement xr = x;
  xr.gv = restrict_coeffs(x.gv, RestrictionMap::ToProduct2);
  auto rhs = mc_residue(xr, 4, GcFlavor::FGC);
  EXPECT_EQ(lhs, rhs);
}
