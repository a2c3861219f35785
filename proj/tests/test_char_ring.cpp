#include "gcx/char_ring.hpp"

#include <gtest/gtest.h>

using namespace gcx;

TEST(MakeRing, Presentations) {
  auto so3 = so_ring(3);
  ASSERT_EQ(so3->gens.size(), 1u);
  EXPECT_EQ(so3->gens[0].name, "p4");
  EXPECT_EQ(so3->gens[0].degree, 4);

  auto so4 = so_ring(4);
  ASSERT_EQ(so4->gens.size(), 2u);
  EXPECT_EQ(so4->gens[0].name, "p4");
  EXPECT_EQ(so4->gens[1].name, "E");
  EXPECT_EQ(so4->gens[1].degree, 4);

  auto so2 = so_ring(2);
  ASSERT_EQ(so2->gens.size(), 1u);
  EXPECT_EQ(so2->gens[0].name, "E");
  EXPECT_EQ(so2->gens[0].degree, 2);

  auto so5 = so_ring(5);
  ASSERT_EQ(so5->gens.size(), 2u);
  EXPECT_EQ(so5->gens[1].name, "p8");

  auto o4 = o_ring(4);
  ASSERT_EQ(o4->gens.size(), 2u);
  EXPECT_EQ(o4->gens[1].name, "p8");  // E^2
  EXPECT_EQ(o4->gens[1].degree, 8);

  EXPECT_THROW(so_ring(1), std::invalid_argument);
}

TEST(RingElem, ArithmeticAndFormat) {
  auto r = so_ring(4);
  auto p = RingElem::monomial(r, "p4");
  auto E = RingElem::monomial(r, "E");
  auto x = rat(3, 4) * (p * p) + E;
  EXPECT_EQ(x.str(), "1*E + 3/4*p4^2");
  auto parsed = parse_ring_elem(r, "1*E + 3/4*p4^2");
  EXPECT_EQ(parsed, x);
  EXPECT_TRUE((x - x).is_zero());
  int d = 0;
  EXPECT_FALSE(x.is_homogeneous(&d));
  EXPECT_TRUE((p * p).is_homogeneous(&d));
  EXPECT_EQ(d, 8);
}

TEST(Z2Action, SignOnEuler) {
  auto r = so_ring(4);
  auto p = RingElem::monomial(r, "p4");
  auto E = RingElem::monomial(r, "E");
  EXPECT_EQ(z2_act(E), -E);
  EXPECT_EQ(z2_act(p), p);
  EXPECT_EQ(z2_act(E * E), E * E);
  EXPECT_EQ(z2_act(z2_act(E * p)), E * p);  // involution
}

TEST(Localize, Basics) {
  auto r = so_ring(4);
  auto loc = localized(r, "E");
  auto Einv = RingElem::monomial(loc, "E", -1);
  auto E = RingElem::monomial(loc, "E");
  EXPECT_EQ((Einv * E).str(), "1");
  auto pE = RingElem::monomial(loc, "p4") * Einv;
  EXPECT_EQ(pE.terms().size(), 1u);
  // non-localized ring rejects negative exponents
  EXPECT_THROW(RingElem::monomial(r, "E", -1), std::invalid_argument);
  // injectivity on monomials: nonzero maps to nonzero
  auto x = RingElem::monomial(r, "p4") + rat(2, 3) * RingElem::monomial(r, "E");
  EXPECT_FALSE(localize_at(x, "E").is_zero());
}

TEST(Restrict, EvenTable) {
  // n = 6 even: E_6 -> u E_4; P_8 = P_{2n-4} -> u^2 P_4 + E_4^2; P_4 -> u^2 + P_4
  auto r = so_ring(6);
  auto dst = prod2_ring(4);
  auto u = RingElem::monomial(dst, "u");
  auto E4 = RingElem::monomial(dst, "E");
  auto p4 = RingElem::monomial(dst, "p4");

  EXPECT_EQ(restrict(RingElem::monomial(r, "E"), RestrictionMap::ToProduct2), u * E4);
  EXPECT_EQ(restrict(RingElem::monomial(r, "p8"), RestrictionMap::ToProduct2),
            u * u * p4 + E4 * E4);
  EXPECT_EQ(restrict(RingElem::monomial(r, "p4"), RestrictionMap::ToProduct2), u * u + p4);
  EXPECT_EQ(restrict(RingElem(r, 1), RestrictionMap::ToProduct2), RingElem(dst, 1));
}

TEST(Restrict, OddTable) {
  // n = 5: P_8 = P_{2n-2} -> u^2 P_4; P_4 -> u^2 + P_4
  auto r = so_ring(5);
  auto dst = prod2_ring(3);
  auto u = RingElem::monomial(dst, "u");
  auto p4 = RingElem::monomial(dst, "p4");
  EXPECT_EQ(restrict(RingElem::monomial(r, "p8"), RestrictionMap::ToProduct2), u * u * p4);
  EXPECT_EQ(restrict(RingElem::monomial(r, "p4"), RestrictionMap::ToProduct2), u * u + p4);
}

TEST(Restrict, ToMinusOne) {
  // n odd: p_{2n-2} -> E^2 in SO(n-1)
  auto r = so_ring(5);
  auto dst = so_ring(4);
  auto E = RingElem::monomial(dst, "E");
  EXPECT_EQ(restrict(RingElem::monomial(r, "p8"), RestrictionMap::ToMinusOne), E * E);
  EXPECT_EQ(restrict(RingElem::monomial(r, "p4"), RestrictionMap::ToMinusOne),
            RingElem::monomial(dst, "p4"));
  // n even: E -> 0
  auto r6 = so_ring(6);
  EXPECT_TRUE(restrict(RingElem::monomial(r6, "E"), RestrictionMap::ToMinusOne).is_zero());
}

TEST(Restrict, LocalizedExchangedGenerators) {
  // n = 6 even: P_8 -> u^2 P_4 + u^-2 E_6^2 over {u^(+-), p4, E_6}
  auto r = so_ring(6);
  auto img = restrict(RingElem::monomial(r, "p8"), RestrictionMap::ToProduct2Loc);
  auto dst = img.ring();
  auto u2 = RingElem::monomial(dst, "u", 2);
  auto uinv2 = RingElem::monomial(dst, "u", -2);
  auto E = RingElem::monomial(dst, "E");
  auto p4 = RingElem::monomial(dst, "p4");
  EXPECT_EQ(img, u2 * p4 + uinv2 * E * E);
  EXPECT_EQ(restrict(RingElem::monomial(r, "E"), RestrictionMap::ToProduct2Loc), E);
  // n = 7 odd: P_12 -> P_12; P_8 -> u^2 p4 + u^-2 P_12
  auto r7 = so_ring(7);
  auto img8 = restrict(RingElem::monomial(r7, "p8"), RestrictionMap::ToProduct2Loc);
  auto dst7 = img8.ring();
  auto p12 = RingElem::monomial(dst7, "p12");
  EXPECT_EQ(img8, RingElem::monomial(dst7, "u", 2) * RingElem::monomial(dst7, "p4") +
                      RingElem::monomial(dst7, "u", -2) * p12);
  EXPECT_EQ(restrict(RingElem::monomial(r7, "p12"), RestrictionMap::ToProduct2Loc), p12);
}

TEST(Restrict, DegreePreservingRingMap) {
  SampleRng rng(4242);
  for (int n : {5, 6}) {
    auto r = so_ring(n);
    for (auto map : {RestrictionMap::ToProduct2, RestrictionMap::ToMinusOne,
                     RestrictionMap::ToProduct2Loc}) {
      for (int t = 0; t < 34; ++t) {
        // random monomial pair
        auto rand_mono = [&]() {
          RingElem x(r, 1);
          for (const auto& g : r->gens) {
            int e = (int)rng.below(3);
            if (e) x = x * RingElem::monomial(r, g.name, e);
          }
          return rat(1 + (long)rng.below(5), 1 + (long)rng.below(3)) * x;
        };
        RingElem a = rand_mono(), b = rand_mono();
        // ring morphism on products
        EXPECT_EQ(restrict(a * b, map), restrict(a, map) * restrict(b, map));
        // degree preserved monomial-by-monomial
        int da = 0, db = 0;
        ASSERT_TRUE(a.is_homogeneous(&da));
        auto ra = restrict(a, map);
        int dra = 0;
        EXPECT_TRUE(ra.is_homogeneous(&dra));
        if (!ra.is_zero()) EXPECT_EQ(da, dra);
        (void)db;
      }
    }
  }
}
