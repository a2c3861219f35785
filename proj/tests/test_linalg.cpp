#include "gcx/linalg.hpp"

#include <gtest/gtest.h>

using namespace gcx;

TEST(Rank, IdentityAndZero) {
  SparseMatrix id2(2, 2);
  id2.add(0, 0, 1);
  id2.add(1, 1, 1);
  EXPECT_EQ(rank(id2), 2);
  EXPECT_EQ(rank_bareiss(id2), 2);
  EXPECT_EQ(rank_modular(id2), 2);

  SparseMatrix z(3, 4);
  EXPECT_EQ(rank(z), 0);
  EXPECT_EQ(rank_bareiss(z), 0);
}

TEST(Rank, DependentRows) {
  // [[1,2],[2,4]] -> 1 (hand elimination)
  SparseMatrix m(2, 2);
  m.add(0, 0, 1);
  m.add(0, 1, 2);
  m.add(1, 0, 2);
  m.add(1, 1, 4);
  EXPECT_EQ(rank(m), 1);
  EXPECT_EQ(rank_bareiss(m), 1);
  EXPECT_EQ(rank_modular(m), 1);
}

TEST(Kernel, Cases) {
  SparseMatrix id2(2, 2);
  id2.add(0, 0, 1);
  id2.add(1, 1, 1);
  EXPECT_TRUE(kernel_basis(id2).empty());

  // [[1,1]] -> basis {(1,-1)} up to scaling
  SparseMatrix m(1, 2);
  m.add(0, 0, 1);
  m.add(0, 1, 1);
  auto k = kernel_basis(m);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0] + k[0][1], 0);
  EXPECT_NE(k[0][0], 0);

  SparseMatrix z(1, 2);
  EXPECT_EQ(kernel_basis(z).size(), 2u);
}

TEST(Solve, Cases) {
  SparseMatrix id2(2, 2);
  id2.add(0, 0, 1);
  id2.add(1, 1, 1);
  auto x = solve_in_image(id2, {rat(3), rat(5, 7)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], 3);
  EXPECT_EQ((*x)[1], rat(5, 7));

  SparseMatrix m(2, 1);
  m.add(0, 0, 1);
  EXPECT_FALSE(solve_in_image(m, {rat(0), rat(1)}).has_value());

  SparseMatrix h(1, 1);
  h.add(0, 0, 2);
  auto y = solve_in_image(h, {rat(1)});
  ASSERT_TRUE(y.has_value());
  EXPECT_EQ((*y)[0], rat(1, 2));

  EXPECT_THROW((void)solve_in_image(h, {rat(1), rat(2)}), std::invalid_argument);
}

TEST(RankNullity, RandomMatricesAllPathsAgree) {
  SampleRng rng(20240817);
  for (int trial = 0; trial < 40; ++trial) {
    int rows = 1 + (int)rng.below(8), cols = 1 + (int)rng.below(8);
    SparseMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (rng.below(3) == 0)
          m.add(r, c, rat((long)rng.below(9) - 4, 1 + (long)rng.below(4)));
    int rk = rank(m);
    EXPECT_EQ(rk, rank_bareiss(m));
    EXPECT_EQ(rk, rank_modular(m));
    EXPECT_EQ(rk + (int)kernel_basis(m).size(), cols);
  }
}

TEST(RankPaths, Larger) {
  // structured 60x60 with rank 40
  SparseMatrix m(60, 60);
  for (int i = 0; i < 40; ++i) {
    m.add(i, i, rat(i + 1, 3));
    m.add(i, (i + 7) % 60, rat(-2, 5));
  }
  for (int i = 40; i < 60; ++i) {
    // duplicate of earlier rows
    m.add(i, i - 40, rat(i - 39, 3));
    m.add(i, (i - 40 + 7) % 60, rat(-2 * (i - 39) * 1, 5 * (i - 39)));
  }
  int rk = rank(m);
  EXPECT_EQ(rk, rank_bareiss(m));
  EXPECT_EQ(rk, rank_modular(m));
}

TEST(MatrixMarket, Dump) {
  SparseMatrix m(2, 3);
  m.add(0, 1, rat(1, 2));
  m.add(1, 2, rat(-3));
  std::string s = m.matrix_market();
  EXPECT_NE(s.find("%%MatrixMarket matrix coordinate rational general"), std::string::npos);
  EXPECT_NE(s.find("1 2 1/2"), std::string::npos);
  EXPECT_NE(s.find("2 3 -3"), std::string::npos);
}
