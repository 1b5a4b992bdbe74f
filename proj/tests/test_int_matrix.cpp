#include <gtest/gtest.h>

#include <random>

#include "cuspidal/int_matrix.hpp"

using namespace cuspidal;

namespace {

void expect_snf_valid(IntMatrix const &m)
{
  auto s = smith_normal_form(m);
  EXPECT_EQ(multiply(multiply(s.U, m), s.V), s.D);
  EXPECT_EQ(std::llabs(determinant(s.U)), 1);
  EXPECT_EQ(std::llabs(determinant(s.V)), 1);
  auto d = s.diagonal();
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] == 0)
      EXPECT_EQ(d[i + 1], 0);
    else
      EXPECT_EQ(d[i + 1] % d[i], 0);
  }
  for (std::size_t i = 0; i < s.D.size(); ++i)
    for (std::size_t j = 0; j < s.D[i].size(); ++j)
      if (i != j)
        EXPECT_EQ(s.D[i][j], 0);
}

} // namespace

TEST(SmithNormalForm, Identity)
{
  auto s = smith_normal_form(identity_matrix(3));
  EXPECT_EQ(s.D, identity_matrix(3));
  EXPECT_EQ(s.U, identity_matrix(3));
  EXPECT_EQ(s.V, identity_matrix(3));
}

TEST(SmithNormalForm, CoprimeDiagonal)
{
  // diag(2,3): row/column reduction by hand gives diag(1,6).
  auto s = smith_normal_form({{2, 0}, {0, 3}});
  EXPECT_EQ(s.diagonal(), (IntVector{1, 6}));
  expect_snf_valid({{2, 0}, {0, 3}});
}

TEST(SmithNormalForm, AlreadyReduced)
{
  auto s = smith_normal_form({{2, 0}, {0, 2}});
  EXPECT_EQ(s.diagonal(), (IntVector{2, 2}));
}

TEST(SmithNormalForm, RandomMatricesSatisfyInvariants)
{
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-6, 6), dim(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m(r, IntVector(c));
    for (auto &row : m)
      for (auto &x : row)
        x = entry(rng);
    expect_snf_valid(m);
  }
}

TEST(SmithNormalForm, TorsionOfPresentation)
{
  // Generators e1,e2,e3 with relations 4e1, 2e2, 4e3, e1+e2+e3.
  auto s = smith_normal_form({{4, 0, 0}, {0, 2, 0}, {0, 0, 4}, {1, 1, 1}});
  EXPECT_EQ(s.diagonal(), (IntVector{1, 2, 4}));
}

TEST(Hermite, KernelAndMembership)
{
  IntMatrix m{{1, 2}, {2, 4}, {0, 1}};
  auto k = left_kernel(m);
  ASSERT_EQ(k.size(), 1u);
  auto prod = multiply(k, m);
  EXPECT_EQ(prod[0], (IntVector{0, 0}));

  IntMatrix h = hermite_basis({{2, 0}, {1, 1}});
  EXPECT_TRUE(in_lattice({Rational(3), Rational(1)}, h));
  EXPECT_FALSE(in_lattice({Rational(1), Rational(0)}, h));
  EXPECT_FALSE(in_lattice({Rational(1, 2), Rational(1, 2)}, h));
  auto red = reduce_mod_lattice({Rational(7, 2), Rational(5)}, h);
  EXPECT_TRUE(in_lattice({Rational(7, 2) - red[0], Rational(5) - red[1]}, h));
}

TEST(Rational, OverflowIsReported)
{
  Rational big(INT64_MAX / 2);
  EXPECT_THROW(big * Rational(4), Error);
  EXPECT_EQ((Rational(1, 3) + Rational(1, 6)).str(), "1/2");
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
}

TEST(Determinant, SmallCases)
{
  EXPECT_EQ(determinant({{2, -1}, {-1, 2}}), 3);
  EXPECT_EQ(determinant({{1, 2}, {2, 4}}), 0);
  EXPECT_EQ(determinant({{0, 1}, {1, 0}}), -1);
}
