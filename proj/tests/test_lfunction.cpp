#include <gtest/gtest.h>

#include "gks/lfunction.hpp"
#include "gks/newton_hodge.hpp"

using namespace gks;

namespace {
CycloInt z(unsigned p, long e) { return CycloInt::zeta_power(p, e); }

// Four points of F_3^* × F_3^*, summed by hand.
CycloInt four_point_oracle(long lambda) {
  CycloInt s(3, 0);
  for (long x1 = 1; x1 <= 2; ++x1)
    for (long x2 = 1; x2 <= 2; ++x2) {
      long inv = (x1 * x2) % 3 == 1 ? 1 : 2;
      s += z(3, x1 + x2 + lambda * inv);
    }
  return s;
}
}  // namespace

TEST(ExpSum, FirstSumByHand) {
  FamilyParams f(1, 1, 1, 1);
  EXPECT_EQ(exp_sum(f, 3, 1, 1), CycloInt(3, 1) + ExactInt(3) * z(3, 2));
  EXPECT_EQ(exp_sum(f, 3, 1, 1), four_point_oracle(1));
  EXPECT_EQ(exp_sum(f, 3, 2, 1), four_point_oracle(2));
}

TEST(ExpSum, LogTableRouteMatchesTowerArithmetic) {
  for (FamilyParams f : {FamilyParams(1, 1, 1, 1), FamilyParams(2, 1, 1, 1), FamilyParams(1, 1, 2, 1)})
    for (long lambda : {1, 2})
      for (unsigned k = 1; k <= 3; ++k) EXPECT_EQ(exp_sum(f, 3, lambda, k), exp_sum_direct(f, 3, lambda, k));
  EXPECT_EQ(exp_sum({2, 3, 1, 1}, 5, 3, 2), exp_sum_direct({2, 3, 1, 1}, 5, 3, 2));
}

TEST(ExpSum, PartitionIndependent) {
  FamilyParams f(2, 1, 1, 1);
  auto one = exp_sum(f, 3, 2, 4, 1);
  for (unsigned w : {2u, 3u, 7u}) EXPECT_EQ(exp_sum(f, 3, 2, 4, w), one);
}

TEST(ExpSum, Preconditions) {
  EXPECT_THROW(exp_sum({3, 1, 1, 1}, 3, 1, 1), PreconditionError);
  EXPECT_THROW(exp_sum({1, 1, 1, 1}, 3, 3, 1), PreconditionError);
  EXPECT_THROW(exp_sum({1, 1, 1, 1}, 9, 1, 1), PreconditionError);
}

TEST(LPoly, FirstCoefficients) {
  FamilyParams f(1, 1, 1, 1);
  auto P = l_polynomial(exp_sums(f, 3, 1, 3));
  ASSERT_EQ(P.degree(), 3);
  EXPECT_EQ(P.coeffs[0], CycloInt(3, 1));
  EXPECT_EQ(P.coeffs[1], -(CycloInt(3, 1) + ExactInt(3) * z(3, 2)));
  EXPECT_EQ(l_polynomial(exp_sums({2, 1, 1, 1}, 3, 1, 5)).degree(), 5);
  EXPECT_THROW(l_polynomial(exp_sums(f, 3, 1, 2)), PreconditionError);
}

TEST(LPoly, PredictionMatchesEnumeration) {
  FamilyParams f(1, 1, 1, 1);
  for (long lambda : {1, 2}) {
    auto s = exp_sums(f, 3, lambda, 5);
    auto P = l_polynomial(s);
    for (long k = 1; k <= 5; ++k) EXPECT_EQ(predict_sum(P, k), s.sums[k - 1]);
    EXPECT_EQ(predict_sum(P, 1), -P.coeffs[1]);
  }
}

TEST(LPoly, SingleRoot) {
  LPolynomial P{5, {CycloInt(5, 1), CycloInt(5, -1)}};
  for (long k = 1; k <= 6; ++k) EXPECT_EQ(predict_sum(P, k), CycloInt(5, 1));
}

TEST(Newton, KloostermanSlopes) {
  FamilyParams f(1, 1, 1, 1);
  for (long lambda : {1, 2}) {
    auto NP = newton_polygon(l_polynomial(exp_sums(f, 3, lambda, 3)));
    EXPECT_EQ(NP.vertices.front(), (RationalPoint{0, 0}));
    EXPECT_EQ(NP.slope_multiset(), (std::vector<ExactRat>{0, 1, 2}));
    EXPECT_EQ(NP, hodge_polygon(f));
  }
}

TEST(Newton, AboveHodgeEvenWhenNotOrdinary) {
  // 5 is not 1 mod 3, so only the inequality is promised.
  FamilyParams f(1, 1, 3, 1);
  auto P = l_polynomial(exp_sums(f, 5, 1, static_cast<unsigned>(f.N())));
  EXPECT_TRUE(polygon_above(newton_polygon(P), hodge_polygon(f)));
}
