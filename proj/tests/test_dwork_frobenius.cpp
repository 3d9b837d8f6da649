#include <gtest/gtest.h>

#include <random>

#include "gks/dwork_frobenius.hpp"

using namespace gks;

namespace {

PiRational pi(unsigned p) { return PiRational::pi_power(p, 1); }

// exp(πt)·exp(−πt^p) by multiplying the two exponentials term by term.
std::vector<PiRational> splitting_by_product(unsigned p, long I) {
  std::vector<PiRational> e1, e2(I + 1, PiRational(p));
  for (long n = 0; n <= I; ++n)
    e1.push_back(PiRational::pi_power(p, n).scaled(ExactRat(ExactInt(1), factorial(n))));
  for (long m = 0; m * static_cast<long>(p) <= I; ++m) {
    ExactRat c(ExactInt(m % 2 ? -1 : 1), factorial(m));
    e2[m * p] = PiRational::pi_power(p, m).scaled(c);
  }
  std::vector<PiRational> out(I + 1, PiRational(p));
  for (long i = 0; i <= I; ++i)
    for (long j = 0; i + j <= I; ++j) out[i + j] += e1[i] * e2[j];
  return out;
}

FrobeniusResult kloosterman(long M = 8, long L = 12) { return alpha0_matrix({1, 1, 1, 1}, 3, {M, 0, L}); }

}  // namespace

TEST(PiRational, Relation) {
  for (unsigned p : {3u, 5u, 7u}) {
    EXPECT_EQ(PiRational::pi_power(p, p - 1), PiRational(p, -static_cast<long>(p)));
    EXPECT_EQ(PiRational::pi_power(p, 3) * PiRational::pi_power(p, -3), PiRational(p, 1));
    EXPECT_EQ(*PiRational::pi_power(p, 11).ord(), 11);
    EXPECT_EQ(*PiRational::pi_power(p, -4).ord(), -4);
    PiRational x = PiRational(p, 2) + pi(p) * PiRational(p, 5);
    EXPECT_EQ(x * x.inverse(), PiRational(p, 1));
  }
  EXPECT_FALSE(PiRational(3).ord().has_value());
}

TEST(PiAdicScalar, RingAndDigits) {
  const unsigned p = 5;
  const long M = 9;
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> c(-400, 400);
  for (int t = 0; t < 100; ++t) {
    PiRational x(p, c(rng)), y(p, c(rng));
    x += pi(p).scaled(c(rng));
    y += PiRational::pi_power(p, 3).scaled(ExactRat(c(rng), 7));
    auto X = PiAdicScalar::from_rational(p, M, x), Y = PiAdicScalar::from_rational(p, M, y);
    EXPECT_EQ(X * Y, PiAdicScalar::from_rational(p, M, x * y));
    EXPECT_EQ(X + Y, PiAdicScalar::from_rational(p, M, x + y));
    // digits reconstruct the value
    PiRational back(p);
    auto d = X.digits();
    ASSERT_EQ(static_cast<long>(d.size()), M);
    for (long i = 0; i < M; ++i) {
      EXPECT_TRUE(d[i] >= 0 && d[i] < static_cast<long>(p));
      back += PiRational::pi_power(p, i).scaled(d[i]);
    }
    EXPECT_EQ(PiAdicScalar::from_rational(p, M, back), X);
    if (X.is_unit()) EXPECT_EQ(X * X.inverse(), PiAdicScalar(p, M, 1));
  }
  EXPECT_EQ(PiAdicScalar::pi_power(p, M, M).ord(), M);
  EXPECT_TRUE(PiAdicScalar::pi_power(p, M, M).is_zero());
  EXPECT_EQ(PiAdicScalar::pi_power(p, M, 6).ord(), 6);
  EXPECT_THROW(PiAdicScalar::pi_power(p, M, 1).inverse(), PreconditionError);
  EXPECT_THROW(PiAdicScalar::from_rational(p, M, PiRational::pi_power(p, -1)), InvariantError);
}

TEST(PiAdicScalar, Teichmuller) {
  for (unsigned p : {3u, 5u, 7u})
    for (long r = 1; r < static_cast<long>(p); ++r) {
      auto t = teichmuller(p, 10, r);
      PiAdicScalar pw(p, 10, 1);
      for (unsigned k = 0; k + 1 < p; ++k) pw *= t;
      EXPECT_EQ(pw, PiAdicScalar(p, 10, 1));
      EXPECT_GE((t - PiAdicScalar(p, 10, r)).ord(), 1);
    }
  EXPECT_EQ(teichmuller(3, 8, 1), PiAdicScalar(3, 8, 1));
}

TEST(Splitting, FirstCoefficients) {
  auto s = theta_coefficients(3, 10, 8);
  EXPECT_EQ(s.coeffs[0], PiAdicScalar(3, 8, 1));
  EXPECT_EQ(s.coeffs[1], PiAdicScalar::pi_power(3, 8, 1));
  EXPECT_EQ(s.ords[0], 0);
  EXPECT_EQ(s.ords[1], 1);
  EXPECT_THROW(theta_coefficients(3, 5, 0), PrecisionError);
  EXPECT_THROW(theta_coefficients(4, 5, 8), PreconditionError);
}

TEST(Splitting, MatchesProductOfExponentials) {
  for (unsigned p : {3u, 5u}) {
    auto a = splitting_exact(p, 40);
    auto b = splitting_by_product(p, 40);
    for (long i = 0; i <= 40; ++i) EXPECT_EQ(a[i], b[i]) << "p=" << p << " i=" << i;
  }
}

TEST(Splitting, ValuationBound) {
  for (unsigned p : {3u, 5u}) {
    auto s = theta_coefficients(p, 30, 40);
    for (long i = 0; i <= 30; ++i) {
      ASSERT_GE(s.ords[i], 0);
      EXPECT_GE(ExactRat(s.ords[i]), splitting_bound(p, i)) << "p=" << p << " i=" << i;
    }
  }
  // known π-orders for p = 3
  std::vector<long> expect{0, 1, 2, 3, 6, 5, 10, 9, 8, 5, 6, 7, 8, 11, 10};
  auto s = theta_coefficients(3, 14, 20);
  for (long i = 0; i < 15; ++i) EXPECT_EQ(s.ords[i], expect[i]) << i;
}

TEST(Splitting, ThetaOneIsPrimitiveRoot) {
  for (unsigned p : {3u, 5u, 7u}) {
    auto z = theta_one(p, 12);
    PiAdicScalar pw(p, 12, 1);
    for (unsigned k = 0; k < p; ++k) pw *= z;
    EXPECT_EQ(pw, PiAdicScalar(p, 12, 1));
    EXPECT_EQ((z - PiAdicScalar(p, 12, 1)).ord(), 1);
  }
}

TEST(TorusSeries, PsiExamples) {
  FamilyParams f(1, 1, 1, 1);
  TorusSeries s{f, 100, 100, {}};
  PiAdicScalar one(3, 6, 1);
  s.add(0, {3, 0}, one);
  auto t = psi_p(s, 3);
  EXPECT_EQ(t.terms.size(), 1u);
  EXPECT_EQ(t.coeff(0, {1, 0}), one);
  TorusSeries u{f, 100, 100, {}};
  u.add(0, {2, 0}, one);
  EXPECT_TRUE(psi_p(u, 3).terms.empty());
}

TEST(TorusSeries, PsiLinearAndCommutesWithMonomials) {
  FamilyParams f(2, 1, 1, 1);
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> v(-9, 9), r(0, 5), c(0, 26);
  for (int t = 0; t < 100; ++t) {
    TorusSeries s{f, 1000, 1000, {}}, u{f, 1000, 1000, {}};
    for (int k = 0; k < 6; ++k) {
      s.add(r(rng), {v(rng), v(rng)}, PiAdicScalar(3, 5, c(rng)));
      u.add(r(rng), {v(rng), v(rng)}, PiAdicScalar(3, 5, c(rng)));
    }
    auto lhs = psi_p(s + u, 3).terms, rhs = (psi_p(s, 3) + psi_p(u, 3)).terms;
    EXPECT_EQ(lhs, rhs);
    LatticePoint w{v(rng), v(rng)};
    EXPECT_EQ(psi_p(times_monomial(s, 0, 3 * w), 3).terms, times_monomial(psi_p(s, 3), 0, w).terms);
  }
}

TEST(TorusSeries, DworkSeriesConstantTerm) {
  FamilyParams f(1, 1, 1, 1);
  auto th = theta_coefficients(3, 9, 8);
  auto F = dwork_series(f, th, 9, 20);
  // constant term: λ_i λ_j λ_k with iμ + (j, k) = 0, i.e. i = j = k
  PiAdicScalar expect(3, 8);
  for (long i = 0; 3 * i <= 9; ++i) expect += th.coeffs[i] * th.coeffs[i] * th.coeffs[i];
  EXPECT_EQ(F.coeff(0, {0, 0}) + F.coeff(1, {0, 0}) + F.coeff(2, {0, 0}) + F.coeff(3, {0, 0}),
            expect);
  for (auto& [k, c] : F.terms) EXPECT_LE(weight_of(f, k.second), 9);
}

TEST(Alpha0, KloostermanShape) {
  auto fr = kloosterman();
  EXPECT_EQ(fr.U.N, 3);
  EXPECT_EQ(fr.U.shift, 0);
  EXPECT_GE(fr.U.min_ord(), 0);
  EXPECT_EQ(fr.U.low, 0);
  // unit class: constant term ≡ 1 mod π
  EXPECT_EQ((fr.U.at(0, 0, 0) - PiAdicScalar(3, 8, 1)).ord() >= 1, true);
  // exact π-orders of the constant terms
  EXPECT_EQ(fr.U.at(0, 0, 0).ord(), 0);
  EXPECT_EQ(fr.U.at(1, 1, 0).ord(), 2);
  EXPECT_EQ(fr.U.at(2, 2, 0).ord(), 4);
  EXPECT_GE(fr.omitted_bound - fr.loss, 8);
}

TEST(Alpha0, ExplicitCutoffs) {
  auto a = kloosterman();
  auto b = alpha0_matrix({1, 1, 1, 1}, 3, {8, a.W_max + 10, 12});
  for (std::size_t k = 0; k < a.U.e.size(); ++k) EXPECT_EQ(a.U.e[k], b.U.e[k]);
  EXPECT_THROW(alpha0_matrix({1, 1, 1, 1}, 3, {8, 12, 12}), PrecisionError);
}

TEST(Alpha0, Preconditions) {
  EXPECT_THROW(alpha0_matrix({1, 1, 2, 1}, 3), PreconditionError);
  EXPECT_THROW(alpha0_matrix({3, 1, 1, 1}, 3), PreconditionError);
  EXPECT_THROW(alpha0_matrix({4, 1, 1, 1}, 3), PreconditionError);  // p ≤ max(a, b)
}

TEST(Horizontality, DegenerateCases) {
  auto I = FrobMatrix::identity(3, 3, 6, 8);
  FrobMatrix G(3, 3, 6, 8);
  auto rep = horizontality_residual(I, G, 8, 6);
  for (auto& [k, v] : rep.min_ord) EXPECT_EQ(v, 8) << k;
  EXPECT_TRUE(rep.vanishes);
  // one entry perturbed by π^e Λ leaves a residual of exactly that order
  for (long e = 1; e < 6; ++e) {
    auto U = I;
    U.at(1, 2, 1) += PiAdicScalar::pi_power(3, 8, e);
    auto r = horizontality_residual(U, G, 8, 6);
    EXPECT_EQ(r.min_ord["stated"], e);
    EXPECT_FALSE(r.vanishes);
  }
  EXPECT_THROW(horizontality_residual(I, G, 9, 6), PrecisionError);
  EXPECT_THROW(horizontality_residual(I, G, 4, 7), PreconditionError);
}

TEST(Horizontality, Kloosterman) {
  auto fr = kloosterman();
  auto G = padic_connection({1, 1, 1, 1}, 3, 8, 12);
  auto rep = horizontality_residual(fr.U, G, 4, 10);
  EXPECT_TRUE(rep.vanishes);
  EXPECT_GE(rep.min_ord["stated"], 4);
  EXPECT_LT(rep.min_ord["transposed"], 4);
  EXPECT_LT(rep.min_ord["row"], 4);
  EXPECT_EQ(rep.vanishing_variants, std::vector<std::string>{"stated"});
}

TEST(Horizontality, LaurentFlagAndShiftedFlag) {
  for (auto [f, p] : std::vector<std::pair<FamilyParams, long>>{{{2, 1, 1, 1}, 3}, {{1, 2, 1, 1}, 5}, {{2, 3, 1, 1}, 5}}) {
    auto fr = alpha0_matrix(f, p, {5, 0, 0});
    auto G = padic_connection(f, p, fr.U.M, fr.L_max);
    auto rep = horizontality_residual(fr.U, G, 4, fr.L_max);
    EXPECT_TRUE(rep.vanishes) << f.str();
  }
}

TEST(Specialize, Kloosterman) {
  auto fr = kloosterman();
  for (long lam : {1, 2}) {
    auto P = l_polynomial(exp_sums({1, 1, 1, 1}, 3, lam, 3));
    auto rep = specialize_det_compare(fr, lam, P, 4);
    EXPECT_TRUE(rep.agree) << lam;
    ASSERT_EQ(rep.det_coeffs.size(), 4u);
    EXPECT_EQ(rep.det_coeffs[0], PiAdicScalar(3, 8, 1));
    EXPECT_EQ(rep.l_coeffs[0], PiAdicScalar(3, 8, 1));
    EXPECT_FALSE(rep.det_coeffs[3].is_zero());
    for (long d : rep.diff_ord) EXPECT_GE(d, 4);
  }
  // a wrong L-polynomial is caught
  auto P = l_polynomial(exp_sums({1, 1, 1, 1}, 3, 2, 3));
  EXPECT_FALSE(specialize_det_compare(fr, 1, P, 4).agree);
  EXPECT_THROW(specialize_det_compare(fr, 1, P, 9), PrecisionError);
}

TEST(Specialize, FractionalSlopes) {
  auto fr = alpha0_matrix({2, 1, 1, 1}, 3, {6, 0, 0});
  auto P = l_polynomial(exp_sums({2, 1, 1, 1}, 3, 1, 5));
  EXPECT_TRUE(specialize_det_compare(fr, 1, P, 6).agree);
}

TEST(TruncatedPadic, ReductionAgreesWithLaurent) {
  FamilyParams f(2, 1, 1, 1);
  auto lam = teichmuller(5, 6, 2);
  TruncatedPadicScalars R(5, 6, lam);
  Reducer<TruncatedPadicScalars> red(f, R);
  Reducer<LaurentScalars> ref(f, LaurentScalars{});
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> x(-6, 6);
  for (int t = 0; t < 100; ++t) {
    LatticePoint v{x(rng), x(rng)};
    const auto& a = red.coords(v);
    const auto& b = ref.coords(v);
    for (std::size_t i = 0; i < a.size(); ++i) {
      PiAdicScalar e(5, 6);
      for (auto& [k, q] : b[i].terms()) e += R.from_rational(q) * R.lambda_power(k);
      EXPECT_EQ(a[i], e);
    }
  }
}
