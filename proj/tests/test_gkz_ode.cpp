#include <gtest/gtest.h>

#include <random>

#include "gks/gkz_ode.hpp"

using namespace gks;

namespace {
std::vector<ExactInt> ints(std::initializer_list<long> l) { return {l.begin(), l.end()}; }
std::vector<ExactRat> rats(std::initializer_list<long> l) { return {l.begin(), l.end()}; }

std::vector<FamilyParams> random_params(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> e(1, 9);
  std::vector<FamilyParams> out;
  while (static_cast<int>(out.size()) < count) {
    long a = e(rng), b = e(rng), c = e(rng), d = e(rng);
    if (FamilyParams::valid(a, b, c, d)) out.emplace_back(a, b, c, d);
  }
  return out;
}

const std::vector<FamilyParams> kFlagship{{1, 1, 1, 1}, {2, 1, 1, 1}, {1, 1, 2, 1}};
}  // namespace

TEST(Lattice, Examples) {
  EXPECT_EQ(relation_lattice({1, 1, 1, 1}), ints({1, 1, 1}));
  EXPECT_EQ(relation_lattice({2, 3, 1, 1}), ints({3, 2, 6}));
}

TEST(Lattice, RandomizedClosedForm) {
  for (auto& f : random_params(120, 5)) {
    auto l = relation_lattice(f);
    EXPECT_EQ(l, ints({f.b * f.c, f.a * f.d, f.a * f.b})) << f.str();
    EXPECT_EQ(gcd(gcd(l[0], l[1]), l[2]), 1);
    IntMatrix A = a_matrix(f);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(A(i, 0) * l[0] + A(i, 1) * l[1] + A(i, 2) * l[2], 0);
  }
}

TEST(Gkz, BoxAndEuler) {
  EXPECT_EQ(gkz_operators({1, 1, 1, 1}).box_exponents, ints({1, 1, 1}));
  auto g = gkz_operators({2, 1, 1, 1});
  EXPECT_EQ(g.box_exponents, ints({1, 2, 2}));
  EXPECT_EQ(g.d1_over_dlambda, rat(1, 2));
  EXPECT_EQ(g.d2_over_dlambda, 1);
}

TEST(PicardFuchs, Kloosterman) {
  auto op = picard_fuchs_operator({1, 1, 1, 1});
  ASSERT_EQ(op.order(), 3);
  EXPECT_EQ(op.coeffs[3], QPoly(ExactRat(1)));
  EXPECT_EQ(op.coeffs[0], QPoly::monomial(ExactRat(-1), 1));
  EXPECT_TRUE(op.coeffs[1].is_zero() && op.coeffs[2].is_zero());
}

TEST(PicardFuchs, TwoOneOneOne) {
  auto op = picard_fuchs_operator({2, 1, 1, 1});
  ASSERT_EQ(op.order(), 5);
  EXPECT_EQ(op.coeffs[5], QPoly(rat(1, 2)));
  // (θ/2)(θ−1)θ(θ−1)θ = θ^5/2 − θ^4 + θ^3/2
  EXPECT_EQ(op.coeffs[4], QPoly(ExactRat(-1)));
  EXPECT_EQ(op.coeffs[3], QPoly(rat(1, 2)));
  EXPECT_EQ(op.coeffs[0], QPoly::monomial(ExactRat(-1), 2));
}

TEST(PicardFuchs, OrderIsBasisSize) {
  for (auto& f : random_params(25, 8)) {
    auto op = picard_fuchs_operator(f);
    EXPECT_EQ(op.order(), static_cast<long>(basis_set(f).points.size()));
    ExactRat lead = ExactRat(1);
    for (long i = 0; i < f.b * f.c; ++i) lead *= rat(f.c, f.a);
    for (long j = 0; j < f.a * f.d; ++j) lead *= rat(f.d, f.b);
    EXPECT_EQ(op.coeffs.back(), QPoly(lead));
  }
}

TEST(Companion, Examples) {
  auto G = companion_matrix(picard_fuchs_operator({1, 1, 1, 1}));
  EXPECT_EQ(G(2, 0), RationalFunction::var());
  EXPECT_TRUE(G(2, 1).is_zero() && G(2, 2).is_zero());
  auto G2 = companion_matrix(picard_fuchs_operator({2, 1, 1, 1}));
  EXPECT_EQ(G2(4, 0), RationalFunction(QPoly::monomial(ExactRat(2), 2)));
  for (std::size_t i = 0; i + 1 < 5; ++i) EXPECT_EQ(G2(i, i + 1), RationalFunction(1));
}

TEST(Companion, EqualsReductionConnection) {
  for (auto& f : kFlagship) EXPECT_EQ(companion_matrix(picard_fuchs_operator(f)), connection_on_flag_basis(f)) << f.str();
}

TEST(Indicial, Examples) {
  EXPECT_EQ(indicial_roots(picard_fuchs_operator({1, 1, 1, 1})), rats({0, 0, 0}));
  EXPECT_EQ(indicial_roots(picard_fuchs_operator({2, 1, 1, 1})), rats({0, 0, 0, 1, 1}));
  auto f = FamilyParams(1, 1, 2, 1);
  auto r = indicial_roots(picard_fuchs_operator(f));
  EXPECT_EQ(r, (std::vector<ExactRat>{0, 0, 0, rat(1, 2)}));
  for (auto& g : random_params(10, 13)) EXPECT_EQ(static_cast<long>(indicial_roots(picard_fuchs_operator(g), g).size()), g.N());
  EXPECT_EQ(indicial_roots(picard_fuchs_operator({2, 1, 1, 1}), {2, 1, 1, 1}), rats({0, 0, 0, 1, 1}));
}

TEST(FormalSolutions, KloostermanAnalyticSolution) {
  auto sols = formal_solutions(picard_fuchs_operator({1, 1, 1, 1}), 12);
  ASSERT_EQ(sols.size(), 3u);
  auto& y0 = sols[0];
  EXPECT_EQ(y0.log_degree(), 0);
  ExactRat fact = 1;
  for (long n = 0; n < 12; ++n) {
    if (n > 0) fact *= n;
    EXPECT_EQ(y0.c[n][0], 1 / (fact * fact * fact));
  }
  std::vector<long> logs;
  for (auto& s : sols) logs.push_back(s.log_degree());
  EXPECT_EQ(logs, (std::vector<long>{0, 1, 2}));
}

TEST(FormalSolutions, SubstituteToZero) {
  for (auto& f : kFlagship) {
    auto op = picard_fuchs_operator(f);
    auto sols = formal_solutions(op, 4 * f.N());
    ASSERT_EQ(static_cast<long>(sols.size()), f.N());
    EXPECT_TRUE(solutions_independent(sols));
    for (auto& s : sols) {
      auto r = apply_operator(op, s);
      for (auto& row : r.c)
        for (auto& x : row) EXPECT_EQ(x, 0) << f.str();
    }
  }
}

TEST(FormalSolutions, IntegerSeparatedRootsAndMoreFamilies) {
  for (FamilyParams f : {FamilyParams(2, 3, 1, 1), FamilyParams(1, 2, 1, 3), FamilyParams(3, 2, 5, 3)}) {
    auto op = picard_fuchs_operator(f);
    auto sols = formal_solutions(op, 2 * f.a * f.b + 3, f);
    ASSERT_EQ(static_cast<long>(sols.size()), f.N());
    EXPECT_TRUE(solutions_independent(sols));
    for (auto& s : sols)
      for (auto& row : apply_operator(op, s).c)
        for (auto& x : row) EXPECT_EQ(x, 0) << f.str();
  }
}
