#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gks/finite_field.hpp"

using namespace gks;

TEST(Irreducible, PrimeField) { EXPECT_EQ(find_irreducible(3, 1), (std::vector<Residue>{0, 1})); }

TEST(Irreducible, Quadratic) { EXPECT_EQ(find_irreducible(3, 2), (std::vector<Residue>{1, 0, 1})); }

TEST(Irreducible, CubicIsLeastByExhaustion) {
  auto f = find_irreducible(3, 3);
  EXPECT_EQ(f, (std::vector<Residue>{1, 2, 0, 1}));  // t^3 + 2t + 1
  // no root in F_3 and every smaller code has one
  for (Residue x = 0; x < 3; ++x) EXPECT_NE((x * x * x + 2 * x + 1) % 3, 0u);
  int earlier_irreducible = 0;
  for (std::uint64_t code = 0; code < 7; ++code) {
    std::vector<Residue> g{Residue(code % 3), Residue(code / 3 % 3), Residue(code / 9), 1};
    bool root = false;
    for (Residue x = 0; x < 3; ++x) root = root || (g[0] + g[1] * x + g[2] * x * x + x * x * x) % 3 == 0;
    if (!root) ++earlier_irreducible;
  }
  EXPECT_EQ(earlier_irreducible, 0);
}

TEST(Irreducible, RejectsReducibleModulus) {
  EXPECT_THROW(FieldTower(3, std::vector<Residue>{2, 0, 1}), PreconditionError);  // t^2 − 1
}

TEST(Trace, Examples) {
  FieldTower F(3, 2);
  EXPECT_EQ(F.trace_to_prime(F.one()), 2u);
  EXPECT_EQ(F.trace_to_prime(F.generator()), 0u);
  EXPECT_EQ(F.mul(F.generator(), F.generator()), F.from_residue(-1));
  EXPECT_EQ(F.trace_to_prime(F.zero()), 0u);
}

TEST(Trace, FixedByFrobenius) {
  for (unsigned k = 1; k <= 4; ++k) {
    FieldTower F(3, k);
    for (std::uint64_t i = 0; i < F.size(); ++i) {
      FFElement t = F.from_residue(F.trace_to_prime(F.element(i)));
      EXPECT_EQ(F.frobenius(t), t);
    }
  }
}

TEST(Family, Evaluate) {
  FamilyParams f(1, 1, 1, 1);
  FieldTower F(3, 1);
  EXPECT_EQ(evaluate_family(f, F, 1, F.from_residue(1), F.from_residue(1)), F.from_residue(0));
  EXPECT_EQ(evaluate_family(f, F, 1, F.from_residue(1), F.from_residue(2)), F.from_residue(2));
  EXPECT_THROW(evaluate_family(f, F, 1, F.zero(), F.one()), PreconditionError);
}

TEST(Inverse, Multiplicative) {
  std::mt19937 rng(5);
  FieldTower F(5, 3);
  std::uniform_int_distribution<std::uint64_t> pick(1, F.size() - 1);
  for (int t = 0; t < 200; ++t) {
    auto x = F.element(pick(rng)), y = F.element(pick(rng));
    EXPECT_EQ(F.inv(F.mul(x, y)), F.mul(F.inv(x), F.inv(y)));
    EXPECT_EQ(F.mul(x, F.inv(x)), F.one());
  }
}

TEST(Torus, PartitionVisitsEachPointOnce) {
  FieldTower F(3, 2);
  const std::uint64_t m = F.size() - 1, total = m * m;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  std::uint64_t visits = 0;
  for (std::uint64_t start = 0; start < total; start += 13)
    for_each_torus_point(F, start, std::min(total, start + 13), [&](const FFElement& x, const FFElement& y) {
      EXPECT_FALSE(F.is_zero(x));
      EXPECT_FALSE(F.is_zero(y));
      seen.insert({F.index(x), F.index(y)});
      ++visits;
    });
  EXPECT_EQ(visits, total);
  EXPECT_EQ(seen.size(), total);
}

TEST(Primitive, GeneratesUnitGroup) {
  FieldTower F(3, 3);
  auto g = F.primitive_element();
  std::set<std::uint64_t> powers;
  FFElement x = F.one();
  for (std::uint64_t e = 0; e + 1 < F.size(); ++e, x = F.mul(x, g)) powers.insert(F.index(x));
  EXPECT_EQ(powers.size(), F.size() - 1);
}
