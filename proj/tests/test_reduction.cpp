#include <gtest/gtest.h>

#include <random>

#include "gks/reduction.hpp"

using namespace gks;

namespace {

const std::vector<FamilyParams> kFamilies{{1, 1, 1, 1}, {2, 1, 1, 1}, {1, 1, 2, 1}, {2, 3, 1, 1},
                                          {1, 2, 1, 3}, {3, 2, 5, 3}, {3, 4, 5, 3}, {1, 1, 1, 2}};

template <class Ring>
CohomClass<typename Ring::Scalar> mono(const Ring& R, LatticePoint v) {
  return {{v, R.one()}};
}

template <class Ring>
void soundness_sweep(const FamilyParams& f, const Ring& R, unsigned seed) {
  Reducer<Ring> red(f, R);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> x(-3 * f.a, 3 * f.a), y(-3 * f.b, 3 * f.b);
  for (int t = 0; t < 100; ++t) {
    auto h = mono(R, {x(rng), y(rng)});
    auto cert = red.reduce_to_basis(h);
    ASSERT_TRUE(verify_certificate(cert, h, f, R)) << f.str();
    // memoized dense coordinates agree with the certificate
    const auto& dense = red.coords(h.begin()->first);
    for (std::size_t i = 0; i < dense.size(); ++i) {
      auto it = cert.coords.find(red.basis().points[i]);
      auto c = it == cert.coords.end() ? R.zero() : it->second;
      EXPECT_TRUE(c == dense[i]);
    }
  }
}

}  // namespace

TEST(ApplyD, Examples) {
  FamilyParams f(1, 1, 1, 1);
  PrimeFieldScalars R(3, 1);
  auto d1 = apply_D(1, mono(R, {0, 0}), f, R);
  EXPECT_EQ(d1, (CohomClass<Fp>{{{-1, -1}, Fp{2, 3}}, {{1, 0}, Fp{1, 3}}}));
  EXPECT_TRUE(apply_D(2, CohomClass<Fp>{}, f, R).empty());

  RationalFunctionScalars Q;
  auto rel = apply_D(1, mono(Q, {0, 0}), f, Q);
  EXPECT_EQ(rel.at({1, 0}), RationalFunction(1));
  EXPECT_EQ(rel.at({-1, -1}), -RationalFunction::var());
}

TEST(Reduce, BasisMonomialIsFixed) {
  FamilyParams f(2, 1, 1, 1);
  RationalFunctionScalars Q;
  Reducer<RationalFunctionScalars> red(f, Q);
  for (auto v : basis_set(f).points) {
    auto cert = red.reduce_to_basis(mono(Q, v));
    EXPECT_EQ(cert.coords.size(), 1u);
    EXPECT_EQ(cert.coords.at(v), RationalFunction(1));
    EXPECT_TRUE(cert.h1.empty() && cert.h2.empty());
  }
}

TEST(Reduce, MuMonomialForKloosterman) {
  FamilyParams f(1, 1, 1, 1);
  PrimeFieldScalars R(3, 1);
  Reducer<PrimeFieldScalars> red(f, R);
  auto cert = red.reduce_to_basis(mono(R, {-1, -1}));
  EXPECT_EQ(cert.coords.size(), 1u);
  EXPECT_EQ(cert.coords.at({1, 0}).v, 1);
  EXPECT_TRUE(verify_certificate(cert, mono(R, {-1, -1}), f, R));
}

TEST(Reduce, BoxStepMatchesClaimOneForm) {
  // c, d > 1 with a point of the box below the lower boundary of B
  FamilyParams f(3, 2, 5, 3);
  LatticePoint u{3, -2};
  ASSERT_FALSE(in_basis(f, u));
  StepTable table(f);
  const Step& s = table.step(u);
  const LatticePoint w{u.v1 - f.a, u.v2};
  std::map<LatticePoint, ExactRat> mono_terms;
  for (auto& t : s.terms)
    if (t.l == 0) mono_terms[t.w] = t.q;
  EXPECT_EQ(mono_terms.at(w), rat(f.c * u.v2 - (u.v1 - f.a) * f.d, f.a * f.d));
  EXPECT_EQ(mono_terms.at({w.v1, w.v2 + f.b}), rat(f.b * f.c, f.a * f.d));
}

TEST(Reduce, SoundnessOverPrimeField) {
  unsigned seed = 1;
  for (auto& f : kFamilies)
    for (long p : {7L, 11L})
      for (long lambda : {1L, 2L, 5L}) soundness_sweep(f, PrimeFieldScalars(p, lambda), seed++);
}

TEST(Reduce, SoundnessOverRationalFunctions) {
  unsigned seed = 100;
  for (auto& f : kFamilies) soundness_sweep(f, RationalFunctionScalars{}, seed++);
}

TEST(Reduce, SoundnessOverLaurentPolynomials) {
  unsigned seed = 200;
  for (auto& f : kFamilies) soundness_sweep(f, LaurentScalars{}, seed++);
}

TEST(Reduce, IdempotentOnReducedClasses) {
  FamilyParams f(1, 2, 1, 3);
  RationalFunctionScalars Q;
  Reducer<RationalFunctionScalars> red(f, Q);
  auto cert = red.reduce_to_basis(mono(Q, {5, -7}));
  CohomClass<RationalFunction> reduced(cert.coords.begin(), cert.coords.end());
  auto again = red.reduce_to_basis(reduced);
  EXPECT_EQ(again.coords, cert.coords);
  EXPECT_TRUE(again.h1.empty() && again.h2.empty());
}

TEST(Reduce, Linearity) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<long> x(-8, 8), s(1, 10);
  for (auto& f : kFamilies) {
    PrimeFieldScalars R(13, 3);
    Reducer<PrimeFieldScalars> red(f, R);
    for (int t = 0; t < 100; ++t) {
      LatticePoint u{x(rng), x(rng)}, v{x(rng), x(rng)};
      if (u == v) continue;
      Fp alpha{s(rng), 13};
      auto both = red.reduce_to_basis({{u, alpha}, {v, R.one()}});
      auto cu = red.reduce_to_basis(mono(R, u)), cv = red.reduce_to_basis(mono(R, v));
      for (auto& b : basis_set(f).points) {
        auto get = [&](auto& c) { return c.coords.count(b) ? c.coords.at(b) : R.zero(); };
        EXPECT_EQ(get(both), alpha * get(cu) + get(cv));
      }
    }
  }
}

TEST(Reduce, PerturbedCertificateFails) {
  FamilyParams f(2, 1, 1, 1);
  PrimeFieldScalars R(5, 2);
  Reducer<PrimeFieldScalars> red(f, R);
  auto h = mono(R, {4, -3});
  auto cert = red.reduce_to_basis(h);
  ASSERT_TRUE(verify_certificate(cert, h, f, R));
  auto bad = cert;
  bad.coords.begin()->second = bad.coords.begin()->second + R.one();
  EXPECT_FALSE(verify_certificate(bad, h, f, R));
  EXPECT_TRUE(verify_certificate(ReductionCertificate<Fp>{}, CohomClass<Fp>{}, f, R));
}

TEST(Reduce, DivisionByVanishingScalarIsReported) {
  // a = 5 ≡ 0 mod 5 makes the descent in x1 undefined.
  FamilyParams f(5, 2, 1, 1);
  Reducer<PrimeFieldScalars> red(f, PrimeFieldScalars(5, 1));
  try {
    red.reduce_to_basis({{{9, 1}, Fp{1, 5}}});
    FAIL() << "expected a division error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("divides by"), std::string::npos);
  }
}

TEST(Reduce, EulerRelationsOfTheUnitClass) {
  RationalFunctionScalars Q;
  const RationalFunction L = RationalFunction::var();
  for (auto& f : kFamilies) {
    Reducer<RationalFunctionScalars> red(f, Q);
    // a·x^{(a,0)} and c·Λx^μ are the images of the unit under aD'_1 and cD'_Λ.
    CohomClass<RationalFunction> e1{{{f.a, 0}, RationalFunction(f.a)}, {mu(f), -RationalFunction(f.c) * L}};
    CohomClass<RationalFunction> e2{{{0, f.b}, RationalFunction(f.b)}, {mu(f), -RationalFunction(f.d) * L}};
    for (auto& h : {e1, e2}) {
      auto cert = red.reduce_to_basis(h);
      EXPECT_TRUE(cert.coords.empty()) << f.str();
      EXPECT_TRUE(verify_certificate(cert, h, f, Q));
    }
  }
}

TEST(Connection, KloostermanCompanion) {
  RationalFunction L = RationalFunction::var();
  RFMatrix G = connection_on_flag_basis({1, 1, 1, 1});
  RFMatrix expect(3, 3, {});
  expect(0, 1) = 1;
  expect(1, 2) = 1;
  expect(2, 0) = L;
  EXPECT_EQ(G, expect);
}

TEST(Connection, FlagMatricesInvertible) {
  for (FamilyParams f : {FamilyParams(1, 1, 1, 1), FamilyParams(2, 1, 1, 1), FamilyParams(1, 1, 2, 1)}) {
    auto fd = flag_data(f);
    auto det = determinant(fd.flag, RationalFunction(), RationalFunction(1), [](auto& x) { return x.is_zero(); });
    EXPECT_FALSE(det.is_zero());
    EXPECT_EQ(fd.flag.rows(), static_cast<std::size_t>(f.N()));
  }
}

TEST(Linalg, BerkowitzMatchesDeterminant) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<long> e(-5, 5);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 5;
    Matrix<ExactRat> A(n, n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = e(rng);
    auto cp = charpoly(A, ExactRat(0), ExactRat(1));
    // det(xI − A) at x = 2
    Matrix<ExactRat> B(n, n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) B(i, j) = (i == j ? 2 : 0) - A(i, j);
    ExactRat direct = determinant(B, ExactRat(0), ExactRat(1), [](auto& x) { return x == 0; });
    ExactRat viaC = 0;
    for (auto& c : cp) viaC = viaC * 2 + c;
    EXPECT_EQ(direct, viaC);
  }
}
