#pragma once
// Toric exponential sums, the L-polynomial, and its Newton polygon.

#include <algorithm>
#include <thread>
#include <vector>

#include "cyclotomic.hpp"
#include "finite_field.hpp"

namespace gks {

inline void check_sum_inputs(const FamilyParams& f, long p, long lambda) {
  require(is_prime(p) && p > 2, "p must be an odd prime");
  require((f.a * f.b * f.c * f.d) % p != 0, "p divides abcd");
  require(((lambda % p) + p) % p != 0, "λ̄ must be a nonzero residue mod p");
}

// Residue histogram of Tr F̄(λ̄, x) over the torus of F_{p^k}. Uses x = (g^i, g^j)
// so every term is a lookup in the trace table; the i-range is split over workers.
inline std::vector<ExactInt> trace_histogram(const FamilyParams& f, long p, long lambda, unsigned k,
                                             unsigned workers = 1) {
  check_sum_inputs(f, p, lambda);
  FieldTower F(static_cast<Residue>(p), k);
  const std::vector<Residue> T = trace_table(F);
  const long m = static_cast<long>(T.size());
  const long lam = ((lambda % p) + p) % p;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(m)));

  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(p, 0));
  auto run = [&](unsigned w) {
    auto& hist = partial[w];
    for (long i = w; i < m; i += workers) {
      const long ta = T[(f.a * i) % m];
      long e = ((-f.c * i) % m + m) % m;  // exponent of x1^{-c} x2^{-d}, stepped by −d in j
      const long step = f.d % m;
      for (long j = 0; j < m; ++j) {
        hist[(ta + T[(f.b * j) % m] + lam * T[e]) % p]++;
        e -= step;
        if (e < 0) e += m;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();

  std::vector<ExactInt> total(p, 0);
  std::uint64_t visited = 0;
  for (auto& h : partial)
    for (long r = 0; r < p; ++r) total[r] += static_cast<unsigned long>(h[r]), visited += h[r];
  ensure(visited == static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m), "torus visit count mismatch");
  return total;
}

inline CycloInt exp_sum(const FamilyParams& f, long p, long lambda, unsigned k, unsigned workers = 1) {
  auto hist = trace_histogram(f, p, lambda, k, workers);
  CycloInt s = CycloInt::from_exponent_counts(static_cast<unsigned>(p), hist);
  ExactInt bound = pow_int(ExactInt(ipow(p, k) - 1), 2);
  for (auto& c : s.coeffs()) ensure(abs(c) <= bound, "exponential sum coefficient exceeds torus size");
  return s;
}

// Point-by-point evaluation in the tower; slow, used as an independent oracle.
inline CycloInt exp_sum_direct(const FamilyParams& f, long p, long lambda, unsigned k) {
  check_sum_inputs(f, p, lambda);
  FieldTower F(static_cast<Residue>(p), k);
  std::vector<ExactInt> hist(p, 0);
  const std::uint64_t m = F.size() - 1;
  for_each_torus_point(F, 0, m * m, [&](const FFElement& x1, const FFElement& x2) {
    hist[F.trace_to_prime(evaluate_family(f, F, static_cast<Residue>(((lambda % p) + p) % p), x1, x2))] += 1;
  });
  return CycloInt::from_exponent_counts(static_cast<unsigned>(p), hist);
}

struct ExpSumSeries {
  FamilyParams params;
  long p;
  unsigned a_tilde = 1;
  long lambda;
  std::vector<CycloInt> sums;  // S_1..S_K
};

inline ExpSumSeries exp_sums(const FamilyParams& f, long p, long lambda, unsigned K, unsigned workers = 1) {
  ExpSumSeries s{f, p, 1, lambda, {}};
  for (unsigned k = 1; k <= K; ++k) s.sums.push_back(exp_sum(f, p, lambda, k, workers));
  return s;
}

struct LPolynomial {
  unsigned p;
  std::vector<CycloInt> coeffs;  // A_0..A_N
  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

// exp(−Σ S_k T^k/k) through T^N, via n·A_n = −Σ_{k=1}^{n} S_k A_{n−k}.
inline LPolynomial l_polynomial(const ExpSumSeries& s) {
  const long N = s.params.N();
  require(static_cast<long>(s.sums.size()) >= N, "l_polynomial needs at least N = ad+ab+bc sums");
  const unsigned p = static_cast<unsigned>(s.p);
  std::vector<CycloRat> A{CycloRat(CycloInt(p, 1))};
  for (long n = 1; n <= N; ++n) {
    CycloRat acc(CycloInt(p, 0));
    for (long k = 1; k <= n; ++k) acc = acc + CycloRat(s.sums[k - 1]) * A[n - k];
    A.push_back((-acc).divided_by(n));
  }
  LPolynomial P{p, {}};
  for (long n = 0; n <= N; ++n) {
    ensure(A[n].is_integral(), "L-polynomial coefficient A_" + std::to_string(n) + " is not integral");
    P.coeffs.push_back(A[n].num());
  }
  return P;
}

// Coefficient of T^k in −T·d/dT log P(T), i.e. the k-th power sum predicted by P.
inline CycloInt predict_sum(const LPolynomial& P, long k) {
  require(k >= 1, "predict_sum: k >= 1");
  auto A = [&](long i) { return i <= P.degree() ? P.coeffs[i] : CycloInt(P.p, 0); };
  std::vector<CycloInt> S;
  for (long n = 1; n <= k; ++n) {
    CycloInt s = ExactInt(-n) * A(n);
    for (long j = 1; j < n; ++j) s -= S[j - 1] * A(n - j);
    S.push_back(s);
  }
  return S.back();
}

inline RationalPolygon newton_polygon(const LPolynomial& P, unsigned a_tilde = 1) {
  std::vector<HullInput> pts;
  for (long r = 0; r <= P.degree(); ++r) pts.emplace_back(ExactRat(r), ord_q(P.coeffs[r], a_tilde));
  return lower_convex_hull(pts);
}

// NP ≥ HP at every integer abscissa of the common range.
inline bool polygon_above(const RationalPolygon& upper, const RationalPolygon& lower) {
  ExactRat end = std::min(upper.vertices.back().x, lower.vertices.back().x);
  for (ExactRat x = 0; x <= end; x += 1)
    if (upper.value_at(x) < lower.value_at(x)) return false;
  return true;
}

}  // namespace gks
