#pragma once
// GKZ data of the family, the Picard–Fuchs operator in θ = Λ d/dΛ, its
// companion matrix, indicial roots and formal solutions at Λ = 0.

#include <algorithm>
#include <map>
#include <vector>

#include "linalg.hpp"
#include "polynomial.hpp"
#include "reduction.hpp"

namespace gks {

inline IntMatrix a_matrix(const FamilyParams& f) { return IntMatrix{{f.a, 0, -f.c}, {0, f.b, -f.d}}; }

inline std::vector<ExactInt> relation_lattice(const FamilyParams& f) {
  auto k = integer_kernel(a_matrix(f));
  ensure(k.size() == 1, "relation lattice of the family should have rank one");
  return k[0];
}

struct GkzSystem {
  std::vector<ExactInt> lattice;        // (bc, ad, ab)
  std::vector<ExactInt> box_exponents;  // positive part of the generator
  ExactRat d1_over_dlambda, d2_over_dlambda;  // D'_1 = (c/a) D'_Λ, D'_2 = (d/b) D'_Λ
};

// Euler relations a·D'_1 − c·D'_Λ = 0 and b·D'_2 − d·D'_Λ = 0 come from the rows
// of A acting on (v1, v2, Λ) with α = 0.
inline GkzSystem gkz_operators(const FamilyParams& f) {
  GkzSystem g;
  g.lattice = relation_lattice(f);
  for (auto& x : g.lattice) {
    ensure(x > 0, "generator of the relation lattice should be positive");
    g.box_exponents.push_back(x);
  }
  IntMatrix A = a_matrix(f);
  g.d1_over_dlambda = rat(-ExactInt(A(0, 2)), A(0, 0));
  g.d2_over_dlambda = rat(-ExactInt(A(1, 2)), A(1, 1));
  return g;
}

// Σ_i q_i(Λ) θ^i with the Λ-coefficients on the left.
struct ThetaOperator {
  std::vector<QPoly> coeffs;

  long order() const { return static_cast<long>(coeffs.size()) - 1; }
  long lambda_degree() const {
    long d = 0;
    for (auto& q : coeffs) d = std::max(d, q.degree());
    return d;
  }
  // P_k(θ): the part carrying Λ^k.
  QPoly part(long k) const {
    std::vector<ExactRat> c;
    for (auto& q : coeffs) c.push_back(q[static_cast<std::size_t>(k)]);
    return QPoly(std::move(c));
  }
};

// Π_{i<bc}(cθ/a − i)·Π_{j<ad}(dθ/b − j)·Π_{k<ab}(θ − k) as a polynomial in θ.
inline QPoly hypergeometric_part(const FamilyParams& f) {
  QPoly P(ExactRat(1));
  for (long i = 0; i < f.b * f.c; ++i) P *= QPoly(std::vector<ExactRat>{ExactRat(-i), rat(f.c, f.a)});
  for (long j = 0; j < f.a * f.d; ++j) P *= QPoly(std::vector<ExactRat>{ExactRat(-j), rat(f.d, f.b)});
  for (long k = 0; k < f.a * f.b; ++k) P *= QPoly(std::vector<ExactRat>{ExactRat(-k), ExactRat(1)});
  return P;
}

inline ThetaOperator picard_fuchs_operator(const FamilyParams& f) {
  QPoly P = hypergeometric_part(f);
  ThetaOperator op;
  for (long i = 0; i <= P.degree(); ++i) op.coeffs.push_back(QPoly(P[i]));
  op.coeffs[0] -= QPoly::monomial(ExactRat(1), static_cast<std::size_t>(f.a * f.b));
  ensure(op.order() == f.N(), "Picard–Fuchs order differs from N");
  return op;
}

// G^t for θ^N = Σ a_i θ^i: ones above the diagonal, last row (a_0, ..., a_{N−1}).
inline RFMatrix companion_matrix(const ThetaOperator& op) {
  const long N = op.order();
  require(N >= 1, "companion_matrix: operator of order zero");
  const QPoly& lead = op.coeffs.back();
  require(lead.degree() == 0, "companion_matrix: leading θ-coefficient must be a nonzero constant");
  RFMatrix G(N, N, {});
  for (long i = 0; i + 1 < N; ++i) G(i, i + 1) = 1;
  for (long i = 0; i < N; ++i) G(N - 1, i) = RationalFunction(op.coeffs[i].scaled(-1 / lead[0]));
  return G;
}

namespace detail {

// Divide every copy of each candidate out of P; returns the roots found.
inline std::vector<ExactRat> strip_roots(QPoly& P, const std::vector<ExactRat>& candidates) {
  std::vector<ExactRat> roots;
  for (auto& r : candidates) {
    QPoly lin(std::vector<ExactRat>{-r, ExactRat(1)});
    for (;;) {
      auto [q, rem] = P.divmod(lin);
      if (!rem.is_zero()) break;
      roots.push_back(r);
      P = q;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace detail

// Roots of the θ-polynomial at Λ = 0 for the family's operator, read off the
// factored form and confirmed by exact division.
inline std::vector<ExactRat> indicial_roots(const ThetaOperator& op, const FamilyParams& f) {
  std::vector<ExactRat> cand;
  for (long i = 0; i < f.b * f.c; ++i) cand.push_back(rat(i * f.a, f.c));
  for (long j = 0; j < f.a * f.d; ++j) cand.push_back(rat(j * f.b, f.d));
  for (long k = 0; k < f.a * f.b; ++k) cand.push_back(ExactRat(k));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  QPoly P = op.part(0);
  auto roots = detail::strip_roots(P, cand);
  ensure(P.degree() == 0 && static_cast<long>(roots.size()) == f.N(), "indicial polynomial does not factor as expected");
  return roots;
}

// Generic rational-root search; meant for operators of small degree.
inline std::vector<ExactRat> indicial_roots(const ThetaOperator& op) {
  QPoly P = op.part(0);
  require(!P.is_zero(), "indicial polynomial vanishes");
  auto roots = detail::strip_roots(P, {ExactRat(0)});
  ExactInt L = 1;
  for (auto& c : P.coeffs()) L = lcm(L, ExactInt(c.get_den()));
  auto divisors = [](ExactInt n) {
    n = abs(n);
    require(n < ExactInt(1000000000), "indicial_roots: coefficients too large for rational-root search");
    std::vector<ExactRat> ds;
    for (ExactInt k = 1; k * k <= n; ++k)
      if (mpz_divisible_p(n.get_mpz_t(), k.get_mpz_t())) {
        ds.emplace_back(k);
        if (k * k != n) ds.emplace_back(n / k);
      }
    return ds;
  };
  if (P.degree() > 0) {
    std::vector<ExactRat> cand;
    for (auto& u : divisors(ExactRat(P[0] * L).get_num()))
      for (auto& v : divisors(ExactRat(P.lead() * L).get_num())) cand.push_back(u / v), cand.push_back(-u / v);
    auto more = detail::strip_roots(P, cand);
    roots.insert(roots.end(), more.begin(), more.end());
  }
  require(P.degree() == 0, "indicial polynomial has non-rational roots");
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Σ_{i<order} Σ_j c[i][j] Λ^{ρ+i} log(Λ)^j
struct LogSeries {
  ExactRat rho;
  long order = 0;
  std::vector<std::vector<ExactRat>> c;  // c[i][j]

  long log_degree() const {
    long d = -1;
    for (auto& row : c)
      for (long j = 0; j < static_cast<long>(row.size()); ++j)
        if (row[j] != 0) d = std::max(d, j);
    return d;
  }
  // Lowest Λ-power with a nonzero coefficient, and the top log power there.
  std::pair<long, long> leading() const {
    for (long i = 0; i < order; ++i)
      for (long j = static_cast<long>(c[i].size()) - 1; j >= 0; --j)
        if (c[i][j] != 0) return {i, j};
    return {order, -1};
  }
};

// op applied to y, exact through Λ^{ρ+order−1}; returns the residual series.
inline LogSeries apply_operator(const ThetaOperator& op, const LogSeries& y) {
  const std::size_t J = y.c.empty() ? 1 : y.c[0].size();
  LogSeries r{y.rho, y.order, std::vector<std::vector<ExactRat>>(y.order, std::vector<ExactRat>(J, 0))};
  for (long i = 0; i < y.order; ++i) {
    // θ^t (Λ^{ρ+i} Σ_j c_j L^j), applied step by step
    std::vector<ExactRat> v = y.c[i];
    const ExactRat e = y.rho + i;
    for (long t = 0; t <= op.order(); ++t) {
      for (long k = 0; k <= op.coeffs[t].degree(); ++k) {
        if (i + k >= y.order) break;
        const ExactRat q = op.coeffs[t][k];
        if (q == 0) continue;
        for (std::size_t j = 0; j < J; ++j) r.c[i + k][j] += q * v[j];
      }
      std::vector<ExactRat> w(J, 0);
      for (std::size_t j = 0; j < J; ++j) {
        w[j] += e * v[j];
        if (j + 1 < J) w[j] += ExactRat(static_cast<long>(j + 1)) * v[j + 1];
      }
      v = std::move(w);
    }
  }
  return r;
}

namespace detail {

// Coefficients β_t of P(x + s) = Σ β_t s^t, truncated at s^J.
inline std::vector<ExactRat> shifted_taylor(const QPoly& P, const ExactRat& x, std::size_t J) {
  std::vector<ExactRat> beta(J, 0);
  QPoly D = P;
  ExactRat fact = 1;
  for (std::size_t t = 0; t < J; ++t) {
    if (t > 0) fact *= static_cast<long>(t);
    beta[t] = D.eval(x) / fact;
    D = D.derivative();
  }
  return beta;
}

// (Σ β_t S^t) X where (S X)[j] = X[j+1].
inline std::vector<ExactRat> apply_toeplitz(const std::vector<ExactRat>& beta, const std::vector<ExactRat>& X) {
  const std::size_t J = X.size();
  std::vector<ExactRat> out(J, 0);
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t t = 0; j + t < J; ++t) out[j] += beta[t] * X[j + t];
  return out;
}

// Inverse of a unit in Q[s]/s^J.
inline std::vector<ExactRat> series_inverse(const std::vector<ExactRat>& u) {
  const std::size_t J = u.size();
  std::vector<ExactRat> v(J, 0);
  v[0] = 1 / u[0];
  for (std::size_t n = 1; n < J; ++n) {
    ExactRat s = 0;
    for (std::size_t t = 1; t <= n; ++t) s += u[t] * v[n - t];
    v[n] = -s / u[0];
  }
  return v;
}

}  // namespace detail

// Frobenius method. Roots are grouped by class mod Z; inside a class the
// coefficient of Λ^{ρ+n} is a vector C_n over L^j/j! (j < class multiplicity),
// on which θ acts as (ρ+n) + S with S the shift. The recurrence
//   P_0(ρ+n+S) C_n = −Σ_{k≥1} P_k(ρ+n−k+S) C_{n−k}
// has free parameters exactly at the roots of the class.
inline std::vector<LogSeries> formal_solutions(const ThetaOperator& op, long order, std::vector<ExactRat> roots) {
  require(order >= 1, "formal_solutions: order >= 1");
  require(static_cast<long>(roots.size()) == op.order(), "indicial polynomial degree drops; Λ = 0 is not regular singular");

  std::map<ExactRat, std::map<long, long>> classes;  // base ↦ (offset ↦ multiplicity)
  {
    std::vector<ExactRat> bases;
    for (auto& r : roots) {
      auto it = std::find_if(bases.begin(), bases.end(), [&](const ExactRat& b) { return ExactRat(r - b).get_den() == 1; });
      if (it == bases.end()) bases.push_back(r);
      else if (r < *it) *it = r;
    }
    for (auto& r : roots) {
      auto it = std::find_if(bases.begin(), bases.end(), [&](const ExactRat& b) { return ExactRat(r - b).get_den() == 1; });
      classes[*it][ExactRat(r - *it).get_num().get_si()]++;
    }
  }

  const long K = op.lambda_degree();
  std::vector<LogSeries> sols;
  for (auto& [rho, offsets] : classes) {
    std::size_t J = 0;
    for (auto& [n, m] : offsets) J += static_cast<std::size_t>(m);

    for (auto& [start, mult] : offsets)
      for (long slot = 0; slot < mult; ++slot) {
        std::vector<std::vector<ExactRat>> C(order, std::vector<ExactRat>(J, 0));
        for (long n = start; n < order; ++n) {
          std::vector<ExactRat> R(J, 0);
          for (long k = 1; k <= K && k <= n - start; ++k) {
            auto beta = detail::shifted_taylor(op.part(k), rho + (n - k), J);
            auto term = detail::apply_toeplitz(beta, C[n - k]);
            for (std::size_t j = 0; j < J; ++j) R[j] -= term[j];
          }
          auto beta0 = detail::shifted_taylor(op.part(0), rho + n, J);
          std::size_t m = 0;
          while (m < J && beta0[m] == 0) ++m;
          // β0 = S^m U: solve S^m X = R with X = U C.
          for (std::size_t j = J - m; j < J; ++j) ensure(R[j] == 0, "Frobenius recurrence is inconsistent");
          std::vector<ExactRat> X(J, 0);
          for (std::size_t j = 0; j + m < J; ++j) X[j + m] = R[j];
          std::vector<ExactRat> U(beta0.begin() + static_cast<long>(m), beta0.end());
          U.resize(J, 0);
          if (m == J) U[0] = 1;  // β0 vanishes on the whole class; any C_n solves
          if (n == start) {
            ensure(static_cast<long>(m) == mult, "indicial multiplicity mismatch");
            X[static_cast<std::size_t>(slot)] += U[0];  // normalizes C_n[slot] = 1
          }
          C[n] = detail::apply_toeplitz(detail::series_inverse(U), X);
        }
        LogSeries y{rho, order, std::vector<std::vector<ExactRat>>(order, std::vector<ExactRat>(J, 0))};
        for (long i = 0; i < order; ++i) {
          ExactRat fact = 1;
          for (std::size_t j = 0; j < J; ++j) {
            if (j > 0) fact *= static_cast<long>(j);
            y.c[i][j] = C[i][j] / fact;
          }
        }
        sols.push_back(std::move(y));
      }
  }
  return sols;
}

inline std::vector<LogSeries> formal_solutions(const ThetaOperator& op, long order) {
  return formal_solutions(op, order, indicial_roots(op));
}

inline std::vector<LogSeries> formal_solutions(const ThetaOperator& op, long order, const FamilyParams& f) {
  return formal_solutions(op, order, indicial_roots(op, f));
}

// Coefficient matrix of the solutions at their leading (power, log) keys.
inline bool solutions_independent(const std::vector<LogSeries>& sols) {
  std::vector<std::tuple<ExactRat, long, long>> keys;
  for (auto& s : sols) {
    auto [i, j] = s.leading();
    if (j < 0) return false;
    keys.emplace_back(s.rho, i, j);
  }
  const std::size_t n = sols.size();
  Matrix<ExactRat> M(n, n, 0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      auto& [rho, i, j] = keys[k];
      const auto& s = sols[r];
      if (s.rho != rho || i >= s.order || j >= static_cast<long>(s.c[i].size())) continue;
      M(r, k) = s.c[i][j];
    }
  return determinant(M, ExactRat(0), ExactRat(1), [](const ExactRat& x) { return x == 0; }) != 0;
}

}  // namespace gks
