#pragma once
// Frobenius matrix U(Λ) of the family on the flag basis, built from Dwork's
// splitting function, with certified π-adic truncation; the horizontality
// identity it must satisfy; specialization against the L-polynomial.

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "gkz_ode.hpp"
#include "lfunction.hpp"
#include "padic.hpp"
#include "reduction.hpp"

namespace gks {

// ----------------------------------------------------------------------------
// Splitting function θ(t) = exp π(t − t^p) = Σ λ_i t^i.

// Lower bound for ord_π λ_i: i(p−1)²/p².
inline ExactRat splitting_bound(unsigned p, long i) {
  return ExactRat(i * static_cast<long>((p - 1) * (p - 1)), static_cast<long>(p * p));
}

// λ_i = Σ_{m ≤ i/p} (−1)^m π^{i−(p−1)m} / ((i−pm)! m!), exactly.
inline std::vector<PiRational> splitting_exact(unsigned p, long I_max) {
  std::vector<PiRational> out;
  for (long i = 0; i <= I_max; ++i) {
    PiRational s(p);
    for (long m = 0; p * m <= static_cast<unsigned long>(i); ++m) {
      ExactRat q(ExactInt(m % 2 ? -1 : 1), factorial(static_cast<unsigned long>(i - static_cast<long>(p) * m)) *
                                                   factorial(static_cast<unsigned long>(m)));
      q.canonicalize();
      s += PiRational::pi_power(p, i - static_cast<long>(p - 1) * m).scaled(q);
    }
    out.push_back(std::move(s));
  }
  return out;
}

struct SplittingSeries {
  unsigned p = 0;
  long M = 0;
  std::vector<PiAdicScalar> coeffs;  // λ_0..λ_{I_max} mod π^M
  std::vector<long> ords;            // exact ord_π λ_i; −1 marks λ_i = 0
};

inline SplittingSeries theta_coefficients(unsigned p, long I_max, long M) {
  require(p > 2 && is_prime(p), "theta_coefficients: p must be an odd prime");
  require(I_max >= 0, "theta_coefficients: I_max >= 0");
  if (M < 1) throw PrecisionError("theta_coefficients: π-precision must be at least 1 to hold λ_1 = π");
  SplittingSeries s{p, M, {}, {}};
  auto exact = splitting_exact(p, I_max);
  for (long i = 0; i <= I_max; ++i) {
    auto o = exact[i].ord();
    if (o) ensure(ExactRat(*o) >= splitting_bound(p, i), "splitting coefficient λ_" + std::to_string(i) + " violates its valuation bound");
    s.ords.push_back(o ? *o : -1);
    s.coeffs.push_back(PiAdicScalar::from_rational(p, M, exact[i]));
  }
  return s;
}

// θ(1) = Σ λ_i mod π^M, a primitive p-th root of unity.
inline PiAdicScalar theta_one(unsigned p, long M) {
  long I = 1;
  while (splitting_bound(p, I + 1) < M) ++I;
  auto s = theta_coefficients(p, I, M);
  PiAdicScalar t(p, M);
  for (auto& c : s.coeffs) t += c;
  return t;
}

// ----------------------------------------------------------------------------
// Truncated series in Λ and x.

struct TorusSeries {
  FamilyParams params;
  ExactRat W_max;
  long L_max = 0;
  std::map<std::pair<long, LatticePoint>, PiAdicScalar> terms;  // (Λ-exponent, v) ↦ coefficient

  bool admits(long r, LatticePoint v) const { return r >= 0 && r <= L_max && weight_of(params, v) <= W_max; }

  // Terms outside the cutoffs are dropped; that is the truncation.
  void add(long r, LatticePoint v, const PiAdicScalar& c) {
    if (c.is_zero() || !admits(r, v)) return;
    auto [it, fresh] = terms.emplace(std::make_pair(r, v), c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  PiAdicScalar coeff(long r, LatticePoint v) const {
    auto it = terms.find({r, v});
    return it == terms.end() ? PiAdicScalar() : it->second;
  }

  friend TorusSeries operator+(TorusSeries s, const TorusSeries& t) {
    for (auto& [k, c] : t.terms) s.add(k.first, k.second, c);
    return s;
  }
};

inline TorusSeries times_monomial(const TorusSeries& s, long r, LatticePoint u) {
  TorusSeries out{s.params, s.W_max, s.L_max, {}};
  for (auto& [k, c] : s.terms) out.add(k.first + r, k.second + u, c);
  return out;
}

// ψ_p(Σ A(v)x^v) = Σ A(pv)x^v; Λ-exponents untouched.
inline TorusSeries psi_p(const TorusSeries& s, long p) {
  TorusSeries out{s.params, s.W_max, s.L_max, {}};
  for (auto& [k, c] : s.terms) {
    auto [r, v] = k;
    if (v.v1 % p || v.v2 % p) continue;
    out.add(r, {v.v1 / p, v.v2 / p}, c);
  }
  return out;
}

// θ(Λx^μ)θ(x1^a)θ(x2^b), over index triples of total at most W_max.
inline TorusSeries dwork_series(const FamilyParams& f, const SplittingSeries& theta, long W_max, long L_max) {
  require(static_cast<long>(theta.coeffs.size()) > W_max, "dwork_series: splitting series shorter than W_max");
  TorusSeries s{f, ExactRat(W_max), L_max, {}};
  for (long i = 0; i <= W_max; ++i)
    for (long j = 0; i + j <= W_max; ++j)
      for (long k = 0; i + j + k <= W_max; ++k)
        s.add(i, LatticePoint{-i * f.c + j * f.a, -i * f.d + k * f.b}, theta.coeffs[i] * theta.coeffs[j] * theta.coeffs[k]);
  return s;
}

// ----------------------------------------------------------------------------
// Λ-polynomial matrices over Z_p[π]/π^M.

struct FrobMatrix {
  unsigned p = 0;
  long N = 0;
  long low = 0, L = 0;  // Λ-exponents low ≤ e < L are held
  long M = 0;
  long shift = 0;       // entries hold π^shift·U; U itself is known mod π^{M − shift}
  std::vector<PiAdicScalar> e;

  FrobMatrix() = default;
  FrobMatrix(unsigned p_, long N_, long L_, long M_, long low_ = 0)
      : p(p_), N(N_), low(low_), L(L_), M(M_),
        e(static_cast<std::size_t>(N_ * N_ * std::max(0L, L_ - low_)), PiAdicScalar(p_, M_)) {
    require(low <= 0 && L >= 1, "FrobMatrix: need low <= 0 < L");
  }

  long slots() const { return L - low; }
  // Coefficient of Λ^x in entry (i, j).
  PiAdicScalar& at(long i, long j, long x) { return e[static_cast<std::size_t>((i * N + j) * slots() + x - low)]; }
  const PiAdicScalar& at(long i, long j, long x) const {
    return e[static_cast<std::size_t>((i * N + j) * slots() + x - low)];
  }

  static FrobMatrix identity(unsigned p, long N, long L, long M) {
    FrobMatrix I(p, N, L, M);
    for (long i = 0; i < N; ++i) I.at(i, i, 0) = PiAdicScalar(p, M, ExactInt(1));
    return I;
  }

  // Same entries with Λ-exponents restricted to [low_, L_); new slots are zero.
  FrobMatrix window(long low_, long L_) const {
    FrobMatrix t(p, N, L_, M, low_);
    t.shift = shift;
    for (long i = 0; i < N; ++i)
      for (long j = 0; j < N; ++j)
        for (long x = std::max(low, low_); x < std::min(L, L_); ++x) t.at(i, j, x) = at(i, j, x);
    return t;
  }

  // Smallest π-valuation of U over Λ-exponents below L_cut (M − shift if all vanish).
  long min_ord(long L_cut = std::numeric_limits<long>::max()) const {
    long best = M;
    for (long i = 0; i < N; ++i)
      for (long j = 0; j < N; ++j)
        for (long x = low; x < std::min(L, L_cut); ++x) best = std::min(best, at(i, j, x).ord());
    return best - shift;
  }

  // Lowest exponent carrying a nonzero coefficient (L if none).
  long order() const {
    for (long x = low; x < L; ++x)
      for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j)
          if (!at(i, j, x).is_zero()) return x;
    return L;
  }

  FrobMatrix transpose() const {
    FrobMatrix t(p, N, L, M, low);
    t.shift = shift;
    for (long i = 0; i < N; ++i)
      for (long j = 0; j < N; ++j)
        for (long x = low; x < L; ++x) t.at(j, i, x) = at(i, j, x);
    return t;
  }

  // Λ → Λ^k, truncated at L.
  FrobMatrix substitute_power(long k) const {
    FrobMatrix t(p, N, L, M, k * low);
    t.shift = shift;
    for (long i = 0; i < N; ++i)
      for (long j = 0; j < N; ++j)
        for (long x = low; x < L && x * k < L; ++x) t.at(i, j, x * k) = at(i, j, x);
    return t;
  }

  // θ = Λ d/dΛ
  FrobMatrix theta() const {
    FrobMatrix t(p, N, L, M, low);
    t.shift = shift;
    for (long i = 0; i < N; ++i)
      for (long j = 0; j < N; ++j)
        for (long x = low; x < L; ++x)
          if (x != 0) t.at(i, j, x) = at(i, j, x) * PiAdicScalar(p, M, ExactInt(x));
    return t;
  }

  FrobMatrix scaled(const PiAdicScalar& s) const {
    FrobMatrix t = *this;
    for (auto& x : t.e) x = x * s;
    return t;
  }

  friend FrobMatrix operator+(FrobMatrix x, const FrobMatrix& y) {
    require(x.N == y.N && x.L == y.L && x.low == y.low && x.shift == y.shift, "FrobMatrix: incompatible truncations");
    for (std::size_t k = 0; k < x.e.size(); ++k) x.e[k] += y.e[k];
    x.M = std::min(x.M, y.M);
    return x;
  }
  friend FrobMatrix operator-(FrobMatrix x, const FrobMatrix& y) {
    require(x.N == y.N && x.L == y.L && x.low == y.low && x.shift == y.shift, "FrobMatrix: incompatible truncations");
    for (std::size_t k = 0; k < x.e.size(); ++k) x.e[k] -= y.e[k];
    x.M = std::min(x.M, y.M);
    return x;
  }
  // Exact below L when one factor is a power series (low = 0).
  friend FrobMatrix operator*(const FrobMatrix& x, const FrobMatrix& y) {
    require(x.N == y.N && x.L == y.L && x.p == y.p, "FrobMatrix: incompatible truncations");
    require(x.low == 0 || y.low == 0, "FrobMatrix: product of two Laurent matrices is not truncation-safe");
    FrobMatrix z(x.p, x.N, x.L, std::min(x.M, y.M), x.low + y.low);
    z.shift = x.shift + y.shift;
    for (long i = 0; i < x.N; ++i)
      for (long k = 0; k < x.N; ++k)
        for (long r = x.low; r < x.L; ++r) {
          const auto& a = x.at(i, k, r);
          if (a.is_zero()) continue;
          for (long j = 0; j < x.N; ++j)
            for (long s = y.low; s < y.L && r + s < z.L; ++s) {
              const auto& b = y.at(k, j, s);
              if (!b.is_zero()) z.at(i, j, r + s) += a * b;
            }
        }
    return z;
  }

  // Value at Λ = λ for a unit λ.
  Matrix<PiAdicScalar> evaluate(const PiAdicScalar& lambda) const {
    Matrix<PiAdicScalar> m(static_cast<std::size_t>(N), static_cast<std::size_t>(N), PiAdicScalar(p, M));
    PiAdicScalar start(p, M, ExactInt(1));
    const PiAdicScalar inv = lambda.inverse();
    for (long x = 0; x > low; --x) start *= inv;
    for (long i = 0; i < N; ++i)
      for (long j = 0; j < N; ++j) {
        PiAdicScalar acc(p, M), pw = start;
        for (long x = low; x < L; ++x) {
          acc += at(i, j, x) * pw;
          pw *= lambda;
        }
        m(i, j) = acc;
      }
    return m;
  }
};

// ----------------------------------------------------------------------------
// α₀ on the flag basis.

struct FrobeniusOptions {
  long M = 8;       // π-precision of U
  long W_max = 0;   // weight cutoff of the splitting product; 0 picks the smallest certified value
  long L_max = 0;   // Λ-degree cutoff of the reported U; 0 means 2p·ab + 10
};

struct FrobeniusResult {
  FamilyParams params;
  unsigned p = 0;
  long M = 0, W_max = 0, L_max = 0;
  ExactRat loss;          // π-digits lost converting basis monomials to the flag basis
  ExactRat omitted_bound; // every omitted or skipped contribution has ord_π at least this
  long terms_used = 0, terms_skipped = 0, targets_reduced = 0;
  long min_ord = 0;   // smallest ord_π over U's computed entries (negative when the flag basis is not integral)
  FrobMatrix U;       // column j: α₀(D_Λ^j(1)) on the target flag basis, Λ-degree < L_max
  FrobMatrix U_full;  // same, through every Λ-degree the truncated product reaches
};

inline ExactInt stirling2(long n, long k) {
  std::vector<std::vector<ExactInt>> S(n + 1, std::vector<ExactInt>(n + 1, 0));
  S[0][0] = 1;
  for (long i = 1; i <= n; ++i)
    for (long j = 1; j <= i; ++j) S[i][j] = j * S[i - 1][j] + S[i - 1][j - 1];
  return k <= n ? S[n][k] : ExactInt(0);
}

inline void check_frobenius_inputs(const FamilyParams& f, long p) {
  require(is_prime(p) && p > 2, "frobenius: p must be an odd prime");
  require(f.c == 1 && f.d == 1, "frobenius: only c = d = 1 is supported (integral Λ-powers)");
  require((f.a * f.b * f.c * f.d) % p != 0, "frobenius: p divides abcd");
  require(p > std::max(f.a, f.b), "frobenius: p must exceed max(a, b) so reduction divisions are units");
}

namespace detail {

struct ConvTerm {
  long flag_index;
  long lambda_exp;  // power of Λ^p
  PiRational coef;
};

inline ExactRat ord_or_inf(const std::optional<long>& o) {
  return o ? ExactRat(*o) : ExactRat(std::numeric_limits<long>::max() / 4);
}

}  // namespace detail

inline FrobeniusResult alpha0_matrix(const FamilyParams& f, long p_, const FrobeniusOptions& opt = {}) {
  check_frobenius_inputs(f, p_);
  require(opt.M >= 1, "frobenius: π-precision M' must be at least 1");
  require(opt.W_max >= 0 && opt.L_max >= 0, "frobenius: cutoffs must be nonnegative");
  const unsigned p = static_cast<unsigned>(p_);
  const long N = f.N();
  const ExactRat WL = lambda_weight(f);
  const ExactRat P(p_);

  FrobeniusResult res;
  res.params = f;
  res.p = p;
  res.M = opt.M;
  res.L_max = opt.L_max ? opt.L_max : 2 * p_ * f.a * f.b + 10;

  // Basis monomials to flag basis: y^b = Σ_i Finv(b,i)(Λ') f_i with Λ' = π^{W_Λ}Λ^p,
  // and x^b = π^{−l(b)} y^b.
  auto fd = flag_data(f);
  BasisSet B = basis_set(f);
  std::vector<std::vector<std::map<long, ExactRat>>> Finv(N, std::vector<std::map<long, ExactRat>>(N));
  ExactRat loss = 0;
  for (long b = 0; b < N; ++b)
    for (long i = 0; i < N; ++i) {
      Finv[b][i] = fd.flag_inverse(b, i).laurent();
      for (auto& [d, q] : Finv[b][i]) {
        ExactRat o = WL * d + ExactRat(static_cast<long>(p - 1) * vp(q, p)) - diagonal_form(f, B.points[b]);
        loss = std::max(loss, ExactRat(-o));
      }
    }
  res.loss = loss;

  // Sources e_j = D_Λ^j(1) = Σ_k S(j,k) π^k Λ^k x^{kμ}.
  struct Source {
    long column, k;
    PiRational coef;
    LatticePoint v;
    ExactRat bound;  // ord(coef) − w(v)/p
  };
  std::vector<Source> sources;
  ExactRat min_src = 0;
  bool first = true;
  for (long j = 0; j < N; ++j)
    for (long k = 0; k <= j; ++k) {
      ExactInt s = stirling2(j, k);
      if (s == 0) continue;
      PiRational c = PiRational::pi_power(p, k).scaled(ExactRat(s));
      LatticePoint v{-k * f.c, -k * f.d};
      ExactRat bd = ExactRat(*c.ord()) - weight_of(f, v) / P;
      sources.push_back({j, k, c, v, bd});
      if (first || bd < min_src) min_src = bd, first = false;
    }

  // g(n) = ord λ_n − n/p, exact up to W_far; beyond it ord λ_n ≥ (p−1)²n/p² gives g(n) ≥ βn.
  const ExactRat beta = splitting_bound(p, 1) - 1 / P;
  ensure(beta > 0, "splitting decay does not beat the ψ_p contraction");
  const ExactRat need = ExactRat(opt.M) + loss - min_src;  // required bound on Σ g over an omitted triple
  long W_far = static_cast<long>(ExactRat(need / beta).get_d()) + 1;
  W_far = std::max(W_far, opt.W_max);
  auto lam = splitting_exact(p, W_far);
  const ExactRat INF = detail::ord_or_inf(std::nullopt);
  std::vector<ExactRat> g(W_far + 1);
  for (long n = 0; n <= W_far; ++n) {
    auto o = lam[n].ord();
    if (o) ensure(ExactRat(*o) >= splitting_bound(p, n), "splitting coefficient violates its valuation bound");
    g[n] = o ? ExactRat(*o) - ExactRat(n) / P : INF;
  }
  // h(W) = min over i+j+k = W of g(i)+g(j)+g(k)
  std::vector<ExactRat> h2(W_far + 1, INF), h3(W_far + 1, INF);
  for (long W = 0; W <= W_far; ++W)
    for (long i = 0; i <= W; ++i) h2[W] = std::min(h2[W], ExactRat(g[i] + g[W - i]));
  for (long W = 0; W <= W_far; ++W)
    for (long i = 0; i <= W; ++i) h3[W] = std::min(h3[W], ExactRat(h2[W - i] + g[i]));
  std::vector<ExactRat> tail(W_far + 2);
  tail[W_far + 1] = beta * (W_far + 1);
  for (long W = W_far; W >= 0; --W) tail[W] = std::min(tail[W + 1], h3[W]);
  // tail[W] bounds Σ g over triples of total ≥ W
  auto omitted = [&](long W_max) -> ExactRat { return min_src + (W_max + 1 <= W_far + 1 ? tail[W_max + 1] : beta * (W_max + 1)); };

  if (opt.W_max) {
    res.W_max = opt.W_max;
  } else {
    long W = 0;
    while (omitted(W) - loss < opt.M) ++W;
    res.W_max = W;
  }
  if (omitted(res.W_max) - loss < opt.M) {
    long W = res.W_max;
    while (omitted(W) - loss < opt.M) ++W;
    throw PrecisionError("frobenius: W_max = " + std::to_string(res.W_max) + " cannot certify π-precision " +
                         std::to_string(opt.M) + "; raise W_max to at least " + std::to_string(W));
  }
  const ExactRat thresh = ExactRat(opt.M) + loss;

  // Target reduction in the π-free model with parameter Λ'.
  Reducer<LaurentScalars> red(f, LaurentScalars{});
  std::map<LatticePoint, std::vector<detail::ConvTerm>> conv_memo;
  auto conversion = [&](LatticePoint t) -> const std::vector<detail::ConvTerm>& {
    if (auto it = conv_memo.find(t); it != conv_memo.end()) return it->second;
    const auto& R = red.coords(t);
    std::map<std::pair<long, long>, ExactRat> acc;  // (flag index, Λ'-power)
    for (long b = 0; b < N; ++b)
      for (auto& [kap, x] : R[b].terms())
        for (long i = 0; i < N; ++i)
          for (auto& [d, q] : Finv[b][i]) acc[{i, kap + d}] += x * q;
    std::vector<detail::ConvTerm> out;
    const ExactRat lt = diagonal_form(f, t), wt = weight_of(f, t);
    for (auto& [key, q] : acc) {
      if (q == 0) continue;
      ExactRat e = WL * key.second - lt;
      ensure(e.get_den() == 1, "non-integral π-exponent in the flag conversion");
      PiRational c = PiRational::pi_power(p, e.get_num().get_si()).scaled(q);
      ensure(ExactRat(*c.ord()) >= -wt - loss, "flag conversion loses more than the asserted margin");
      out.push_back({key.first, key.second, std::move(c)});
    }
    ++res.targets_reduced;
    return conv_memo.emplace(t, std::move(out)).first->second;
  };

  // Exact accumulation: (row, column) ↦ Λ-degree ↦ value.
  std::vector<std::map<long, PiRational>> acc(static_cast<std::size_t>(N * N));
  const LatticePoint m = mu(f);
  for (auto& src : sources)
    for (long i = 0; i <= res.W_max; ++i) {
      if (src.bound + g[i] >= thresh) {
        ++res.terms_skipped;
        continue;
      }
      for (long j = 0; i + j <= res.W_max; ++j) {
        if (src.bound + g[i] + g[j] >= thresh) {
          ++res.terms_skipped;
          continue;
        }
        PiRational cij;
        bool have = false;
        for (long k = 0; i + j + k <= res.W_max; ++k) {
          LatticePoint u = src.v + i * m + LatticePoint{j * f.a, k * f.b};
          if (u.v1 % p_ || u.v2 % p_) continue;
          if (src.bound + g[i] + g[j] + g[k] >= thresh) {
            ++res.terms_skipped;
            continue;
          }
          if (!have) cij = src.coef * lam[i] * lam[j], have = true;
          PiRational c = cij * lam[k];
          LatticePoint t{u.v1 / p_, u.v2 / p_};
          for (auto& ct : conversion(t)) {
            long deg = src.k + i + p_ * ct.lambda_exp;
            acc[static_cast<std::size_t>(ct.flag_index * N + src.column)][deg] += c * ct.coef;
          }
          ++res.terms_used;
        }
      }
    }
  res.W_max = std::max(res.W_max, 0L);
  res.omitted_bound = omitted(res.W_max);

  long lo = 0, hi = 0;
  for (auto& e : acc)
    for (auto& [r, x] : e)
      if (!x.is_zero()) lo = std::min(lo, r), hi = std::max(hi, r);
  for (auto& e : acc)
    for (auto& [r, x] : e)
      if (!x.is_zero()) res.min_ord = std::min(res.min_ord, *x.ord());
  const long s = -res.min_ord;
  const PiRational lift = PiRational::pi_power(p, s);
  res.U_full = FrobMatrix(p, N, hi + 1, opt.M + s, lo);
  res.U_full.shift = s;
  for (long i = 0; i < N; ++i)
    for (long j = 0; j < N; ++j)
      for (auto& [r, x] : acc[static_cast<std::size_t>(i * N + j)])
        if (!x.is_zero()) res.U_full.at(i, j, r) = PiAdicScalar::from_rational(p, opt.M + s, x * lift);
  const long top = std::max(res.L_max, 1L);
  res.U = res.U_full.window(std::min(res.U_full.order(), 0L), top);
  return res;
}

// ----------------------------------------------------------------------------
// Horizontality.

// G(π^{W_Λ}Λ) where G is the transpose of companion_matrix, i.e. the matrix
// with θ(C_0, ..., C_{N−1}) = (C_0, ..., C_{N−1})G for solution rows.
inline FrobMatrix padic_connection(const FamilyParams& f, long p_, long M, long L) {
  check_frobenius_inputs(f, p_);
  const unsigned p = static_cast<unsigned>(p_);
  RFMatrix Gt = companion_matrix(picard_fuchs_operator(f));
  const long N = f.N();
  const ExactRat WL = lambda_weight(f);
  FrobMatrix G(p, N, L, M);
  for (long i = 0; i < N; ++i)
    for (long j = 0; j < N; ++j)
      for (auto& [k, q] : Gt(j, i).laurent()) {
        require(k >= 0, "padic_connection: connection has a pole at Λ = 0");
        if (k >= L) continue;
        ExactRat e = WL * k;
        ensure(e.get_den() == 1, "non-integral π-exponent in the connection");
        G.at(i, j, k) = PiAdicScalar::from_rational(p, M, PiRational::pi_power(p, e.get_num().get_si()).scaled(q));
      }
  return G;
}

struct ResidualReport {
  long target = 0;  // required π-valuation
  long L = 0;       // Λ-truncation of the check
  long precision = 0;
  std::map<std::string, long> min_ord;  // per variant, capped at precision
  bool vanishes = false;                // the stated form meets the target
  std::vector<std::string> vanishing_variants;
};

// Stated form R = ΛU' − U·G + p·G(Λ^p)·U; the transposed and row-convention
// variants are reported alongside, never substituted.
inline ResidualReport horizontality_residual(const FrobMatrix& U, const FrobMatrix& G, long target, long L) {
  require(U.N == G.N && U.p == G.p, "horizontality_residual: U and G do not match");
  require(L >= 1 && L <= U.L && L <= G.L, "horizontality_residual: incompatible truncations");
  require(G.low == 0 && G.shift == 0, "horizontality_residual: G must be a π-integral power series in Λ");
  FrobMatrix u = U.window(U.low, L), g = G.window(0, L), gt = g.transpose();
  ResidualReport rep;
  rep.target = target;
  rep.L = L;
  rep.precision = std::min(U.M, G.M) - U.shift;
  if (target > rep.precision)
    throw PrecisionError("horizontality_residual: target π^" + std::to_string(target) + " exceeds working precision " +
                         std::to_string(rep.precision));
  const PiAdicScalar pp(U.p, std::min(U.M, G.M), ExactInt(U.p));
  const FrobMatrix du = u.theta();
  auto col = [&](const FrobMatrix& G_) { return du - u * G_ + (G_.substitute_power(U.p) * u).scaled(pp); };
  auto row = [&](const FrobMatrix& G_) { return du - G_ * u + (u * G_.substitute_power(U.p)).scaled(pp); };
  rep.min_ord["stated"] = col(g).min_ord();
  rep.min_ord["transposed"] = col(gt).min_ord();
  rep.min_ord["row"] = row(g).min_ord();
  rep.min_ord["row_transposed"] = row(gt).min_ord();
  for (auto& [name, o] : rep.min_ord)
    if (o >= target) rep.vanishing_variants.push_back(name);
  rep.vanishes = rep.min_ord["stated"] >= target;
  return rep;
}

// ----------------------------------------------------------------------------
// Specialization.

struct SpecializationReport {
  long lambda = 0;
  long target = 0;
  PiAdicScalar teichmuller;
  std::vector<PiAdicScalar> det_coeffs;  // det(1 − U(λ)T)
  std::vector<PiAdicScalar> l_coeffs;    // A_r with ζ_p ↦ θ(1)
  std::vector<long> diff_ord;
  bool agree = false;
};

inline PiAdicScalar embed_cyclotomic(const CycloInt& x, const PiAdicScalar& zeta) {
  PiAdicScalar acc(zeta.p(), zeta.precision()), pw(zeta.p(), zeta.precision(), ExactInt(1));
  for (auto& c : x.coeffs()) {
    acc += pw * PiAdicScalar(zeta.p(), zeta.precision(), c);
    pw *= zeta;
  }
  return acc;
}

inline SpecializationReport specialize_det_compare(const FrobeniusResult& fr, long lambda, const LPolynomial& P,
                                                   long target) {
  require(P.p == fr.p, "specialize_det_compare: L-polynomial is over a different prime");
  require(P.degree() == fr.U_full.N, "specialize_det_compare: L-polynomial degree differs from N");
  const FrobMatrix& V = fr.U_full;  // π^s·U
  const long s = V.shift, N = V.N;
  // c_k(U) = π^{−sk} c_k(V) is known mod π^{M − sk}
  if (target > fr.M - s * N)
    throw PrecisionError("specialize_det_compare: target π^" + std::to_string(target) + " exceeds the precision " +
                         std::to_string(fr.M - s * N) + " left after undoing the flag shift π^" + std::to_string(s));
  SpecializationReport rep;
  rep.lambda = lambda;
  rep.target = target;
  rep.teichmuller = teichmuller(fr.p, V.M, lambda);
  auto A = V.evaluate(rep.teichmuller);
  PiAdicScalar zero(fr.p, V.M), one(fr.p, V.M, ExactInt(1));
  auto cV = charpoly(A, zero, one);  // [1, c_1, ..., c_N]: also the coefficients of det(1 − AT)
  PiAdicScalar zeta = theta_one(fr.p, fr.M);
  rep.agree = true;
  for (long k = 0; k <= N; ++k) {
    const long prec = fr.M - s * k;
    PiRational c = cV[k].lift() * PiRational::pi_power(fr.p, -s * k);
    auto o = c.ord();
    ensure(!o || *o >= 0 || prec <= *o, "det(1 − U T) has a non-integral coefficient");
    PiAdicScalar ck = o && *o < 0 ? PiAdicScalar(fr.p, prec) : PiAdicScalar::from_rational(fr.p, prec, c);
    rep.det_coeffs.push_back(ck);
    rep.l_coeffs.push_back(embed_cyclotomic(P.coeffs[k], zeta).reduced(prec));
    long d = (ck - rep.l_coeffs.back()).ord();
    rep.diff_ord.push_back(d);
    if (d < target) rep.agree = false;
  }
  return rep;
}

}  // namespace gks
