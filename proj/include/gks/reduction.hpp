#pragma once
// Reduction of Laurent monomials to the basis B modulo the images of D1, D2,
// over a pluggable scalar ring, with checkable certificates. Also the
// connection matrix of D_Λ on the flag basis 1, D_Λ(1), ..., D_Λ^{N−1}(1).

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "newton_hodge.hpp"
#include "polynomial.hpp"

namespace gks {

// ----------------------------------------------------------------------------
// Scalar rings. Each exposes: Scalar, zero(), one(), from_rational(q),
// lambda_power(k), is_zero(x), name().

struct Fp {
  long v = 0, p = 0;
  friend Fp operator+(Fp x, Fp y) { return {(x.v + y.v) % x.p, x.p}; }
  friend Fp operator-(Fp x, Fp y) { return {(x.v - y.v + x.p) % x.p, x.p}; }
  friend Fp operator-(Fp x) { return {(x.p - x.v) % x.p, x.p}; }
  friend Fp operator*(Fp x, Fp y) { return {(x.v * y.v) % x.p, x.p}; }
  Fp& operator+=(Fp y) { return *this = *this + y; }
  friend bool operator==(Fp x, Fp y) { return x.v == y.v; }
};

inline long inverse_mod(long x, long p) {
  long r = 1, b = ((x % p) + p) % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

struct PrimeFieldScalars {
  using Scalar = Fp;
  long p, lambda;
  PrimeFieldScalars(long p_, long lambda_) : p(p_), lambda(((lambda_ % p_) + p_) % p_) {
    require(is_prime(p) && p > 2, "PrimeFieldScalars: odd prime p");
    require(lambda != 0, "PrimeFieldScalars: λ̄ must be nonzero");
  }
  Fp zero() const { return {0, p}; }
  Fp one() const { return {1, p}; }
  Fp from_rational(const ExactRat& q) const {
    ExactInt den = q.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), p)) throw PreconditionError("not invertible mod p");
    long n = mod_floor(ExactInt(q.get_num()), p).get_si(), d = mod_floor(den, p).get_si();
    return {n * inverse_mod(d, p) % p, p};
  }
  Fp lambda_power(long k) const {
    long base = k >= 0 ? lambda : inverse_mod(lambda, p), r = 1;
    for (long i = 0; i < (k >= 0 ? k : -k); ++i) r = r * base % p;
    return {r, p};
  }
  bool is_zero(const Fp& x) const { return x.v == 0; }
  std::string name() const { return "F_" + std::to_string(p) + ", lambda=" + std::to_string(lambda); }
  std::string str(const Fp& x) const { return std::to_string(x.v); }
};

// Q(Λ) with λ = Λ.
struct RationalFunctionScalars {
  using Scalar = RationalFunction;
  Scalar zero() const { return {}; }
  Scalar one() const { return 1; }
  Scalar from_rational(const ExactRat& q) const { return q; }
  Scalar lambda_power(long k) const {
    if (k >= 0) return QPoly::monomial(ExactRat(1), k);
    return {QPoly(ExactRat(1)), QPoly::monomial(ExactRat(1), -k)};
  }
  bool is_zero(const Scalar& x) const { return x.is_zero(); }
  std::string name() const { return "Q(L)"; }
  std::string str(const Scalar& x) const { return x.str(); }
};

// Q[Λ, 1/Λ]: enough for the reduction, whose only non-integer divisors are cΛ and dΛ.
struct LaurentScalars {
  using Scalar = QLaurent;
  Scalar zero() const { return {}; }
  Scalar one() const { return ExactRat(1); }
  Scalar from_rational(const ExactRat& q) const { return q; }
  Scalar lambda_power(long k) const { return {ExactRat(1), k}; }
  bool is_zero(const Scalar& x) const { return x.is_zero(); }
  std::string name() const { return "Q[L,1/L]"; }
  std::string str(const Scalar& x) const {
    std::string s;
    for (auto& [k, c] : x.terms()) s += (s.empty() ? "" : " + ") + to_string(c) + "*L^" + std::to_string(k);
    return s.empty() ? "0" : s;
  }
};

// ----------------------------------------------------------------------------

template <class Scalar>
using CohomClass = std::map<LatticePoint, Scalar>;

template <class Ring>
void add_term(const Ring& ring, CohomClass<typename Ring::Scalar>& h, LatticePoint v, const typename Ring::Scalar& c) {
  if (ring.is_zero(c)) return;
  auto [it, fresh] = h.emplace(v, c);
  if (!fresh) {
    it->second = it->second + c;
    if (ring.is_zero(it->second)) h.erase(it);
  }
}

// D_l(x^u) = u_l x^u + (a or b) x^{u+(a,0) or (0,b)} − (c or d) λ x^{u+μ}
template <class Ring>
CohomClass<typename Ring::Scalar> apply_D(int l, const CohomClass<typename Ring::Scalar>& h, const FamilyParams& f,
                                          const Ring& ring) {
  require(l == 1 || l == 2, "apply_D: l must be 1 or 2");
  CohomClass<typename Ring::Scalar> out;
  const LatticePoint shift = l == 1 ? LatticePoint{f.a, 0} : LatticePoint{0, f.b};
  const long e = l == 1 ? f.a : f.b, g = l == 1 ? f.c : f.d;
  for (auto& [u, c] : h) {
    add_term(ring, out, u, c * ring.from_rational(l == 1 ? u.v1 : u.v2));
    add_term(ring, out, u + shift, c * ring.from_rational(e));
    add_term(ring, out, u + mu(f), c * ring.from_rational(-g) * ring.lambda_power(1));
  }
  return out;
}

// x^v = Σ coef·x^w + Σ coef·D_l(x^w); coefficients are q·λ^k.
struct StepTerm {
  ExactRat q;
  long lambda_exp;
  LatticePoint w;
  int l = 0;  // 0 for a monomial child, 1 or 2 for a D-term
};

struct Step {
  bool basis = false;
  std::string divisor;
  std::vector<StepTerm> terms;
};

// The rewriting rules, independent of the scalar ring.
class StepTable {
 public:
  explicit StepTable(FamilyParams f) : f_(f) {}
  const FamilyParams& params() const { return f_; }

  const Step& step(LatticePoint v) {
    auto it = table_.find(v);
    if (it != table_.end()) return it->second;
    return table_.emplace(v, make(v)).first->second;
  }

 private:
  // Climb along −μ:  x^v = (1/(cλ))(w1 x^w + a x^{w+(a,0)} − D1 x^w),  w = v − μ.
  Step climb(LatticePoint v, int l) const {
    const LatticePoint w = v - mu(f_);
    const long g = l == 1 ? f_.c : f_.d;
    const LatticePoint up = l == 1 ? w + LatticePoint{f_.a, 0} : w + LatticePoint{0, f_.b};
    const long e = l == 1 ? f_.a : f_.b, wl = l == 1 ? w.v1 : w.v2;
    return {false,
            l == 1 ? "c*lambda" : "d*lambda",
            {{rat(wl, g), -1, w, 0}, {rat(e, g), -1, up, 0}, {rat(-1, g), -1, w, l}}};
  }
  // x^v = (1/a)(D1 x^w − w1 x^w + cλ x^{w+μ}),  w = v − (a,0)   (l = 1; l = 2 symmetric)
  Step descend(LatticePoint v, int l) const {
    const LatticePoint w = l == 1 ? v - LatticePoint{f_.a, 0} : v - LatticePoint{0, f_.b};
    const long e = l == 1 ? f_.a : f_.b, g = l == 1 ? f_.c : f_.d, wl = l == 1 ? w.v1 : w.v2;
    return {false, l == 1 ? "a" : "b", {{rat(-wl, e), 0, w, 0}, {rat(g, e), 1, w + mu(f_), 0}, {rat(1, e), 0, w, l}}};
  }
  // Descent by (a,0) with λx^{w+μ} traded for the D2 relation:
  // x^v = (1/a)D1 x^w − (c/(ad))D2 x^w + ((c w2 − d w1)/(ad)) x^w + (bc/(ad)) x^{w+(0,b)}
  Step swap_a(LatticePoint v) const {
    const long a = f_.a, b = f_.b, c = f_.c, d = f_.d;
    const LatticePoint w = v - LatticePoint{a, 0};
    return {false,
            "ad",
            {{rat(c * w.v2 - d * w.v1, a * d), 0, w, 0},
             {rat(b * c, a * d), 0, w + LatticePoint{0, b}, 0},
             {rat(1, a), 0, w, 1},
             {rat(-c, a * d), 0, w, 2}}};
  }
  Step swap_b(LatticePoint v) const {
    const long a = f_.a, b = f_.b, c = f_.c, d = f_.d;
    const LatticePoint w = v - LatticePoint{0, b};
    return {false,
            "bc",
            {{rat(d * w.v1 - c * w.v2, b * c), 0, w, 0},
             {rat(a * d, b * c), 0, w + LatticePoint{a, 0}, 0},
             {rat(1, b), 0, w, 2},
             {rat(-d, b * c), 0, w, 1}}};
  }

  Step make(LatticePoint v) const {
    const long a = f_.a, b = f_.b, c = f_.c, d = f_.d, m = v.v1, n = v.v2;
    if (in_basis(f_, v)) return {true, "", {}};
    if (m <= -c) return climb(v, 1);
    if (n <= -d) return climb(v, 2);
    if (n > b) return m >= 1 ? descend(v, 2) : swap_b(v);
    if (m > a) return n >= 1 ? descend(v, 1) : swap_a(v);
    // inside the box but excluded from B
    if ((c > 1 && d > 1 && (c - 1) * n < (d - 1) * (m - a)) || (c == 1 && d > 1)) return swap_a(v);
    return swap_b(v);
  }

  FamilyParams f_;
  std::map<LatticePoint, Step> table_;
};

template <class Scalar>
struct ReductionCertificate {
  std::map<LatticePoint, Scalar> coords;  // supported on B
  CohomClass<Scalar> h1, h2;
};

template <class Ring>
class Reducer {
 public:
  using Scalar = typename Ring::Scalar;

  Reducer(FamilyParams f, Ring ring) : ring_(std::move(ring)), steps_(f), basis_(basis_set(f)) {}

  const Ring& ring() const { return ring_; }
  const BasisSet& basis() const { return basis_; }
  const FamilyParams& params() const { return steps_.params(); }

  Scalar coefficient(const StepTerm& t, const std::string& divisor) const {
    try {
      return ring_.from_rational(t.q) * ring_.lambda_power(t.lambda_exp);
    } catch (const PreconditionError&) {
      throw PreconditionError("reduction divides by " + divisor + ", which is zero in " + ring_.name());
    }
  }

  // Coordinates of x^v on B (dense, indexed like basis().points), memoized.
  const std::vector<Scalar>& coords(LatticePoint v) {
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;
    std::vector<std::pair<LatticePoint, bool>> stack{{v, false}};
    std::map<LatticePoint, bool> active;
    while (!stack.empty()) {
      auto [u, expanded] = stack.back();
      stack.pop_back();
      if (memo_.count(u)) continue;
      const Step& s = steps_.step(u);
      if (s.basis) {
        std::vector<Scalar> e(basis_.points.size(), ring_.zero());
        e[basis_.index_of(u)] = ring_.one();
        memo_.emplace(u, std::move(e));
        continue;
      }
      if (!expanded) {
        if (active[u]) throw InvariantError("reduction cycle at a monomial; rewriting rules do not terminate");
        active[u] = true;
        stack.push_back({u, true});
        for (auto& t : s.terms)
          if (t.l == 0 && !memo_.count(t.w)) stack.push_back({t.w, false});
        continue;
      }
      std::vector<Scalar> acc(basis_.points.size(), ring_.zero());
      for (auto& t : s.terms) {
        if (t.l != 0) continue;
        const auto& child = memo_.at(t.w);
        Scalar k = coefficient(t, s.divisor);
        for (std::size_t i = 0; i < acc.size(); ++i)
          if (!ring_.is_zero(child[i])) acc[i] = acc[i] + k * child[i];
      }
      active[u] = false;
      memo_.emplace(u, std::move(acc));
    }
    return memo_.at(v);
  }

  // Full certificate: walk the rewrite DAG from supp(h) parents-first, pushing
  // each monomial's weight onto its children and recording the D-terms.
  ReductionCertificate<Scalar> reduce_to_basis(const CohomClass<Scalar>& h) {
    std::vector<LatticePoint> post;
    std::map<LatticePoint, int> state;  // 1 = open, 2 = done
    for (auto& [v, c] : h) {
      if (state[v] == 2) continue;
      std::vector<std::pair<LatticePoint, std::size_t>> stack{{v, 0}};
      state[v] = 1;
      while (!stack.empty()) {
        auto& [u, next] = stack.back();
        const Step& s = steps_.step(u);
        if (next < s.terms.size()) {
          const StepTerm& t = s.terms[next++];
          if (t.l != 0) continue;
          int st = state[t.w];
          if (st == 1) throw InvariantError("reduction cycle at a monomial; rewriting rules do not terminate");
          if (st == 0) state[t.w] = 1, stack.push_back({t.w, 0});
        } else {
          state[u] = 2;
          post.push_back(u);
          stack.pop_back();
        }
      }
    }
    std::map<LatticePoint, Scalar> weight(h.begin(), h.end());
    ReductionCertificate<Scalar> cert;
    for (auto it = post.rbegin(); it != post.rend(); ++it) {
      auto found = weight.find(*it);
      if (found == weight.end() || ring_.is_zero(found->second)) continue;
      const Scalar w = found->second;
      const Step& s = steps_.step(*it);
      if (s.basis) {
        cert.coords.emplace(*it, w);
        continue;
      }
      for (auto& t : s.terms) {
        Scalar k = w * coefficient(t, s.divisor);
        if (t.l == 0) {
          auto [slot, fresh] = weight.emplace(t.w, k);
          if (!fresh) slot->second = slot->second + k;
        } else {
          add_term(ring_, t.l == 1 ? cert.h1 : cert.h2, t.w, k);
        }
      }
    }
    return cert;
  }

 private:
  Ring ring_;
  StepTable steps_;
  BasisSet basis_;
  std::map<LatticePoint, std::vector<Scalar>> memo_;
};

template <class Ring>
bool verify_certificate(const ReductionCertificate<typename Ring::Scalar>& cert,
                        const CohomClass<typename Ring::Scalar>& original, const FamilyParams& f, const Ring& ring) {
  CohomClass<typename Ring::Scalar> sum;
  for (auto& [v, c] : cert.coords) {
    if (!in_basis(f, v)) return false;
    add_term(ring, sum, v, c);
  }
  for (auto& [v, c] : apply_D(1, cert.h1, f, ring)) add_term(ring, sum, v, c);
  for (auto& [v, c] : apply_D(2, cert.h2, f, ring)) add_term(ring, sum, v, c);
  CohomClass<typename Ring::Scalar> target;
  for (auto& [v, c] : original) add_term(ring, target, v, c);
  return sum == target;
}

// ----------------------------------------------------------------------------
// Connection on the flag basis.

using RFMatrix = Matrix<RationalFunction>;

// D_Λ = Λ∂/∂Λ + Λx^μ on a relative class over Q(Λ).
inline CohomClass<RationalFunction> apply_DLambda(const CohomClass<RationalFunction>& h, const FamilyParams& f) {
  RationalFunctionScalars R;
  CohomClass<RationalFunction> out;
  for (auto& [v, c] : h) {
    add_term(R, out, v, c.theta());
    add_term(R, out, v + mu(f), c * RationalFunction::var());
  }
  return out;
}

struct FlagData {
  RFMatrix flag;        // row i: coordinates of D_Λ^i(1) on B, i < N
  RFMatrix flag_inverse;
  std::vector<RationalFunction> last;  // coordinates of D_Λ^N(1) on the flag basis
  RFMatrix Gt;          // companion form: superdiagonal ones, last row = `last`
};

inline FlagData flag_data(const FamilyParams& f) {
  RationalFunctionScalars R;
  Reducer<RationalFunctionScalars> red(f, R);
  const std::size_t N = static_cast<std::size_t>(f.N());
  auto row_of = [&](const CohomClass<RationalFunction>& h) {
    std::vector<RationalFunction> row(N);
    for (auto& [v, c] : h) {
      const auto& x = red.coords(v);
      for (std::size_t i = 0; i < N; ++i)
        if (!x[i].is_zero()) row[i] += c * x[i];
    }
    return row;
  };

  FlagData out{RFMatrix(N, N, {}), {}, {}, RFMatrix(N, N, {})};
  CohomClass<RationalFunction> e{{{0, 0}, RationalFunction(1)}};
  for (std::size_t i = 0; i < N; ++i) {
    auto row = row_of(e);
    for (std::size_t j = 0; j < N; ++j) out.flag(i, j) = row[j];
    e = apply_DLambda(e, f);
  }
  auto is_zero = [](const RationalFunction& x) { return x.is_zero(); };
  out.flag_inverse = inverse(out.flag, RationalFunction(), RationalFunction(1), is_zero);
  if (out.flag_inverse.rows() == 0) throw InvariantError("flag matrix is singular for " + f.str());

  auto top = row_of(e);
  out.last.assign(N, {});
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k) out.last[j] += top[k] * out.flag_inverse(k, j);
  for (std::size_t i = 0; i + 1 < N; ++i) out.Gt(i, i + 1) = 1;
  for (std::size_t j = 0; j < N; ++j) out.Gt(N - 1, j) = out.last[j];
  return out;
}

inline RFMatrix connection_on_flag_basis(const FamilyParams& f) { return flag_data(f).Gt; }

}  // namespace gks
