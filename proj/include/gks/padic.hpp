#pragma once
// Q(π) with π^{p−1} = −p, exactly (PiRational), and its ring of integers
// truncated mod π^M (PiAdicScalar).

#include <optional>
#include <string>
#include <vector>

#include "exact.hpp"
#include "linalg.hpp"

namespace gks {

// Σ_{j<p−1} c_j π^j with rational c_j.
class PiRational {
 public:
  PiRational() = default;
  PiRational(unsigned p, ExactRat c0 = 0) : p_(p), c_(p - 1, ExactRat(0)) {
    require(p > 2 && is_prime(p), "PiRational: odd prime p");
    c_[0] = std::move(c0);
  }

  // π^e for any integer e: e = q(p−1) + r gives (−p)^q π^r.
  static PiRational pi_power(unsigned p, long e) {
    const long m = static_cast<long>(p) - 1;
    long q = e >= 0 ? e / m : -((-e + m - 1) / m), r = e - q * m;
    PiRational x(p);
    ExactRat v = q >= 0 ? ExactRat(pow_int(ExactInt(-static_cast<long>(p)), q))
                        : ExactRat(1) / ExactRat(pow_int(ExactInt(-static_cast<long>(p)), -q));
    x.c_[r] = v;
    return x;
  }

  unsigned p() const { return p_; }
  const std::vector<ExactRat>& coeffs() const { return c_; }
  bool is_zero() const {
    for (auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  // ord_π; nullopt for zero. Terms c_jπ^j have distinct valuations mod p−1.
  std::optional<long> ord() const {
    std::optional<long> best;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      long o = static_cast<long>(p_ - 1) * vp(c_[j], p_) + static_cast<long>(j);
      if (!best || o < *best) best = o;
    }
    return best;
  }

  friend PiRational operator+(PiRational x, const PiRational& y) { return x += y; }
  friend PiRational operator-(PiRational x, const PiRational& y) { return x -= y; }
  friend PiRational operator-(PiRational x) {
    for (auto& v : x.c_) v = -v;
    return x;
  }
  PiRational& operator+=(const PiRational& y) {
    adopt(y);
    for (std::size_t j = 0; j < y.c_.size(); ++j) c_[j] += y.c_[j];
    return *this;
  }
  PiRational& operator-=(const PiRational& y) {
    adopt(y);
    for (std::size_t j = 0; j < y.c_.size(); ++j) c_[j] -= y.c_[j];
    return *this;
  }
  friend PiRational operator*(const PiRational& x, const PiRational& y) {
    if (x.p_ == 0 || y.p_ == 0) return {};
    require(x.p_ == y.p_, "PiRational: mismatched primes");
    const std::size_t m = x.c_.size();
    PiRational r(x.p_);
    for (std::size_t i = 0; i < m; ++i) {
      if (x.c_[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (y.c_[j] == 0) continue;
        ExactRat v = x.c_[i] * y.c_[j];
        std::size_t e = i + j;
        if (e >= m) e -= m, v *= -static_cast<long>(x.p_);
        r.c_[e] += v;
      }
    }
    return r;
  }
  PiRational& operator*=(const PiRational& y) { return *this = *this * y; }
  PiRational scaled(const ExactRat& s) const {
    PiRational r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
  }
  friend bool operator==(const PiRational& x, const PiRational& y) {
    if (x.p_ == 0 || y.p_ == 0) return x.is_zero() && y.is_zero();
    return x.c_ == y.c_;
  }

  // Multiplicative inverse via the regular representation over Q.
  PiRational inverse() const {
    require(!is_zero(), "PiRational: inverse of zero");
    const std::size_t m = c_.size();
    Matrix<ExactRat> M(m, m, 0);
    for (std::size_t j = 0; j < m; ++j) {
      PiRational col = *this * pi_power(p_, static_cast<long>(j));
      for (std::size_t i = 0; i < m; ++i) M(i, j) = col.c_[i];
    }
    auto inv = gks::inverse(M, ExactRat(0), ExactRat(1), [](const ExactRat& x) { return x == 0; });
    ensure(inv.rows() == m, "Q(π) multiplication matrix is singular");
    PiRational r(p_);
    for (std::size_t i = 0; i < m; ++i) r.c_[i] = inv(i, 0);
    return r;
  }

 private:
  void adopt(const PiRational& y) {
    if (y.p_ == 0) return;
    if (p_ == 0) *this = PiRational(y.p_);
    require(p_ == y.p_, "PiRational: mismatched primes");
  }

  unsigned p_ = 0;
  std::vector<ExactRat> c_;
};

// Element of Z_p[π]/π^M. Coefficient c_j is kept in [0, p^{K_j}) with
// K_j = ceil((M − j)/(p − 1)), which is exactly the ideal π^M.
class PiAdicScalar {
 public:
  PiAdicScalar() = default;
  PiAdicScalar(unsigned p, long M) : p_(p), M_(M), c_(p - 1, ExactInt(0)) {
    require(p > 2 && is_prime(p), "PiAdicScalar: odd prime p");
    require(M >= 1, "PiAdicScalar: precision M >= 1");
  }
  PiAdicScalar(unsigned p, long M, const ExactInt& c0) : PiAdicScalar(p, M) {
    c_[0] = c0;
    normalize();
  }

  static PiAdicScalar from_rational(unsigned p, long M, const PiRational& x) {
    PiAdicScalar r(p, M);
    if (x.p() == 0) return r;
    require(x.p() == p, "PiAdicScalar: mismatched primes");
    for (std::size_t j = 0; j < r.c_.size(); ++j) {
      const ExactRat& q = x.coeffs()[j];
      if (q == 0) continue;
      ExactInt den = q.get_den();
      if (mpz_divisible_ui_p(den.get_mpz_t(), p)) throw InvariantError("value is not π-integral");
      ExactInt mod = r.modulus(j), inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
      r.c_[j] = ExactInt(q.get_num()) * inv;
    }
    r.normalize();
    return r;
  }

  static PiAdicScalar pi_power(unsigned p, long M, long e) {
    require(e >= 0, "PiAdicScalar: negative power of π");
    return from_rational(p, M, PiRational::pi_power(p, e));
  }

  unsigned p() const { return p_; }
  long precision() const { return M_; }
  const std::vector<ExactInt>& coeffs() const { return c_; }

  ExactInt modulus(std::size_t j) const {
    long K = ceil_div(M_ - static_cast<long>(j), static_cast<long>(p_) - 1);
    return pow_int(ExactInt(p_), static_cast<unsigned long>(std::max(K, 0L)));
  }

  bool is_zero() const {
    for (auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  // ord_π, capped at M (the value M means "≥ M").
  long ord() const {
    long best = M_;
    for (std::size_t j = 0; j < c_.size(); ++j)
      if (c_[j] != 0) best = std::min(best, static_cast<long>(p_ - 1) * vp(c_[j], p_) + static_cast<long>(j));
    return best;
  }

  // Drop to a lower precision.
  PiAdicScalar reduced(long M) const {
    require(M <= M_, "PiAdicScalar: cannot raise precision");
    PiAdicScalar r = *this;
    r.M_ = M;
    r.normalize();
    return r;
  }

  PiRational lift() const {
    PiRational x(p_);
    for (std::size_t j = 0; j < c_.size(); ++j) x += PiRational::pi_power(p_, static_cast<long>(j)).scaled(ExactRat(c_[j]));
    return x;
  }

  // Digits d_i ∈ [0, p) with x ≡ Σ_{i<M} d_i π^i.
  std::vector<long> digits() const {
    std::vector<long> d;
    std::vector<ExactInt> c = c_;
    const std::size_t m = c.size();
    for (long i = 0; i < M_; ++i) {
      long di = mod_floor(c[0], ExactInt(p_)).get_si();
      d.push_back(di);
      // (x − d)/π: shift down, the top slot takes −(c_0 − d)/p
      ExactInt top = -(c[0] - di) / static_cast<long>(p_);
      for (std::size_t j = 0; j + 1 < m; ++j) c[j] = c[j + 1];
      c[m - 1] = top;
    }
    return d;
  }

  friend PiAdicScalar operator+(PiAdicScalar x, const PiAdicScalar& y) { return x += y; }
  friend PiAdicScalar operator-(PiAdicScalar x, const PiAdicScalar& y) { return x -= y; }
  friend PiAdicScalar operator-(PiAdicScalar x) {
    for (auto& v : x.c_) v = -v;
    x.normalize();
    return x;
  }
  PiAdicScalar& operator+=(const PiAdicScalar& y) {
    if (!adopt(y)) return *this;
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += y.c_[j];
    normalize();
    return *this;
  }
  PiAdicScalar& operator-=(const PiAdicScalar& y) {
    if (!adopt(y)) return *this;
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= y.c_[j];
    normalize();
    return *this;
  }
  friend PiAdicScalar operator*(const PiAdicScalar& x, const PiAdicScalar& y) {
    if (x.p_ == 0) return x;
    if (y.p_ == 0) return y;
    require(x.p_ == y.p_, "PiAdicScalar: mismatched primes");
    PiAdicScalar r(x.p_, std::min(x.M_, y.M_));
    const std::size_t m = x.c_.size();
    for (std::size_t i = 0; i < m; ++i) {
      if (x.c_[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (y.c_[j] == 0) continue;
        std::size_t e = i + j;
        if (e >= m) r.c_[e - m] -= static_cast<long>(x.p_) * x.c_[i] * y.c_[j];
        else r.c_[e] += x.c_[i] * y.c_[j];
      }
    }
    r.normalize();
    return r;
  }
  PiAdicScalar& operator*=(const PiAdicScalar& y) { return *this = *this * y; }
  friend bool operator==(const PiAdicScalar& x, const PiAdicScalar& y) { return (x - y).is_zero(); }

  bool is_unit() const { return p_ != 0 && !mpz_divisible_ui_p(c_[0].get_mpz_t(), p_); }

  // Newton iteration y ← y(2 − xy) from the inverse of the residue.
  PiAdicScalar inverse() const {
    if (!is_unit()) throw PreconditionError("PiAdicScalar: inverse of a non-unit");
    ExactInt inv, pp(p_);
    mpz_invert(inv.get_mpz_t(), c_[0].get_mpz_t(), pp.get_mpz_t());
    PiAdicScalar y(p_, M_, inv), two(p_, M_, ExactInt(2));
    for (long k = 0; k < 2 * M_ + 2; ++k) {
      PiAdicScalar next = y * (two - *this * y);
      if (next == y) break;
      y = next;
    }
    ensure((*this * y) == PiAdicScalar(p_, M_, ExactInt(1)), "π-adic inverse did not converge");
    return y;
  }
  friend PiAdicScalar operator/(const PiAdicScalar& x, const PiAdicScalar& y) { return x * y.inverse(); }

 private:
  static long ceil_div(long n, long d) { return n <= 0 ? 0 : (n + d - 1) / d; }

  bool adopt(const PiAdicScalar& y) {
    if (y.p_ == 0) return false;
    if (p_ == 0) {
      *this = PiAdicScalar(y.p_, y.M_);
      return true;
    }
    require(p_ == y.p_, "PiAdicScalar: mismatched primes");
    if (y.M_ < M_) M_ = y.M_;
    return true;
  }
  void normalize() {
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] = mod_floor(c_[j], modulus(j));
  }

  unsigned p_ = 0;
  long M_ = 0;
  std::vector<ExactInt> c_;
};

// Teichmüller lift of a nonzero residue, mod π^M: λ̄^{p^K} mod p^K.
inline PiAdicScalar teichmuller(unsigned p, long M, long residue) {
  long r = ((residue % static_cast<long>(p)) + p) % p;
  require(r != 0, "teichmuller: residue must be nonzero mod p");
  long K = (M + static_cast<long>(p) - 2) / (static_cast<long>(p) - 1);
  ExactInt mod = pow_int(ExactInt(p), static_cast<unsigned long>(K)), x;
  ExactInt e = pow_int(ExactInt(p), static_cast<unsigned long>(K));
  mpz_powm(x.get_mpz_t(), ExactInt(r).get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return PiAdicScalar(p, M, x);
}

// Reduction scalars over Z_p[π]/π^M with Λ specialized to a fixed unit λ.
struct TruncatedPadicScalars {
  using Scalar = PiAdicScalar;
  unsigned p;
  long M;
  PiAdicScalar lambda;
  TruncatedPadicScalars(unsigned p_, long M_, PiAdicScalar lambda_) : p(p_), M(M_), lambda(std::move(lambda_)) {
    require(lambda.is_unit(), "TruncatedPadicScalars: λ must be a π-adic unit");
  }
  Scalar zero() const { return PiAdicScalar(p, M); }
  Scalar one() const { return PiAdicScalar(p, M, ExactInt(1)); }
  Scalar from_rational(const ExactRat& q) const {
    if (mpz_divisible_ui_p(q.get_den().get_mpz_t(), p)) throw PreconditionError("not a π-adic integer");
    return PiAdicScalar::from_rational(p, M, PiRational(p, q));
  }
  Scalar lambda_power(long k) const {
    PiAdicScalar base = k >= 0 ? lambda : lambda.inverse(), r = one();
    for (long i = 0; i < (k >= 0 ? k : -k); ++i) r *= base;
    return r;
  }
  bool is_zero(const Scalar& x) const { return x.is_zero(); }
  std::string name() const { return "Z_" + std::to_string(p) + "[pi]/pi^" + std::to_string(M); }
  std::string str(const Scalar& x) const {
    std::string s;
    for (long d : x.digits()) s += std::to_string(d);
    return s;
  }
};

}  // namespace gks
