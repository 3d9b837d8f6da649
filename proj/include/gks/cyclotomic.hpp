#pragma once
// Z[ζ_p] on the power basis 1, ζ, ..., ζ^{p−2}, with (1−ζ)-adic valuations.

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "exact.hpp"

namespace gks {

class CycloInt {
 public:
  CycloInt() = default;
  explicit CycloInt(unsigned p) : p_(p), c_(p - 1, 0) { require(is_prime(p) && p > 2, "CycloInt: odd prime p"); }
  CycloInt(unsigned p, long n) : CycloInt(p) { c_[0] = n; }
  CycloInt(unsigned p, std::vector<ExactInt> coeffs) : CycloInt(p) {
    require(coeffs.size() == p - 1, "CycloInt: need p−1 coefficients");
    c_ = std::move(coeffs);
  }

  // Σ n_r ζ^r over r = 0..p−1, rewritten canonically.
  static CycloInt from_exponent_counts(unsigned p, const std::vector<ExactInt>& n) {
    require(n.size() == p, "exponent counts need p entries");
    CycloInt x(p);
    for (unsigned i = 0; i + 1 < p; ++i) x.c_[i] = n[i] - n[p - 1];
    return x;
  }
  static CycloInt zeta_power(unsigned p, long e) {
    std::vector<ExactInt> n(p, 0);
    n[static_cast<unsigned>(((e % long(p)) + p) % p)] = 1;
    return from_exponent_counts(p, n);
  }

  unsigned p() const { return p_; }
  const std::vector<ExactInt>& coeffs() const { return c_; }
  bool is_zero() const {
    for (auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  friend CycloInt operator+(CycloInt x, const CycloInt& y) {
    check_same(x, y);
    for (unsigned i = 0; i + 1 < x.p_; ++i) x.c_[i] += y.c_[i];
    return x;
  }
  friend CycloInt operator-(CycloInt x) {
    for (auto& c : x.c_) c = -c;
    return x;
  }
  friend CycloInt operator-(const CycloInt& x, const CycloInt& y) { return x + (-y); }
  friend CycloInt operator*(const CycloInt& x, const CycloInt& y) {
    check_same(x, y);
    const unsigned p = x.p_;
    std::vector<ExactInt> n(p, 0);
    for (unsigned i = 0; i + 1 < p; ++i) {
      if (x.c_[i] == 0) continue;
      for (unsigned j = 0; j + 1 < p; ++j) n[(i + j) % p] += x.c_[i] * y.c_[j];
    }
    return from_exponent_counts(p, n);
  }
  friend CycloInt operator*(const ExactInt& k, CycloInt x) {
    for (auto& c : x.c_) c *= k;
    return x;
  }
  CycloInt& operator+=(const CycloInt& y) { return *this = *this + y; }
  CycloInt& operator-=(const CycloInt& y) { return *this = *this - y; }
  CycloInt& operator*=(const CycloInt& y) { return *this = *this * y; }
  friend bool operator==(const CycloInt& x, const CycloInt& y) { return x.p_ == y.p_ && x.c_ == y.c_; }

  // Exact quotient by (1−ζ) when it exists.
  std::optional<CycloInt> divide_by_uniformizer() const;

 private:
  static void check_same(const CycloInt& x, const CycloInt& y) {
    if (x.p_ != y.p_) throw PreconditionError("CycloInt: mismatched primes");
  }
  unsigned p_ = 3;
  std::vector<ExactInt> c_;
};

namespace detail {

// Inverse over Q of the matrix of multiplication by (1−ζ), computed once per p.
inline const std::vector<std::vector<ExactRat>>& uniformizer_inverse(unsigned p) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<std::vector<ExactRat>>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;

  const unsigned n = p - 1;
  CycloInt u = CycloInt(p, 1) - CycloInt::zeta_power(p, 1);
  std::vector<std::vector<ExactRat>> m(n, std::vector<ExactRat>(2 * n, 0));
  for (unsigned j = 0; j < n; ++j) {
    CycloInt col = u * CycloInt::zeta_power(p, j);
    for (unsigned i = 0; i < n; ++i) m[i][j] = col.coeffs()[i];
    m[j][n + j] = 1;
  }
  for (unsigned c = 0; c < n; ++c) {
    unsigned r = c;
    while (m[r][c] == 0) ++r;
    std::swap(m[r], m[c]);
    ExactRat piv = m[c][c];
    for (auto& x : m[c]) x /= piv;
    for (unsigned i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      ExactRat f = m[i][c];
      for (unsigned j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  std::vector<std::vector<ExactRat>> inv(n, std::vector<ExactRat>(n));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return cache.emplace(p, std::move(inv)).first->second;
}

}  // namespace detail

inline std::optional<CycloInt> CycloInt::divide_by_uniformizer() const {
  const auto& inv = detail::uniformizer_inverse(p_);
  std::vector<ExactInt> q(p_ - 1);
  for (unsigned i = 0; i + 1 < p_; ++i) {
    ExactRat s = 0;
    for (unsigned j = 0; j + 1 < p_; ++j) s += inv[i][j] * c_[j];
    if (s.get_den() != 1) return std::nullopt;
    q[i] = s.get_num();
  }
  CycloInt y(p_, std::move(q));
  ensure((CycloInt(p_, 1) - zeta_power(p_, 1)) * y == *this, "division by (1−ζ) failed to round-trip");
  return y;
}

// Largest v with x ∈ (1−ζ)^v; nullopt stands for +∞ (x = 0).
inline std::optional<long> pi_valuation(CycloInt x) {
  if (x.is_zero()) return std::nullopt;
  const unsigned p = x.p();
  long v = 0;
  for (;;) {
    bool all_div = true;
    for (auto& c : x.coeffs()) all_div = all_div && mpz_divisible_ui_p(c.get_mpz_t(), p);
    if (all_div) {
      std::vector<ExactInt> q = x.coeffs();
      for (auto& c : q) mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
      x = CycloInt(p, std::move(q));
      v += p - 1;
      continue;
    }
    ExactInt s = 0;
    for (auto& c : x.coeffs()) s += c;
    if (!mpz_divisible_ui_p(s.get_mpz_t(), p)) return v;
    auto q = x.divide_by_uniformizer();
    ensure(q.has_value(), "coefficient sum divisible by p but (1−ζ) does not divide");
    x = *q;
    ++v;
  }
}

// pi_valuation / ((p−1)·ã)
inline std::optional<ExactRat> ord_q(const CycloInt& x, unsigned a_tilde = 1) {
  auto v = pi_valuation(x);
  if (!v) return std::nullopt;
  return rat(*v, static_cast<long>((x.p() - 1) * a_tilde));
}

// Element of Q(ζ_p) as numerator / positive integer, reduced.
class CycloRat {
 public:
  CycloRat() = default;
  explicit CycloRat(CycloInt n, ExactInt d = 1) : n_(std::move(n)), d_(std::move(d)) { reduce(); }

  const CycloInt& num() const { return n_; }
  const ExactInt& den() const { return d_; }
  bool is_integral() const { return d_ == 1; }

  friend CycloRat operator+(const CycloRat& x, const CycloRat& y) {
    return CycloRat(y.d_ * x.n_ + x.d_ * y.n_, x.d_ * y.d_);
  }
  friend CycloRat operator-(const CycloRat& x) { return CycloRat(-x.n_, x.d_); }
  friend CycloRat operator-(const CycloRat& x, const CycloRat& y) { return x + (-y); }
  friend CycloRat operator*(const CycloRat& x, const CycloRat& y) { return CycloRat(x.n_ * y.n_, x.d_ * y.d_); }
  CycloRat divided_by(const ExactInt& k) const {
    require(k != 0, "CycloRat: division by zero");
    return k > 0 ? CycloRat(n_, d_ * k) : CycloRat(-n_, -d_ * k);
  }

 private:
  void reduce() {
    require(d_ != 0, "CycloRat: zero denominator");
    if (d_ < 0) d_ = -d_, n_ = -n_;
    ExactInt g = d_;
    for (auto& c : n_.coeffs()) g = gcd(g, c);
    if (g != 1) {
      std::vector<ExactInt> q = n_.coeffs();
      for (auto& c : q) c /= g;
      n_ = CycloInt(n_.p(), std::move(q));
      d_ /= g;
    }
  }
  CycloInt n_;
  ExactInt d_ = 1;
};

}  // namespace gks
