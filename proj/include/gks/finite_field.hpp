#pragma once
// F_p and F_{p^k} as F_p[t]/(modulus), traces to F_p, torus enumeration.

#include <cstdint>
#include <functional>
#include <vector>

#include "family.hpp"

namespace gks {

using Residue = std::uint32_t;
using FFElement = std::vector<Residue>;  // coefficients of 1, t, ..., t^{k-1}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t p) { return x * y % p; }

inline std::uint64_t powmod(std::uint64_t x, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  x %= p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return r;
}

// Remainder of f modulo monic g over F_p (little-endian coefficient vectors).
inline std::vector<Residue> poly_rem(std::vector<Residue> f, const std::vector<Residue>& g, Residue p) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t k = f.size(); k-- > dg;) {
    Residue t = f[k];
    if (!t) continue;
    for (std::size_t j = 0; j <= dg; ++j) f[k - dg + j] = static_cast<Residue>((f[k - dg + j] + (p - t) * std::uint64_t(g[j])) % p);
  }
  f.resize(dg);
  return f;
}

// Monic polynomial of degree n whose low coefficients are the base-p digits of code.
inline std::vector<Residue> monic_from_code(std::uint64_t code, std::size_t n, Residue p) {
  std::vector<Residue> f(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) f[i] = static_cast<Residue>(code % p), code /= p;
  f[n] = 1;
  return f;
}

}  // namespace detail

inline std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

// Exhaustive trial division by every monic polynomial of degree ≤ k/2.
inline bool is_irreducible(const std::vector<Residue>& f, Residue p) {
  const std::size_t k = f.size() - 1;
  for (std::size_t dg = 1; 2 * dg <= k; ++dg)
    for (std::uint64_t code = 0; code < ipow(p, static_cast<unsigned>(dg)); ++code) {
      auto r = detail::poly_rem(f, detail::monic_from_code(code, dg, p), p);
      bool zero = true;
      for (Residue x : r) zero = zero && x == 0;
      if (zero) return false;
    }
  return true;
}

// Least monic irreducible of degree k, where candidates are ordered by the
// integer Σ c_i p^i (so the tuple (c_{k-1}, ..., c_0) compares lexicographically).
inline std::vector<Residue> find_irreducible(Residue p, unsigned k) {
  require(is_prime(p), "find_irreducible: p must be prime");
  require(k >= 1, "find_irreducible: k >= 1");
  for (std::uint64_t code = 0; code < ipow(p, k); ++code) {
    auto f = detail::monic_from_code(code, k, p);
    if (is_irreducible(f, p)) return f;
  }
  throw InvariantError("no irreducible polynomial found");
}

class FieldTower {
 public:
  FieldTower(Residue p, unsigned k) : p_(p), k_(k) {
    require(is_prime(p) && p > 2, "FieldTower: p must be an odd prime");
    require(k >= 1 && ipow(p, k) < (std::uint64_t(1) << 31), "FieldTower: degree out of desk range");
    modulus_ = find_irreducible(p, k);
  }
  FieldTower(Residue p, std::vector<Residue> modulus) : p_(p), k_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
    require(is_prime(p) && p > 2, "FieldTower: p must be an odd prime");
    require(modulus_.back() == 1 && is_irreducible(modulus_, p), "FieldTower: modulus must be monic irreducible");
  }

  Residue p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint64_t size() const { return ipow(p_, k_); }
  const std::vector<Residue>& modulus() const { return modulus_; }

  FFElement zero() const { return FFElement(k_, 0); }
  FFElement from_residue(std::int64_t r) const {
    FFElement x = zero();
    x[0] = static_cast<Residue>(((r % std::int64_t(p_)) + p_) % p_);
    return x;
  }
  FFElement one() const { return from_residue(1); }
  FFElement generator() const {  // the class of t
    if (k_ == 1) return from_residue(static_cast<std::int64_t>(p_) - modulus_[0]);
    FFElement x = zero();
    x[1] = 1;
    return x;
  }

  // Elements indexed 0..q−1 by reading base-p digits as coefficients.
  FFElement element(std::uint64_t index) const {
    FFElement x(k_);
    for (unsigned i = 0; i < k_; ++i) x[i] = static_cast<Residue>(index % p_), index /= p_;
    return x;
  }
  std::uint64_t index(const FFElement& x) const {
    std::uint64_t n = 0;
    for (unsigned i = k_; i-- > 0;) n = n * p_ + x[i];
    return n;
  }

  bool is_zero(const FFElement& x) const {
    for (Residue c : x)
      if (c) return false;
    return true;
  }

  FFElement add(const FFElement& x, const FFElement& y) const {
    FFElement z(k_);
    for (unsigned i = 0; i < k_; ++i) z[i] = (x[i] + y[i]) % p_;
    return z;
  }
  FFElement sub(const FFElement& x, const FFElement& y) const {
    FFElement z(k_);
    for (unsigned i = 0; i < k_; ++i) z[i] = (x[i] + p_ - y[i]) % p_;
    return z;
  }
  FFElement scale(const FFElement& x, Residue s) const {
    FFElement z(k_);
    for (unsigned i = 0; i < k_; ++i) z[i] = static_cast<Residue>(detail::mulmod(x[i], s % p_, p_));
    return z;
  }
  FFElement mul(const FFElement& x, const FFElement& y) const {
    std::vector<Residue> prod(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i)
      if (x[i])
        for (unsigned j = 0; j < k_; ++j) prod[i + j] = static_cast<Residue>((prod[i + j] + std::uint64_t(x[i]) * y[j]) % p_);
    return detail::poly_rem(std::move(prod), modulus_, p_);
  }
  FFElement pow(FFElement x, std::uint64_t e) const {
    FFElement r = one();
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  // x^{q−2}
  FFElement inv(const FFElement& x) const {
    require(!is_zero(x), "inverse of zero in F_q");
    return pow(x, size() - 2);
  }
  // x^p
  FFElement frobenius(const FFElement& x) const { return pow(x, p_); }

  // x + x^p + ... + x^{p^{k−1}}, landing in F_p.
  Residue trace_to_prime(const FFElement& x) const {
    FFElement acc = zero(), y = x;
    for (unsigned i = 0; i < k_; ++i) {
      acc = add(acc, y);
      y = frobenius(y);
    }
    for (unsigned i = 1; i < k_; ++i) ensure(acc[i] == 0, "trace left the prime field");
    return acc[0];
  }

  // A generator of F_q^*, the least by index.
  FFElement primitive_element() const {
    const std::uint64_t n = size() - 1;
    std::vector<std::uint64_t> primes;
    std::uint64_t m = n;
    for (std::uint64_t f = 2; f * f <= m; ++f)
      if (m % f == 0) {
        primes.push_back(f);
        while (m % f == 0) m /= f;
      }
    if (m > 1) primes.push_back(m);
    for (std::uint64_t i = 1; i < size(); ++i) {
      FFElement g = element(i);
      bool ok = true;
      for (auto f : primes)
        if (pow(g, n / f) == one()) { ok = false; break; }
      if (ok) return g;
    }
    throw InvariantError("no primitive element");
  }

 private:
  Residue p_;
  unsigned k_;
  std::vector<Residue> modulus_;
};

// x1^a + x2^b + λ̄ x1^{−c} x2^{−d}
inline FFElement evaluate_family(const FamilyParams& f, const FieldTower& F, Residue lambda, const FFElement& x1,
                                 const FFElement& x2) {
  require(!F.is_zero(x1) && !F.is_zero(x2), "evaluate_family: point not on the torus");
  require(lambda % F.p() != 0, "evaluate_family: λ̄ must be nonzero");
  FFElement t = F.inv(F.mul(F.pow(x1, f.c), F.pow(x2, f.d)));
  return F.add(F.add(F.pow(x1, f.a), F.pow(x2, f.b)), F.scale(t, lambda));
}

// Visit torus points with linear index in [begin, end); index n ↦ (n / (q−1) + 1, n % (q−1) + 1)
// as element indices. Disjoint ranges partition the torus.
inline void for_each_torus_point(const FieldTower& F, std::uint64_t begin, std::uint64_t end,
                                 const std::function<void(const FFElement&, const FFElement&)>& visit) {
  const std::uint64_t m = F.size() - 1;
  require(end <= m * m && begin <= end, "torus range out of bounds");
  for (std::uint64_t n = begin; n < end; ++n) visit(F.element(n / m + 1), F.element(n % m + 1));
}

// Tr(g^e) for e in [0, q−1), with g the primitive element.
inline std::vector<Residue> trace_table(const FieldTower& F) {
  const std::uint64_t m = F.size() - 1;
  std::vector<Residue> t(m);
  FFElement g = F.primitive_element(), x = F.one();
  for (std::uint64_t e = 0; e < m; ++e) {
    t[e] = F.trace_to_prime(x);
    x = F.mul(x, g);
  }
  return t;
}

}  // namespace gks
