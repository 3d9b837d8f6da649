#pragma once
// Univariate polynomials, Laurent polynomials and rational functions in Λ.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exact.hpp"

namespace gks {

template <class F>
class Poly {
 public:
  Poly() = default;
  Poly(F c) {  // NOLINT: constants promote
    if (c != F(0)) c_.push_back(std::move(c));
  }
  explicit Poly(std::vector<F> c) : c_(std::move(c)) { trim(); }

  static Poly monomial(F c, std::size_t k) {
    std::vector<F> v(k + 1, F(0));
    v[k] = std::move(c);
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(F(1), 1); }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
  const std::vector<F>& coeffs() const { return c_; }
  F operator[](std::size_t k) const { return k < c_.size() ? c_[k] : F(0); }
  F lead() const { return c_.empty() ? F(0) : c_.back(); }

  friend Poly operator+(const Poly& x, const Poly& y) {
    std::vector<F> r(std::max(x.c_.size(), y.c_.size()), F(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i) r[i] += x.c_[i];
    for (std::size_t i = 0; i < y.c_.size(); ++i) r[i] += y.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& x) {
    Poly r = x;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend Poly operator-(const Poly& x, const Poly& y) { return x + (-y); }
  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<F> r(x.c_.size() + y.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i)
      for (std::size_t j = 0; j < y.c_.size(); ++j) r[i + j] += x.c_[i] * y.c_[j];
    return Poly(std::move(r));
  }
  Poly& operator+=(const Poly& y) { return *this = *this + y; }
  Poly& operator-=(const Poly& y) { return *this = *this - y; }
  Poly& operator*=(const Poly& y) { return *this = *this * y; }
  friend bool operator==(const Poly& x, const Poly& y) { return x.c_ == y.c_; }

  Poly scaled(const F& s) const {
    std::vector<F> r = c_;
    for (auto& c : r) c *= s;
    return Poly(std::move(r));
  }

  // Quotient and remainder; requires a field.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    require(!d.is_zero(), "polynomial division by zero");
    std::vector<F> r = c_;
    long dd = d.degree();
    std::vector<F> q(std::max<long>(0, degree() - dd + 1), F(0));
    for (long k = degree(); k >= dd; --k) {
      if (r[k] == F(0)) continue;
      F t = r[k] / d.lead();
      q[k - dd] = t;
      for (long j = 0; j <= dd; ++j) r[k - dd + j] -= t * d.c_[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
  }

  Poly monic() const { return is_zero() ? *this : scaled(F(1) / lead()); }

  Poly derivative() const {
    std::vector<F> r;
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * F(static_cast<long>(i)));
    return Poly(std::move(r));
  }

  // x·d/dx
  Poly theta() const {
    std::vector<F> r = c_;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] *= F(static_cast<long>(i));
    return Poly(std::move(r));
  }

  template <class X>
  X eval(const X& x) const {
    X acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + X(c_[i]);
    return acc;
  }

  // p(x^k)
  Poly compose_power(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<F> r((c_.size() - 1) * k + 1, F(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
    return Poly(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
  }
  std::vector<F> c_;
};

template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

using QPoly = Poly<ExactRat>;

inline std::string to_string(const QPoly& p, const std::string& var = "L") {
  if (p.is_zero()) return "0";
  std::string s;
  for (long k = p.degree(); k >= 0; --k) {
    ExactRat c = p[k];
    if (c == 0) continue;
    if (s.empty()) s += (c < 0 ? "-" : "");
    else s += (c < 0 ? " - " : " + ");
    ExactRat m = abs(c);
    if (k == 0 || m != 1) s += to_string(m) + (k > 0 ? "*" : "");
    if (k > 0) s += var + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Rational functions over Q in one variable, kept reduced with monic denominator.

class RationalFunction {
 public:
  RationalFunction() : num_(), den_(ExactRat(1)) {}
  RationalFunction(ExactRat c) : num_(std::move(c)), den_(ExactRat(1)) {}  // NOLINT
  RationalFunction(long c) : RationalFunction(ExactRat(c)) {}              // NOLINT
  RationalFunction(QPoly n) : num_(std::move(n)), den_(ExactRat(1)) {}     // NOLINT
  RationalFunction(QPoly n, QPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static RationalFunction var() { return RationalFunction(QPoly::x()); }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  friend RationalFunction operator+(const RationalFunction& x, const RationalFunction& y) {
    if (x.den_ == y.den_) return {x.num_ + y.num_, x.den_};
    return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
  }
  friend RationalFunction operator-(const RationalFunction& x) { return {-x.num_, x.den_}; }
  friend RationalFunction operator-(const RationalFunction& x, const RationalFunction& y) { return x + (-y); }
  friend RationalFunction operator*(const RationalFunction& x, const RationalFunction& y) {
    return {x.num_ * y.num_, x.den_ * y.den_};
  }
  friend RationalFunction operator/(const RationalFunction& x, const RationalFunction& y) {
    if (y.is_zero()) throw PreconditionError("rational function division by zero");
    return {x.num_ * y.den_, x.den_ * y.num_};
  }
  RationalFunction& operator+=(const RationalFunction& y) { return *this = *this + y; }
  RationalFunction& operator-=(const RationalFunction& y) { return *this = *this - y; }
  RationalFunction& operator*=(const RationalFunction& y) { return *this = *this * y; }
  friend bool operator==(const RationalFunction& x, const RationalFunction& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }

  // Λ·d/dΛ
  RationalFunction theta() const {
    return {num_.theta() * den_ - num_ * den_.theta(), den_ * den_};
  }

  // Laurent expansion when the denominator is a monomial; throws otherwise.
  std::map<long, ExactRat> laurent() const {
    long s = den_.degree();
    for (long k = 0; k < s; ++k)
      if (den_[k] != 0) throw InvariantError("denominator is not a monomial in Λ");
    std::map<long, ExactRat> out;
    for (long k = 0; k <= num_.degree(); ++k)
      if (num_[k] != 0) out[k - s] = num_[k] / den_[s];
    return out;
  }

  std::string str() const {
    if (is_polynomial()) return to_string(num_);
    return "(" + to_string(num_) + ")/(" + to_string(den_) + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw PreconditionError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = QPoly(ExactRat(1));
      return;
    }
    QPoly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
    ExactRat l = den_.lead();
    if (l != 1) {
      num_ = num_.scaled(1 / l);
      den_ = den_.scaled(1 / l);
    }
  }
  QPoly num_, den_;
};

// ---------------------------------------------------------------------------
// Laurent polynomials with coefficients in a commutative ring R.

template <class R>
class Laurent {
 public:
  Laurent() = default;
  Laurent(R c, long k = 0) {  // NOLINT
    if (!(c == R(0))) t_.emplace(k, std::move(c));
  }

  const std::map<long, R>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  R coeff(long k) const {
    auto it = t_.find(k);
    return it == t_.end() ? R(0) : it->second;
  }
  long min_degree() const { return t_.begin()->first; }
  long max_degree() const { return t_.rbegin()->first; }

  void add_term(long k, const R& c) {
    if (c == R(0)) return;
    auto [it, fresh] = t_.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second == R(0)) t_.erase(it);
    }
  }

  friend Laurent operator+(Laurent x, const Laurent& y) {
    for (auto& [k, c] : y.t_) x.add_term(k, c);
    return x;
  }
  friend Laurent operator-(const Laurent& x) {
    Laurent r;
    for (auto& [k, c] : x.t_) r.t_.emplace(k, -c);
    return r;
  }
  friend Laurent operator-(const Laurent& x, const Laurent& y) { return x + (-y); }
  friend Laurent operator*(const Laurent& x, const Laurent& y) {
    Laurent r;
    for (auto& [i, a] : x.t_)
      for (auto& [j, b] : y.t_) r.add_term(i + j, a * b);
    return r;
  }
  Laurent& operator+=(const Laurent& y) {
    for (auto& [k, c] : y.t_) add_term(k, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& y) { return *this = *this - y; }
  Laurent& operator*=(const Laurent& y) { return *this = *this * y; }
  friend bool operator==(const Laurent& x, const Laurent& y) { return x.t_ == y.t_; }

  Laurent shifted(long s) const {
    Laurent r;
    for (auto& [k, c] : t_) r.t_.emplace(k + s, c);
    return r;
  }
  Laurent scaled(const R& s) const {
    Laurent r;
    for (auto& [k, c] : t_) r.add_term(k, c * s);
    return r;
  }

 private:
  std::map<long, R> t_;
};

using QLaurent = Laurent<ExactRat>;

}  // namespace gks
