#pragma once
// Dense matrices over a generic ring, with field elimination and a
// division-free characteristic polynomial.

#include <functional>
#include <vector>

#include "errors.hpp"

namespace gks {

template <class R>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const R& fill) : r_(rows), c_(cols), e_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const R& zero, const R& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  R& operator()(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

  Matrix transpose() const {
    Matrix t(c_, r_, e_.empty() ? R() : e_[0]);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class F>
  auto map(F&& f) const {
    using S = decltype(f(e_[0]));
    Matrix<S> m(r_, c_, S());
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.e_ == y.e_; }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<R> e_;
};

template <class R>
Matrix<R> mat_mul(const Matrix<R>& x, const Matrix<R>& y, const R& zero) {
  require(x.cols() == y.rows(), "matrix shape mismatch");
  Matrix<R> z(x.rows(), y.cols(), zero);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k)
      for (std::size_t j = 0; j < y.cols(); ++j) z(i, j) = z(i, j) + x(i, k) * y(k, j);
  return z;
}

// Gauss–Jordan over a field. is_zero decides pivots. Returns nullopt-like empty
// matrix (0×0) when singular.
template <class F, class IsZero>
Matrix<F> inverse(const Matrix<F>& m, const F& zero, const F& one, IsZero is_zero) {
  require(m.rows() == m.cols(), "inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<F> a = m, inv = Matrix<F>::identity(n, zero, one);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && is_zero(a(r, c))) ++r;
    if (r == n) return {};
    for (std::size_t j = 0; j < n; ++j) std::swap(a(r, j), a(c, j)), std::swap(inv(r, j), inv(c, j));
    F piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) a(c, j) = a(c, j) / piv, inv(c, j) = inv(c, j) / piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || is_zero(a(i, c))) continue;
      F f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) a(i, j) = a(i, j) - f * a(c, j), inv(i, j) = inv(i, j) - f * inv(c, j);
    }
  }
  return inv;
}

template <class F, class IsZero>
F determinant(Matrix<F> a, const F& zero, const F& one, IsZero is_zero) {
  const std::size_t n = a.rows();
  F det = one;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && is_zero(a(r, c))) ++r;
    if (r == n) return zero;
    if (r != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(r, j), a(c, j));
      det = zero - det;
    }
    det = det * a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(a(i, c))) continue;
      F f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) = a(i, j) - f * a(c, j);
    }
  }
  return det;
}

// Berkowitz: coefficients [1, c_1, ..., c_n] of det(xI − A) = x^n + c_1 x^{n−1} + ...
// using only ring operations.
template <class R>
std::vector<R> charpoly(const Matrix<R>& A, const R& zero, const R& one) {
  const std::size_t n = A.rows();
  require(n == A.cols(), "charpoly of non-square matrix");
  std::vector<R> C{one};
  if (n == 0) return C;
  C.push_back(zero - A(0, 0));
  for (std::size_t r = 1; r < n; ++r) {
    // Column of the Toeplitz matrix: 1, −a_rr, −R S, −R A S, ..., −R A^{r−2} S
    std::vector<R> t{one, zero - A(r, r)};
    std::vector<R> v(r);  // A_{r−1}^k S
    for (std::size_t i = 0; i < r; ++i) v[i] = A(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      R rs = zero;
      for (std::size_t i = 0; i < r; ++i) rs = rs + A(r, i) * v[i];
      t.push_back(zero - rs);
      std::vector<R> w(r, zero);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) w[i] = w[i] + A(i, j) * v[j];
      v = std::move(w);
    }
    // C_new = T · C, T lower-triangular Toeplitz of size (r+2)×(r+1)
    std::vector<R> next(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] = next[i] + t[i - j] * C[j];
    C = std::move(next);
  }
  return C;
}

}  // namespace gks
