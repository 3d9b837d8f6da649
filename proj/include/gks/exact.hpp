#pragma once
// Exact integers/rationals (GMP), integer matrices with Smith normal form,
// integer kernels, and lower convex hulls with rational vertices.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace gks {

using ExactInt = mpz_class;
using ExactRat = mpq_class;

inline ExactRat rat(long n, long d = 1) {
  ExactRat r(n, d);
  r.canonicalize();
  return r;
}

inline ExactRat rat(const ExactInt& n, const ExactInt& d = 1) {
  ExactRat r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const ExactInt& x) { return x.get_str(); }

// "n" for integers, "n/d" otherwise.
inline std::string to_string(const ExactRat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline ExactRat parse_rat(const std::string& s) {
  ExactRat r;
  if (r.set_str(s, 10) != 0) throw PreconditionError("not a rational: " + s);
  r.canonicalize();
  return r;
}

inline ExactInt floor_div(const ExactInt& a, const ExactInt& b) {
  ExactInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline ExactInt mod_floor(const ExactInt& a, const ExactInt& m) {
  ExactInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline ExactInt pow_int(const ExactInt& base, unsigned long e) {
  ExactInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline ExactInt gcd(const ExactInt& a, const ExactInt& b) {
  ExactInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline ExactInt lcm(const ExactInt& a, const ExactInt& b) {
  ExactInt g;
  mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// p-adic valuation of a nonzero integer.
inline long vp(const ExactInt& x, unsigned long p) {
  if (x == 0) throw PreconditionError("valuation of zero");
  ExactInt y = x;
  long v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
    mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
    ++v;
  }
  return v;
}

inline long vp(const ExactRat& x, unsigned long p) {
  return vp(ExactInt(x.get_num()), p) - vp(ExactInt(x.get_den()), p);
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

inline ExactInt factorial(unsigned long n) {
  ExactInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// ---------------------------------------------------------------------------

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (auto& row : init) {
      require(row.size() == cols_, "ragged matrix literal");
      for (long x : row) e_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  ExactInt& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const ExactInt& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    require(x.cols_ == y.rows_, "matrix shape mismatch");
    IntMatrix z(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) z(i, j) += x(i, k) * y(k, j);
      }
    return z;
  }

  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.e_ == y.e_;
  }

  IntMatrix drop_row(std::size_t r) const {
    IntMatrix m(rows_ - 1, cols_);
    for (std::size_t i = 0, k = 0; i < rows_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(i, j);
      ++k;
    }
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row a += k * row b
  void add_row(std::size_t a, std::size_t b, const ExactInt& k) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) += k * (*this)(b, j);
  }
  void add_col(std::size_t a, std::size_t b, const ExactInt& k) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) += k * (*this)(i, b);
  }
  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) = -(*this)(a, j);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<ExactInt> e_;
};

// Determinant by fraction-free (Bareiss) elimination.
inline ExactInt determinant(IntMatrix m) {
  require(m.rows() == m.cols(), "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  ExactInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct SmithForm {
  IntMatrix U, S, V;  // U * M * V = S
  std::vector<ExactInt> invariant_factors() const {
    std::vector<ExactInt> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
};

inline SmithForm smith_normal_form(const IntMatrix& M) {
  require(M.rows() > 0 && M.cols() > 0, "smith_normal_form: empty matrix");
  const std::size_t r = M.rows(), c = M.cols();
  IntMatrix A = M, U = IntMatrix::identity(r), V = IntMatrix::identity(c);

  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    for (;;) {
      // Pivot: smallest nonzero absolute value in the trailing block.
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (A(i, j) != 0 && (pi == r || abs(A(i, j)) < abs(A(pi, pj)))) pi = i, pj = j;
      if (pi == r) goto done;
      if (pi != t) A.swap_rows(t, pi), U.swap_rows(t, pi);
      if (pj != t) A.swap_cols(t, pj), V.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        ExactInt q = A(i, t) / A(t, t);
        if (q != 0) A.add_row(i, t, -q), U.add_row(i, t, -q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        ExactInt q = A(t, j) / A(t, t);
        if (q != 0) A.add_col(j, t, -q), V.add_col(j, t, -q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility chain: fold any offending row into row t and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
            A.add_row(t, i, 1), U.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (A(t, t) < 0) A.negate_row(t), U.negate_row(t);
  }
done:
  return {U, A, V};
}

inline std::size_t rank(const IntMatrix& M) {
  auto f = smith_normal_form(M).invariant_factors();
  return static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [](const ExactInt& x) { return x != 0; }));
}

// Basis of {l : A l = 0}, each primitive with first nonzero entry positive.
inline std::vector<std::vector<ExactInt>> integer_kernel(const IntMatrix& A) {
  auto sf = smith_normal_form(A);
  std::size_t rk = 0;
  for (auto& d : sf.invariant_factors())
    if (d != 0) ++rk;
  if (rk != A.rows()) throw PreconditionError("integer_kernel: matrix is rank deficient");

  std::vector<std::vector<ExactInt>> out;
  for (std::size_t j = rk; j < A.cols(); ++j) {
    std::vector<ExactInt> g(A.cols());
    ExactInt content = 0;
    for (std::size_t i = 0; i < A.cols(); ++i) {
      g[i] = sf.V(i, j);
      content = gcd(content, g[i]);
    }
    for (auto& x : g) x /= content;
    auto nz = std::find_if(g.begin(), g.end(), [](const ExactInt& x) { return x != 0; });
    if (nz != g.end() && *nz < 0)
      for (auto& x : g) x = -x;
    out.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct RationalPoint {
  ExactRat x, y;
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

struct RationalPolygon {
  std::vector<RationalPoint> vertices;

  friend bool operator==(const RationalPolygon&, const RationalPolygon&) = default;

  // Each segment's slope with its horizontal length.
  std::vector<std::pair<ExactRat, ExactRat>> slopes() const {
    std::vector<std::pair<ExactRat, ExactRat>> s;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      ExactRat dx = vertices[i].x - vertices[i - 1].x;
      s.emplace_back((vertices[i].y - vertices[i - 1].y) / dx, dx);
    }
    return s;
  }

  // Slopes repeated by integral length, ascending.
  std::vector<ExactRat> slope_multiset() const {
    std::vector<ExactRat> out;
    for (auto& [s, len] : slopes()) {
      ensure(len.get_den() == 1, "slope multiset needs integral segment lengths");
      for (ExactInt k = 0; k < len.get_num(); ++k) out.push_back(s);
    }
    return out;
  }

  ExactRat value_at(const ExactRat& x) const {
    require(!vertices.empty() && x >= vertices.front().x && x <= vertices.back().x, "abscissa outside polygon");
    for (std::size_t i = 1; i < vertices.size(); ++i)
      if (x <= vertices[i].x) {
        auto& a = vertices[i - 1];
        auto& b = vertices[i];
        return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
      }
    return vertices.back().y;
  }
};

using HullInput = std::pair<ExactRat, std::optional<ExactRat>>;  // nullopt = +∞

inline RationalPolygon lower_convex_hull(std::vector<HullInput> pts) {
  std::vector<RationalPoint> finite;
  for (auto& [x, y] : pts)
    if (y) finite.push_back({x, *y});
  if (finite.empty()) throw PreconditionError("lower_convex_hull: no finite points");
  std::sort(finite.begin(), finite.end(), [](auto& u, auto& v) { return u.x < v.x; });
  for (std::size_t i = 1; i < finite.size(); ++i)
    require(finite[i].x != finite[i - 1].x, "lower_convex_hull: repeated abscissa");

  // Monotone chain; pop while the turn is not strictly convex (drops collinear).
  std::vector<RationalPoint> h;
  for (auto& q : finite) {
    while (h.size() >= 2) {
      auto& o = h[h.size() - 2];
      auto& a = h.back();
      ExactRat cross = (a.x - o.x) * (q.y - o.y) - (a.y - o.y) * (q.x - o.x);
      if (cross <= 0) h.pop_back();
      else break;
    }
    h.push_back(q);
  }
  return {h};
}

// Lower convex polygon from a slope multiset, starting at the origin.
inline RationalPolygon polygon_from_slopes(std::vector<ExactRat> slopes) {
  std::sort(slopes.begin(), slopes.end());
  std::vector<HullInput> pts{{0, ExactRat(0)}};
  ExactRat y = 0;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    y += slopes[i];
    pts.emplace_back(ExactRat(static_cast<long>(i + 1)), y);
  }
  return lower_convex_hull(pts);
}

}  // namespace gks
