#pragma once
// Basis set B, weight profile, Hodge polygon, slope multisets and the
// ordinarity criteria for the family.

#include <map>
#include <vector>

#include "family.hpp"

namespace gks {

// The exclusion rules inside the box −c < v1 ≤ a, −d < v2 ≤ b.
inline bool in_basis(const FamilyParams& f, LatticePoint v) {
  const long a = f.a, b = f.b, c = f.c, d = f.d;
  if (!(-c < v.v1 && v.v1 <= a && -d < v.v2 && v.v2 <= b)) return false;
  if (c > 1 && d > 1)
    return (d - 1) * (v.v1 - a) <= (c - 1) * v.v2 && (c - 1) * v.v2 < (d - 1) * v.v1 + b * (c - 1);
  if (c == 1 && d > 1) return !(v.v1 == a && 1 - d <= v.v2 && v.v2 <= 0);
  if (c > 1 && d == 1) return !(v.v2 == b && 1 - c <= v.v1 && v.v1 <= 0);
  return !(v.v1 == 0 && v.v2 == b);
}

struct BasisSet {
  FamilyParams params;
  std::vector<LatticePoint> points;  // ordered by (v1, v2)

  std::size_t index_of(LatticePoint v) const {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i] == v) return i;
    throw PreconditionError("point is not a basis element");
  }
};

inline BasisSet basis_set(const FamilyParams& f) {
  BasisSet B{f, {}};
  for (long v1 = 1 - f.c; v1 <= f.a; ++v1)
    for (long v2 = 1 - f.d; v2 <= f.b; ++v2)
      if (in_basis(f, {v1, v2})) B.points.push_back({v1, v2});
  ensure(static_cast<long>(B.points.size()) == f.N(), "basis cardinality differs from ad+ab+bc for " + f.str());
  return B;
}

struct WeightProfile {
  long denominator;
  std::map<long, long> buckets;  // k ↦ #{u ∈ B : w(u) = k/denominator}
};

inline WeightProfile weight_profile(const FamilyParams& f) {
  WeightProfile wp{f.weight_denominator(), {}};
  for (auto v : basis_set(f).points) {
    ExactRat k = weight_of(f, v) * wp.denominator;
    ensure(k.get_den() == 1, "weight denominator does not divide ab·lcm(c,d)");
    ++wp.buckets[k.get_num().get_si()];
  }
  return wp;
}

// Hodge numbers from weight counts over all of Z²:
// H(k) = W(k) − 2W(k−D) + W(k−2D), W(k) = #{u : w(u) = k/D}.
// Weight ≤ 2 lives in 2Δ ⊂ [−2c, 2a] × [−2d, 2b].
inline WeightProfile hodge_numbers(const FamilyParams& f) {
  const long D = f.weight_denominator();
  std::map<long, long> W;
  for (long v1 = -2 * f.c; v1 <= 2 * f.a; ++v1)
    for (long v2 = -2 * f.d; v2 <= 2 * f.b; ++v2) {
      ExactRat k = weight_of(f, {v1, v2}) * D;
      ensure(k.get_den() == 1, "weight denominator does not divide ab·lcm(c,d)");
      if (k <= 2 * D) ++W[k.get_num().get_si()];
    }
  auto at = [&](long k) { return W.count(k) ? W.at(k) : 0L; };
  WeightProfile h{D, {}};
  long total = 0;
  for (long k = 0; k <= 2 * D; ++k) {
    long n = at(k) - 2 * at(k - D) + at(k - 2 * D);
    ensure(n >= 0, "negative Hodge number");
    if (n) h.buckets[k] = n, total += n;
  }
  ensure(total == f.N(), "Hodge numbers do not sum to N for " + f.str());
  return h;
}

inline RationalPolygon polygon_of(const WeightProfile& wp) {
  std::vector<HullInput> pts{{0, ExactRat(0)}};
  ExactRat x = 0, y = 0;
  for (auto [k, count] : wp.buckets) {
    x += count;
    y += rat(k, wp.denominator) * count;
    pts.emplace_back(x, y);
  }
  return lower_convex_hull(pts);
}

inline RationalPolygon hodge_polygon(const FamilyParams& f) { return polygon_of(hodge_numbers(f)); }

// The polygon read off the weights of B. It is the Hodge polygon when c = 1 or
// d = 1, and can differ from it otherwise.
inline RationalPolygon basis_weight_polygon(const FamilyParams& f) { return polygon_of(weight_profile(f)); }

// {(ai+bj)/ab : 0 ≤ i ≤ b, 0 ≤ j ≤ a} less one copy of the value 1, which is
// hit twice (at (i,j) = (0,a) and (b,0)); the remaining ab+a+b values are
// compared against the Hodge slopes by the tests.
inline std::vector<ExactRat> slope_multiset_ab(const FamilyParams& f) {
  require(f.c == 1 && f.d == 1, "slope_multiset_ab needs c = d = 1");
  std::vector<ExactRat> s;
  bool dropped = false;
  for (long i = 0; i <= f.b; ++i)
    for (long j = 0; j <= f.a; ++j) {
      if (i == 0 && j == f.a && !dropped) {
        dropped = true;
        continue;
      }
      s.push_back(rat(f.a * i + f.b * j, f.a * f.b));
    }
  std::sort(s.begin(), s.end());
  return s;
}

struct FaceReport {
  IntMatrix matrix;
  ExactInt abs_det;
  std::vector<ExactInt> invariant_factors;
  bool nondegenerate;        // gcd(p, det) = 1
  bool ordinary_sufficient;  // p ≡ 1 mod d_n
};

struct OrdinarityReport {
  FamilyParams params;
  long p;
  std::vector<FaceReport> faces;
  bool gcd_ad_is_one;
  bool congruence;  // p ≡ 1 mod ab·lcm(c,d)
  bool p_coprime_to_abcd;
  bool criterion() const { return gcd_ad_is_one && congruence && p_coprime_to_abcd; }
};

// Rows are the vertices of each face of the Newton triangle at infinity.
inline std::vector<IntMatrix> face_matrices(const FamilyParams& f) {
  return {IntMatrix{{f.a, 0}, {0, f.b}}, IntMatrix{{0, -f.c}, {f.b, -f.d}}, IntMatrix{{f.a, -f.c}, {0, -f.d}}};
}

inline OrdinarityReport ordinarity_report(const FamilyParams& f, long p) {
  require(is_prime(p), "ordinarity_report: p must be prime");
  OrdinarityReport r{f, p, {}, std::gcd(f.a, f.d) == 1, (p - 1) % f.weight_denominator() == 0,
                     (f.a * f.b * f.c * f.d) % p != 0};
  for (auto& m : face_matrices(f)) {
    FaceReport fr;
    fr.matrix = m;
    fr.abs_det = abs(determinant(m));
    fr.invariant_factors = smith_normal_form(m).invariant_factors();
    fr.nondegenerate = gcd(ExactInt(p), fr.abs_det) == 1;
    fr.ordinary_sufficient = mod_floor(ExactInt(p - 1), fr.invariant_factors.back()) == 0;
    r.faces.push_back(std::move(fr));
  }
  return r;
}

}  // namespace gks
