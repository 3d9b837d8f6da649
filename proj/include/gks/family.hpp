#pragma once
// The family x1^a + x2^b + Λ x1^-c x2^-d: parameters, lattice points,
// the three cones of the Newton triangle, and the weight and m functions.

#include <compare>
#include <numeric>
#include <string>

#include "exact.hpp"

namespace gks {

struct FamilyParams {
  long a = 1, b = 1, c = 1, d = 1;

  FamilyParams() = default;
  FamilyParams(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {
    require(a > 0 && b > 0 && c > 0 && d > 0, "family exponents must be positive");
    require(std::gcd(a, b) == 1 && std::gcd(a, c) == 1 && std::gcd(b, c) == 1 && std::gcd(b, d) == 1,
            "family needs gcd(a,b)=gcd(a,c)=gcd(b,c)=gcd(b,d)=1 (got " + str() + ")");
  }

  static bool valid(long a, long b, long c, long d) {
    return a > 0 && b > 0 && c > 0 && d > 0 && std::gcd(a, b) == 1 && std::gcd(a, c) == 1 &&
           std::gcd(b, c) == 1 && std::gcd(b, d) == 1;
  }

  long N() const { return a * d + a * b + b * c; }
  // ab·lcm(c,d): common denominator of every weight.
  long weight_denominator() const { return a * b * std::lcm(c, d); }

  std::string str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," +
           std::to_string(d) + ")";
  }
  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

struct LatticePoint {
  long v1 = 0, v2 = 0;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend LatticePoint operator+(LatticePoint u, LatticePoint v) { return {u.v1 + v.v1, u.v2 + v.v2}; }
  friend LatticePoint operator-(LatticePoint u, LatticePoint v) { return {u.v1 - v.v1, u.v2 - v.v2}; }
  friend LatticePoint operator*(long k, LatticePoint v) { return {k * v.v1, k * v.v2}; }
};

inline LatticePoint mu(const FamilyParams& f) { return {-f.c, -f.d}; }

enum class Cone { Diagonal, AMu, BMu };  // Cone(f̄), Cone((a,0),μ), Cone((0,b),μ)

// Membership by nonnegative coordinates on the two generators of each cone.
inline bool in_cone_diagonal(const FamilyParams&, LatticePoint v) { return v.v1 >= 0 && v.v2 >= 0; }
// v = s(a,0) + t(−c,−d): t = −v2/d ≥ 0, s = (v1 − c v2/d)/a ≥ 0.
inline bool in_cone_amu(const FamilyParams& f, LatticePoint v) { return v.v2 <= 0 && f.d * v.v1 >= f.c * v.v2; }
inline bool in_cone_bmu(const FamilyParams& f, LatticePoint v) { return v.v1 <= 0 && f.c * v.v2 >= f.d * v.v1; }

inline Cone cone_of(const FamilyParams& f, LatticePoint v) {
  if (in_cone_diagonal(f, v)) return Cone::Diagonal;
  if (in_cone_amu(f, v)) return Cone::AMu;
  ensure(in_cone_bmu(f, v), "cones fail to cover Z^2");
  return Cone::BMu;
}

// The linear form of one cone, without choosing it by membership.
inline ExactRat weight_formula(const FamilyParams& f, Cone k, LatticePoint v) {
  switch (k) {
    case Cone::Diagonal: return rat(v.v1, f.a) + rat(v.v2, f.b);
    case Cone::AMu: return rat(v.v1, f.a) - rat((f.a + f.c) * v.v2, f.a * f.d);
    case Cone::BMu: return rat(v.v2, f.b) - rat((f.b + f.d) * v.v1, f.b * f.c);
  }
  return 0;
}

inline ExactRat m_formula(const FamilyParams& f, Cone k, LatticePoint v) {
  switch (k) {
    case Cone::Diagonal: return 0;
    case Cone::AMu: return rat(-v.v2, f.d);
    case Cone::BMu: return rat(-v.v1, f.c);
  }
  return 0;
}

inline ExactRat weight_of(const FamilyParams& f, LatticePoint v) { return weight_formula(f, cone_of(f, v), v); }
inline ExactRat m_of(const FamilyParams& f, LatticePoint v) { return m_formula(f, cone_of(f, v), v); }

// Λ-weight 1 − l(μ) = 1 + c/a + d/b, with l the linear form of Cone(f̄).
inline ExactRat lambda_weight(const FamilyParams& f) { return 1 + rat(f.c, f.a) + rat(f.d, f.b); }

inline ExactRat diagonal_form(const FamilyParams& f, LatticePoint v) { return weight_formula(f, Cone::Diagonal, v); }

// Weight of Λ^r x^v in the total space.
inline ExactRat total_weight(const FamilyParams& f, const ExactRat& r, LatticePoint v) {
  return diagonal_form(f, v) + r * lambda_weight(f);
}

}  // namespace gks
