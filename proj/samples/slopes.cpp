// Hodge slopes of a family next to the Newton slopes of L(T)^{-1} at each
// lambda in F_p^*.
//
//   sample_slopes a b c d p

#include <cstdlib>
#include <iostream>

#include "gks/lfunction.hpp"
#include "gks/newton_hodge.hpp"

using namespace gks;

namespace {

void print_slopes(const char* tag, const RationalPolygon& P) {
  std::cout << tag;
  for (auto& s : P.slope_multiset()) std::cout << " " << to_string(s);
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 6) {
    std::cerr << "usage: " << argv[0] << " a b c d p\n";
    return 2;
  }
  try {
    FamilyParams f(std::atol(argv[1]), std::atol(argv[2]), std::atol(argv[3]), std::atol(argv[4]));
    const long p = std::atol(argv[5]);
    auto H = hodge_polygon(f);
    std::cout << "family " << f.str() << "  N = " << f.N() << "  p = " << p << "\n";
    print_slopes("hodge     ", H);
    for (long lam = 1; lam < p; ++lam) {
      auto P = l_polynomial(exp_sums(f, p, lam, static_cast<unsigned>(f.N())));
      auto NP = newton_polygon(P);
      std::cout << "lambda=" << lam << (NP == H ? " (ordinary)" : "");
      print_slopes("", NP);
    }
  } catch (const PreconditionError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
