// Level-2 line bundles on the quotient algebra: idempotents, their traces and
// the pairing with a few irreps.
#include <iostream>

#include "ncsphere/ncsphere.hpp"

using namespace ncsphere;

int main() {
  auto A = make_algebra(Presentation::sl2h, Scalar::alpha());
  LineBundleFamily fam(A, 2);
  std::cout << "L_(2) =\n" << fam.L().str() << "\n";
  for (auto l : fam.labels()) {
    const auto& e = fam.idempotent(l);
    std::cout << "e(" << l.k1 << "," << l.k2 << "): idempotent " << (e.e * e.e == e.e) << ", trace "
              << qlb_trace(e).str() << ", equals 1 + (k1-k2) h/s: " << (qlb_trace(e) == trace_formula(l)) << "\n";
  }
  for (int n = 3; n <= 5; ++n)
    for (auto l : fam.labels()) {
      const auto r = index_pairing(l, n);
      std::cout << "pairing (" << l.k1 << "," << l.k2 << ") with n=" << n << ": " << r.value->str() << "\n";
    }
}
