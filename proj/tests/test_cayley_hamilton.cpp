#include "catch_amalgamated.hpp"
#include "oracles.hpp"

using namespace ncsphere;

namespace {

const Scalar h = Scalar::hbar(), al = Scalar::alpha();

Ctx quotient() { return make_algebra(Presentation::sl2h, al); }

std::vector<GaussRational> at(const KPoly& p, const Specialization& sp) {
  std::vector<GaussRational> v;
  for (auto& c : p) v.push_back(specialize(c, sp));
  return v;
}

}  // namespace

TEST_CASE("generic identity over gl2h") {
  auto G = make_algebra(Presentation::gl2h);
  const auto r = verify_generic_ch(G);
  CHECK(r.status == "verified");
  CHECK(r.residual->is_zero());
  CHECK_THROWS_AS(verify_generic_ch(make_algebra(Presentation::sl2h)), ContextMismatch);
}

TEST_CASE("generic identity negative control") {
  const auto r = verify_generic_ch(make_algebra(Presentation::gl2h), true);
  CHECK(r.status == "failed");
  REQUIRE(r.residual);
  CHECK_FALSE(r.residual->is_zero());
}

TEST_CASE("generic identity at h = 0 is the classical one") {
  auto G = make_algebra(Presentation::gl2h);
  const auto L = NCMatrix::fundamental(G);
  const auto a = gen(G, "a"), b = gen(G, "b"), c = gen(G, "c"), d = gen(G, "d");
  const auto lhs = L * L - (a + d) * L + (a * d - b * c) * NCMatrix::identity(G, 2);
  // what survives is proportional to h
  const auto r = lhs.map([](const NCElement& e) { return e.map_coeffs([](const Scalar& x) { return x.at_hbar_zero(); }); });
  CHECK(r.is_zero());
  CHECK_FALSE(lhs.is_zero());
}

TEST_CASE("numeric identities in both presentations") {
  for (auto p : {Presentation::sl2h, Presentation::su2h}) {
    auto A = make_algebra(p, al);
    for (int k = 1; k <= 2; ++k) {
      const auto r = verify_numeric_ch(A, k);
      CHECK(r.status == "verified");
    }
  }
  CHECK_THROWS_AS(verify_numeric_ch(make_algebra(Presentation::sl2h), 1), ContextMismatch);
  CHECK_THROWS_AS(numeric_ch_coeffs(3, al), IndexOutOfRange);
}

TEST_CASE("minimal polynomial at k = 1, 2") {
  auto A = quotient();
  const auto m1 = minimal_polynomial(extension_matrix(A, 1).matrix, 3);
  CHECK(poly_equal(m1.coeffs, {al, -h, 1}));
  CHECK(m1.divides_other_annihilators);
  const auto m2 = minimal_polynomial(extension_matrix(A, 2).matrix, 4);
  CHECK(poly_equal(m2.coeffs, {-8 * h * al, 4 * (al + h * h), -4 * h, 1}));
}

TEST_CASE("Vieta at k = 1") {
  const auto sp = predicted_spectrum(1);
  REQUIRE(sp.roots.size() == 2);
  CHECK(sp.roots[0].second + sp.roots[1].second == h);
  CHECK(sp.roots[0].second * sp.roots[1].second == al);
}

TEST_CASE("predicted spectrum") {
  const Scalar l1 = Scalar::lambda1(), l2 = Scalar::lambda2();
  const auto p2 = predicted_spectrum(2).values();
  CHECK(p2 == std::vector<Scalar>{2 * l1, 2 * h, 2 * l2});
  const auto p3 = predicted_spectrum(3).values();
  CHECK(p3 == std::vector<Scalar>{3 * l1, l1 + 3 * h, l2 + 3 * h, 3 * l2});
  // at h = 0 the cross term disappears
  for (auto& [lab, v] : predicted_spectrum(4).roots) {
    const Scalar diff = v - (Scalar(lab.k1) * l1 + Scalar(lab.k2) * l2);
    CHECK(diff == Scalar(lab.k1 * lab.k2) * h);
  }
}

TEST_CASE("spectrum check up to k = 4") {
  auto A = quotient();
  for (int k = 1; k <= 4; ++k) {
    const auto s = spectrum_check(extension_matrix(A, k).matrix, k);
    CHECK(s.report.status == "verified");
    CHECK(s.minpoly.degree() == size_t(k) + 1);
    CHECK(s.matches);
    CHECK(s.distinct);
  }
}

TEST_CASE("minimal polynomials agree with the irreps") {
  // Independent oracle: at an irrep point the image of L_(k) must be killed by
  // the specialized polynomial and, for large enough n, its powers up to k are
  // linearly independent, so no smaller degree can work symbolically.
  auto A = quotient();
  for (int k = 1; k <= 3; ++k) {
    const auto E = extension_matrix(A, k).matrix;
    const auto m = minimal_polynomial(E, size_t(k) + 2);
    for (int n = k + 2; n <= k + 3; ++n) {
      const auto sp = Specialization::irrep_point(n);
      const oracle::PolyIrrep R(n);
      const QiMatrix M = oracle::eval_blocks(E, R, sp);
      CHECK(oracle::eval_poly(M, at(m.coeffs, sp)).is_zero());
      CHECK(oracle::power_rank(M, size_t(k)) == size_t(k) + 1);
    }
  }
}

TEST_CASE("alpha specialized before the search") {
  auto A = make_algebra(Presentation::sl2h, Scalar::rational(-2));
  for (int k = 1; k <= 3; ++k) {
    const auto s = spectrum_check(extension_matrix(A, k).matrix, k, mpq_class(-2));
    CHECK(s.report.status == "verified");
  }
}

TEST_CASE("degenerate spectrum") {
  // h^2 = 4 al forces l1 = l2
  const auto roots = predicted_spectrum(2).values();
  CHECK(roots_distinct(roots));
  CHECK_FALSE(roots_distinct_at(roots, 2, 1, GaussRational(0)));
  CHECK(roots_distinct_at(roots, 1, mpq_class(-3, 4), GaussRational(2)));
}

TEST_CASE("mismatch is reported with a witness") {
  auto A = quotient();
  // a matrix with the wrong spectrum for its label
  const auto s = spectrum_check(extension_matrix(A, 2).matrix, 3);
  CHECK(s.report.status == "failed");
  REQUIRE(s.report.residual);
  CHECK_FALSE(s.report.residual->is_zero());
}
