#include <random>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

using namespace ncsphere;

namespace {

const Scalar h = Scalar::hbar(), al = Scalar::alpha(), s = Scalar::s();

Ctx quotient() { return make_algebra(Presentation::sl2h, al); }

NCMatrix random_column(const Ctx& ctx, size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3), g(0, 2);
  NCMatrix w(ctx, n, 1);
  for (size_t i = 0; i < n; ++i)
    w(i, 0) = NCElement(ctx, Scalar(c(rng))) + Scalar(c(rng)) * NCElement::generator(ctx, g(rng)) +
              Scalar(c(rng)) * h * NCElement::generator(ctx, g(rng));
  return w;
}

}  // namespace

TEST_CASE("basic idempotents") {
  auto A = quotient();
  const auto [e10, e01] = basic_idempotents(A);
  const auto L = NCMatrix::fundamental(A);
  const auto I = NCMatrix::identity(A, 2);
  const Scalar l1 = Scalar::lambda1(), l2 = Scalar::lambda2();
  CHECK(e10.e == (Scalar(1) / (l2 - l1)) * (l2 * I - L));
  CHECK(e01.e == (Scalar(1) / (l1 - l2)) * (l1 * I - L));
  CHECK(e10.e * e10.e == e10.e);
  CHECK(e01.e * e01.e == e01.e);
  CHECK((e10.e * e01.e).is_zero());
  CHECK(e10.e + e01.e == I);
  CHECK(qlb_trace(e10) == Scalar(1) + h / s);
  CHECK(qlb_trace(e01) == Scalar(1) - h / s);
}

TEST_CASE("level two idempotents") {
  auto A = quotient();
  LineBundleFamily fam(A, 2);
  const auto& L2 = fam.L();
  const auto I = NCMatrix::identity(A, 3);
  const auto& e11 = fam.idempotent({1, 1});
  CHECK(e11.e == (Scalar(1) / (4 * al)) * (L2 * L2 - 2 * h * L2 + 4 * al * I));
  CHECK(qlb_trace(e11) == Scalar(1));
  const auto& e20 = fam.idempotent({2, 0});
  // the symbolic trace, read off the diagonal directly
  NCElement t(A);
  for (size_t i = 0; i < 3; ++i) t += e20.e(i, i);
  REQUIRE(t.is_scalar());
  CHECK(t.scalar_part() == Scalar(1) + 2 * h / s);
  CHECK(fam.idempotent({2, 0}).e + e11.e + fam.idempotent({0, 2}).e == I);
  CHECK_THROWS_AS(fam.idempotent({1, 0}), IndexOutOfRange);
}

TEST_CASE("level zero") {
  auto A = quotient();
  LineBundleFamily fam(A, 0);
  CHECK(fam.idempotent({0, 0}).e == NCMatrix::identity(A, 1));
  CHECK(qlb_trace(fam.idempotent({0, 0})) == Scalar(1));
}

TEST_CASE("suite up to level four") {
  auto A = quotient();
  for (int k = 0; k <= 4; ++k) {
    const auto r = idempotent_suite_check(A, k);
    CHECK(r.status == "verified");
    CHECK(r.orthogonal);
    CHECK(r.complete);
    CHECK(r.trace_sum);
    for (auto& c : r.labels) {
      CHECK(c.idempotent);
      CHECK(c.trace_scalar);
      CHECK(c.trace == trace_formula(c.label));
    }
  }
}

TEST_CASE("traces: sum, conjugation and diagonal shifts") {
  for (int k = 1; k <= 4; ++k) {
    Scalar sum = 0;
    for (auto l : labels_of(k)) {
      sum += trace_formula(l);
      CHECK(trace_formula(l).conj() == trace_formula({l.k2, l.k1}));
      CHECK(trace_formula(l) == trace_formula({l.k1 + 1, l.k2 + 1}));
    }
    CHECK(sum == Scalar(k + 1));
  }
}

TEST_CASE("al = 0 is refused at level two") {
  const auto r = idempotent_suite_check(quotient(), 2, PartialPoint{std::nullopt, mpq_class(0)});
  CHECK(r.status == "degenerate");
  bool saw = false;
  for (auto& c : r.labels)
    if (c.label == Label{1, 1}) {
      CHECK(c.status == "degenerate");
      CHECK(c.error.find("DivisionByZero") != std::string::npos);
      saw = true;
    }
  CHECK(saw);
  CHECK_THROWS_AS(LineBundleFamily(make_algebra(Presentation::sl2h, Scalar(0)), 2), DivisionByZero);
  CHECK_THROWS_AS(LineBundleFamily(make_algebra(Presentation::sl2h), 1), ContextMismatch);
}

TEST_CASE("idempotents agree with the irreps") {
  auto A = quotient();
  for (int k = 1; k <= 2; ++k) {
    LineBundleFamily fam(A, k);
    for (int n = 3; n <= 6; ++n) {
      const auto sp = Specialization::irrep_point(n);
      const oracle::PolyIrrep R(n);
      QiMatrix sum(size_t(n * (k + 1)), size_t(n * (k + 1)));
      for (auto l : fam.labels()) {
        const QiMatrix E = oracle::eval_blocks(fam.idempotent(l).e, R, sp);
        CHECK(E * E == E);
        sum = sum + E;
      }
      CHECK(sum == QiMatrix::identity(size_t(n * (k + 1))));
    }
  }
}

TEST_CASE("isomorphism witnesses") {
  auto A = quotient();
  const auto [e10, e01] = basic_idempotents(A);
  CHECK(module_iso_check(e10.e, e10.e, {e10.e, e10.e}).ok());
  const auto bad = module_iso_check(e10.e, e01.e, {e10.e, e01.e});
  CHECK_FALSE(bad.ok());
  CHECK_FALSE(bad.ab);
  CHECK_THROWS_AS(module_iso_check(e10.e, e01.e, {NCMatrix(A, 1, 2), e01.e}), ShapeMismatch);
}

TEST_CASE("trivialization of e11") {
  auto S = make_algebra(Presentation::su2h, al);
  const auto W = e11_trivialization_witness(S);
  CHECK(W.check.ok());
  CHECK(W.compact_identity);
  CHECK(W.displayed_square);
  CHECK(W.displayed_identity);
  CHECK(W.matches_lagrange);
  const auto x = gen(S, "x"), y = gen(S, "y"), z = gen(S, "z");
  CHECK(W.witness.A * W.witness.B == NCMatrix::identity(S, 1));
  CHECK((al.inverse() * (x * x + y * y + z * z)) == NCElement::one(S));
  CHECK_THROWS_AS(e11_trivialization_witness(make_algebra(Presentation::su2h, Scalar(0))), DivisionByZero);
  CHECK_THROWS_AS(e11_trivialization_witness(make_algebra(Presentation::sl2h, al)), ContextMismatch);
}

TEST_CASE("classical normal-bundle projector") {
  // at h = 0, al = 1 the entries of e11 are x_i x_j
  auto S = make_algebra(Presentation::su2h, al);
  const auto W = e11_trivialization_witness(S);
  const char* names[] = {"x", "y", "z"};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      const auto e = W.e11(i, j).map_coeffs([](const Scalar& c) { return c.at_hbar_zero().with_alpha(1); });
      const auto gi = gen(S, names[i]), gj = gen(S, names[j]);
      const auto want = (gi * gj).map_coeffs([](const Scalar& c) { return c.at_hbar_zero().with_alpha(1); });
      CHECK(e == want);
    }
}

TEST_CASE("prePicard bookkeeping") {
  CHECK(prepicard_product({1, 0}, {0, 1}) == Label{1, 1});
  CHECK(prepicard_product({1, 0}, {1, 0}) == Label{2, 0});
  CHECK(prepicard_product({3, 2}, {0, 0}) == Label{3, 2});
  CHECK(prepicard_product({1, 2}, {2, 1}) == prepicard_product({2, 1}, {1, 2}));
}

TEST_CASE("module presentations and image probes") {
  auto A = quotient();
  LineBundleFamily f1(A, 1);
  const auto p = qlb_presentation(f1, {1, 0});
  CHECK(p.relations == Scalar::lambda1() * NCMatrix::identity(A, 2) - NCMatrix::fundamental(A));
  const auto& e10 = f1.idempotent({1, 0}).e;
  const auto& e01 = f1.idempotent({0, 1}).e;
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const auto w = random_column(A, 2, rng);
    const auto ew = e10 * w;
    CHECK(in_image(e10, ew));
    // a vector in both images is fixed by e10 and e01, hence equal to e10 e01 v = 0
    if (!ew.is_zero()) CHECK_FALSE(in_image(e01, ew));
  }
  // L acts on the image of e10 by lambda_1
  CHECK((p.relations * e10).is_zero());
  CHECK_FALSE((p.relations * e01).is_zero());
}
