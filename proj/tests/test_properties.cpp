// Randomized properties over many cases, fixed seeds.
#include <random>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

using namespace ncsphere;

namespace {

const Scalar h = Scalar::hbar(), al = Scalar::alpha();

Scalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-4, 4), e(0, 2);
  auto poly = [&](int nterms) {
    std::vector<GPoly::Term> ts;
    for (int i = 0; i < nterms; ++i)
      ts.push_back({Exp{uint16_t(e(rng)), uint16_t(e(rng))}, GaussInt(c(rng), c(rng))});
    return GPoly::from_terms(ts);
  };
  GPoly d = poly(2);
  while (d.is_zero()) d = poly(2);
  return Scalar(poly(2), poly(2), d);
}

NCElement random_element(const Ctx& ctx, std::mt19937_64& rng, int terms = 3, int maxlen = 3) {
  std::uniform_int_distribution<int> g(0, ctx->ngens() - 1), len(0, maxlen), c(-3, 3);
  NCElement f(ctx);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> w(static_cast<size_t>(len(rng)));
    for (auto& x : w) x = g(rng);
    f += NCElement::word(ctx, w, Scalar(c(rng)) + Scalar(c(rng)) * h);
  }
  return f;
}

std::vector<std::pair<Presentation, bool>> contexts() {
  std::vector<std::pair<Presentation, bool>> out;
  for (auto p : {Presentation::sl2h, Presentation::su2h, Presentation::gl2h})
    for (bool q : {false, true})
      if (!(p == Presentation::gl2h && q)) out.push_back({p, q});
  return out;
}

Ctx context(Presentation p, bool q) { return make_algebra(p, q ? std::optional<Scalar>(al) : std::nullopt); }

}  // namespace

TEST_CASE("normal form is independent of the rewriting order") {
  std::mt19937_64 rng(1001);
  const auto cs = contexts();
  size_t n = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto [p, q] = cs[size_t(i) % cs.size()];
    const auto ctx = context(p, q);
    const auto R = oracle::rules_for(p, q);
    std::uniform_int_distribution<int> g(0, ctx->ngens() - 1), len(0, 5);
    oracle::Word w(static_cast<size_t>(len(rng)));
    for (auto& x : w) x = g(rng);
    const auto a = oracle::reduce_random({{w, Scalar(1)}}, R, rng);
    const auto b = oracle::reduce_random({{w, Scalar(1)}}, R, rng);
    CHECK(oracle::equal(a, b));
    CHECK(oracle::equal(oracle::from_element(NCElement::word(ctx, w)), a));
    ++n;
  }
  CHECK(n == 1000);
}

TEST_CASE("multiplication is associative") {
  std::mt19937_64 rng(1002);
  for (auto [p, q] : contexts()) {
    const auto ctx = context(p, q);
    for (int i = 0; i < 500; ++i) {
      const auto f = random_element(ctx, rng, 2, 2), g = random_element(ctx, rng, 2, 2),
                 k = random_element(ctx, rng, 2, 2);
      CHECK((f * g) * k == f * (g * k));
    }
  }
}

TEST_CASE("distributivity") {
  std::mt19937_64 rng(1003);
  for (auto [p, q] : contexts()) {
    const auto ctx = context(p, q);
    for (int i = 0; i < 100; ++i) {
      const auto f = random_element(ctx, rng), g = random_element(ctx, rng), k = random_element(ctx, rng);
      CHECK(f * (g + k) == f * g + f * k);
      CHECK((g + k) * f == g * f + k * f);
    }
  }
}

TEST_CASE("scalar field axioms") {
  std::mt19937_64 rng(1004);
  for (int i = 0; i < 300; ++i) {
    const Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
  }
}

TEST_CASE("specialization is a ring homomorphism") {
  std::mt19937_64 rng(1005);
  const Specialization pts[] = {Specialization::irrep_point(3), Specialization::irrep_point(5, mpq_class(1, 2)),
                                Specialization::at(3, 2), Specialization::at(1, mpq_class(5, 4))};
  size_t checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const Scalar a = random_scalar(rng), b = random_scalar(rng);
    const auto& sp = pts[size_t(i) % 4];
    try {
      const GaussRational x = specialize(a, sp), y = specialize(b, sp);
      CHECK(specialize(a * b, sp) == x * y);
      CHECK(specialize(a + b, sp) == x + y);
      ++checked;
    } catch (const Error&) {
      // a denominator vanishing at the point
    }
  }
  CHECK(checked > 900);
}
