#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cayley_hamilton.hpp"

namespace ncsphere {

using QlbLabel = Label;

struct Idempotent {
  Label label;
  int k = 0;
  NCMatrix e;
  KPoly coeffs;        // e = sum coeffs[j] L_(k)^j
  KPoly numerator;     // prod over other labels of (lambda_l - lambda)
  Scalar denominator;  // prod over other labels of (lambda_l - lambda_label), not rationalized
};

// Partial substitution point; unset coordinates stay symbolic.
struct PartialPoint {
  std::optional<mpq_class> hbar, alpha;
  bool empty() const { return !hbar && !alpha; }
};

// L_(k), its powers, and the Lagrange idempotents of one level k over the
// quotient algebra (sl2h presentation).
class LineBundleFamily {
 public:
  LineBundleFamily(Ctx ctx, int k, std::optional<NCMatrix> Lk = std::nullopt) : ctx_(std::move(ctx)), k_(k) {
    if (!ctx_->has_quotient()) throw ContextMismatch("line bundles live over the quotient algebra");
    if (k_ >= 2 && ctx_->quotient_alpha()->is_zero()) throw DivisionByZero("al = 0 is excluded for k >= 2");
    if (k_ == 0) {
      L_ = NCMatrix(ctx_, 1, 1);
    } else {
      L_ = Lk ? *Lk : extension_matrix(ctx_, k_).matrix;
    }
    pred_ = predicted_spectrum(k_);
    if (!roots_distinct(pred_.values())) throw DegenerateSpectrum("predicted roots coincide at level " + std::to_string(k_));
  }

  const Ctx& ctx() const { return ctx_; }
  int k() const { return k_; }
  const NCMatrix& L() const { return L_; }
  const SpectrumPrediction& prediction() const { return pred_; }

  const std::vector<NCMatrix>& powers(size_t upto) {
    if (powers_.empty()) powers_.push_back(NCMatrix::identity(ctx_, L_.rows()));
    while (powers_.size() <= upto) powers_.push_back(L_ * powers_.back());
    return powers_;
  }

  const Idempotent& idempotent(Label l) {
    if (l.k() != k_) throw IndexOutOfRange("label " + l.str() + " not at level " + std::to_string(k_));
    auto key = std::make_pair(l.k1, l.k2);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    Idempotent id;
    id.label = l;
    id.k = k_;
    const Scalar target = predicted_root(l);
    id.numerator = {Scalar(1)};
    id.denominator = Scalar(1);
    for (auto& [m, lam] : pred_.roots) {
      if (m == l) continue;
      id.numerator = poly_mul(id.numerator, {lam, Scalar(-1)});
      id.denominator *= lam - target;
    }
    const Scalar inv = id.denominator.inverse();
    for (auto& c : id.numerator) id.coeffs.push_back((c * inv).simplified());
    id.e = combine_powers(powers(size_t(k_)), id.coeffs);
    return cache_.emplace(key, std::move(id)).first->second;
  }

  std::vector<Label> labels() const { return labels_of(k_); }

 private:
  Ctx ctx_;
  int k_;
  NCMatrix L_;
  SpectrumPrediction pred_;
  std::vector<NCMatrix> powers_;
  std::map<std::pair<int, int>, Idempotent> cache_;
};

// (lambda_2 id - L)/(lambda_2 - lambda_1) and (lambda_1 id - L)/(lambda_1 - lambda_2)
inline std::pair<Idempotent, Idempotent> basic_idempotents(const Ctx& ctx) {
  LineBundleFamily f(ctx, 1);
  return {f.idempotent({1, 0}), f.idempotent({0, 1})};
}

// 1 + (k1 - k2) h / s
inline Scalar trace_formula(Label l) { return Scalar(1) + Scalar(l.k1 - l.k2) * Scalar::hbar() / Scalar::s(); }

inline Scalar qlb_trace(const Idempotent& e) {
  NCElement t = mat_trace(e.e);
  if (!t.is_scalar()) throw NonScalarTrace(t.str());
  return t.scalar_part();
}

struct LabelCheck {
  Label label;
  std::string status = "verified";
  bool idempotent = false, trace_scalar = false, trace_matches = false, direct_product = true;
  Scalar trace;
  std::string error;
};

struct SuiteReport {
  int k = 0;
  std::string status;
  std::vector<LabelCheck> labels;
  bool orthogonal = false, complete = false, trace_sum = false;
  std::vector<std::string> notes;
  double elapsed_ms = 0;
};

// Evaluates the polynomial p at L_(k) through the cached powers.
inline NCMatrix eval_on_powers(LineBundleFamily& f, const KPoly& p) {
  if (p.empty()) return NCMatrix(f.ctx(), f.L().rows(), f.L().rows());
  return combine_powers(f.powers(p.size() - 1), p);
}

inline SuiteReport idempotent_suite_check(const Ctx& ctx, int k, const PartialPoint& pt = {},
                                          std::optional<NCMatrix> Lk = std::nullopt, int direct_upto = 2) {
  Stopwatch sw;
  SuiteReport rep;
  rep.k = k;
  LineBundleFamily f(ctx, k, std::move(Lk));
  const auto labels = f.labels();
  bool all = true;
  KPoly sum_polys;
  Scalar trace_sum;
  for (auto l : labels) {
    LabelCheck c;
    c.label = l;
    const Idempotent& e = f.idempotent(l);
    if (!pt.empty()) {
      for (auto& cj : e.coeffs)
        if (cj.d().vanishes_at(pt.hbar, pt.alpha)) {
          c.status = "degenerate";
          c.error = "DivisionByZero: denominator " + cj.d().str() + " vanishes at the point";
          break;
        }
    }
    // e^2 - e through powers of L_(k)
    c.idempotent = eval_on_powers(f, poly_sub(poly_mul(e.coeffs, e.coeffs), e.coeffs)).is_zero();
    if (k <= direct_upto) c.direct_product = (e.e * e.e == e.e);
    // trace
    NCElement t(ctx);
    for (size_t j = 0; j < e.coeffs.size(); ++j) t += e.coeffs[j] * mat_trace(f.powers(j)[j]);
    t = t.map_coeffs([](const Scalar& x) { return x.simplified(); });
    c.trace_scalar = t.is_scalar();
    c.trace = t.scalar_part();
    c.trace_matches = c.trace_scalar && c.trace == trace_formula(l);
    if (c.status == "verified" && !(c.idempotent && c.direct_product && c.trace_scalar && c.trace_matches))
      c.status = "failed";
    if (!c.trace_scalar) c.error = "NonScalarTrace: " + t.str();
    all = all && c.status == "verified";
    sum_polys = poly_add(sum_polys, e.coeffs);
    trace_sum += c.trace;
    rep.labels.push_back(c);
  }
  rep.orthogonal = true;
  for (size_t a = 0; a < labels.size(); ++a)
    for (size_t b = 0; b < labels.size(); ++b) {
      if (a == b) continue;
      const auto& ea = f.idempotent(labels[a]);
      const auto& eb = f.idempotent(labels[b]);
      if (!eval_on_powers(f, poly_mul(ea.coeffs, eb.coeffs)).is_zero()) rep.orthogonal = false;
      if (k <= direct_upto && !(ea.e * eb.e).is_zero()) rep.orthogonal = false;
    }
  rep.complete = eval_on_powers(f, poly_sub(sum_polys, {Scalar(1)})).is_zero();
  rep.trace_sum = trace_sum.simplified() == Scalar(k + 1);
  bool degenerate = false;
  for (auto& c : rep.labels) degenerate = degenerate || c.status == "degenerate";
  if (degenerate)
    rep.status = "degenerate";
  else
    rep.status = (all && rep.orthogonal && rep.complete && rep.trace_sum) ? "verified" : "failed";
  rep.elapsed_ms = sw.ms();
  return rep;
}

// ---- isomorphism witnesses ----

struct IsoWitness {
  NCMatrix A, B;
};

struct IsoCheck {
  bool ab = false, ba = false, a_left = false, a_right = false, b_left = false, b_right = false;
  bool ok() const { return ab && ba && a_left && a_right && b_left && b_right; }
};

// AB = e1, BA = e2, A = e1 A = A e2, B = e2 B = B e1
inline IsoCheck module_iso_check(const NCMatrix& e1, const NCMatrix& e2, const IsoWitness& w) {
  if (!e1.square() || !e2.square()) throw NotSquare("idempotents must be square");
  if (w.A.rows() != e1.rows() || w.A.cols() != e2.rows() || w.B.rows() != e2.rows() || w.B.cols() != e1.rows())
    throw ShapeMismatch("witness shapes " + w.A.shape() + ", " + w.B.shape() + " for " + e1.shape() + ", " +
                        e2.shape());
  IsoCheck c;
  c.ab = w.A * w.B == e1;
  c.ba = w.B * w.A == e2;
  c.a_left = e1 * w.A == w.A;
  c.a_right = w.A * e2 == w.A;
  c.b_left = e2 * w.B == w.B;
  c.b_right = w.B * e1 == w.B;
  return c;
}

struct E11Witness {
  IsoWitness witness;
  NCMatrix e00, e11;     // compact presentation
  IsoCheck check;
  bool compact_identity = false;   // (Lb^2 - 2h Lb + 4 al)/(4 al) = al^{-1} (x,y,z)^T (x,y,z)
  bool displayed_square = false;   // L_(2)^2 entries as displayed
  bool displayed_identity = false; // sl2h rank-one form of e_11
  bool matches_lagrange = false;   // e_11 from the Lagrange formula, transported
};

inline E11Witness e11_trivialization_witness(const Ctx& compact) {
  if (compact->presentation() != Presentation::su2h || !compact->has_quotient())
    throw ContextMismatch("witness lives in the compact quotient algebra");
  const Scalar al = *compact->quotient_alpha();
  if (al.is_zero()) throw DivisionByZero("al = 0");
  const Scalar inv = al.inverse(), inv4 = (Scalar(4) * al).inverse();
  const Scalar h = Scalar::hbar();
  auto g = [&](const char* n) { return gen(compact, n); };
  E11Witness W;
  W.witness.A = inv * NCMatrix::from_elements(compact, {{g("x"), g("y"), g("z")}});
  W.witness.B = NCMatrix::from_elements(compact, {{g("x")}, {g("y")}, {g("z")}});
  W.e00 = NCMatrix::identity(compact, 1);

  auto sl = make_algebra(Presentation::sl2h, al);
  const NCMatrix L2 = extension_matrix(sl, 2).matrix;
  const NCMatrix Lb = conjugate_to_compact(L2, compact);
  const NCMatrix id3 = NCMatrix::identity(compact, 3);
  W.e11 = inv4 * (Lb * Lb - h * Lb + Scalar(4) * al * id3 - h * Lb);
  W.check = module_iso_check(W.e00, W.e11, W.witness);
  W.compact_identity = W.e11 == inv * (W.witness.B * NCMatrix::from_elements(compact, {{g("x"), g("y"), g("z")}}));

  auto s = [&](const char* n) { return gen(sl, n); };
  const NCElement a = s("a"), b = s("b"), c = s("c");
  const NCMatrix sq = NCMatrix::from_elements(
      sl, {{Scalar(4) * a * a + Scalar(2) * b * c, Scalar(4) * a * b, Scalar(2) * b * b},
           {Scalar(2) * c * a, Scalar(2) * c * b + Scalar(2) * b * c, Scalar(-2) * b * a},
           {Scalar(2) * c * c, Scalar(-4) * a * c, Scalar(2) * c * b + Scalar(4) * a * a}});
  W.displayed_square = L2 * L2 == sq;
  const NCMatrix id3s = NCMatrix::identity(sl, 3);
  const NCMatrix lhs = inv4 * (sq - Scalar(2) * h * L2 + Scalar(4) * al * id3s);
  const NCMatrix col = NCMatrix::from_elements(sl, {{Scalar(-2) * b}, {Scalar(2) * a}, {Scalar(2) * c}});
  const NCMatrix row = NCMatrix::from_elements(sl, {{c, Scalar(-2) * a, -b}});
  W.displayed_identity = lhs == inv4 * (col * row);

  LineBundleFamily fam(sl, 2, L2);
  const NCMatrix e11_sl = fam.idempotent({1, 1}).e;
  W.matches_lagrange = e11_sl == lhs && conjugate_to_compact(e11_sl, compact) == W.e11;
  return W;
}

inline Label prepicard_product(Label x, Label y) { return {x.k1 + y.k1, x.k2 + y.k2}; }

// ---- module presentations of q.l.b. ----

struct QlbPresentation {
  Label label;
  NCMatrix relations;  // lambda id - L_(k); the module is the cokernel for k = 1
  NCMatrix projector;  // e, whose image is the module
};

inline QlbPresentation qlb_presentation(LineBundleFamily& f, Label l) {
  QlbPresentation p;
  p.label = l;
  const size_t n = f.L().rows();
  p.relations = NCElement(f.ctx(), predicted_root(l)) * NCMatrix::identity(f.ctx(), n) - f.L();
  p.projector = f.idempotent(l).e;
  return p;
}

// w (a column) lies in the image of e iff e w = w.
inline bool in_image(const NCMatrix& e, const NCMatrix& w) { return e * w == w; }

}  // namespace ncsphere
