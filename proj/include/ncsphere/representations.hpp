#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "line_bundles.hpp"

namespace ncsphere {

// Spin (n-1)/2 irreducible. Basis v_0..v_{n-1} with
//   F v_k = v_{k+1},  H v_k = (n-1-2k) v_k,  E v_k = k(n-k) v_{k-1}.
// pi(a) = h H/2, pi(b) = h E, pi(c) = h F; the compact generators follow from
// x = -i a, y = i(b+c)/2, z = (b-c)/2.
class Irrep {
 public:
  explicit Irrep(int n) : n_(n) {
    if (n < 1) throw IndexOutOfRange("irrep dimension must be positive");
    E_ = QiMatrix(n, n);
    F_ = QiMatrix(n, n);
    H_ = QiMatrix(n, n);
    for (int k = 0; k < n; ++k) {
      H_(k, k) = GaussRational(n - 1 - 2 * k);
      if (k + 1 < n) F_(k + 1, k) = GaussRational(1);
      if (k > 0) E_(k - 1, k) = GaussRational(k * (n - k));
    }
  }

  int n() const { return n_; }
  const QiMatrix& E() const { return E_; }
  const QiMatrix& F() const { return F_; }
  const QiMatrix& H() const { return H_; }

  // al forced by the Casimir: -h^2 (n^2-1)/4
  Scalar forced_alpha() const {
    return Scalar::rational(Int(-(n_ * n_ - 1)), Int(4)) * Scalar::hbar() * Scalar::hbar();
  }
  mpq_class forced_alpha_at(const mpq_class& h) const {
    mpq_class q(-(n_ * n_ - 1), 4);
    q.canonicalize();
    return q * h * h;
  }

  // Images of the generators of presentation p, in PBW order, at hbar = h.
  std::vector<QiMatrix> generators(Presentation p, const mpq_class& h) const {
    const GaussRational hh(h), half(mpq_class(1, 2));
    const QiMatrix a = (hh * half) * H_, b = hh * E_, c = hh * F_;
    switch (p) {
      case Presentation::sl2h: return {b, a, c};
      case Presentation::gl2h: return {b, a, GaussRational(-1) * a, c};
      case Presentation::su2h: {
        const GaussRational I(0, 1);
        return {GaussRational(0, -1) * a, (I * half) * (b + c), half * (b - c)};
      }
    }
    throw UnknownPresentation("irrep generators");
  }

 private:
  int n_;
  QiMatrix E_, F_, H_;
};

inline void check_irrep_point(const Irrep& rep, const Specialization& sp) {
  if (sp.alpha != rep.forced_alpha_at(sp.hbar))
    throw SpecializationMismatch("al = " + sp.alpha.get_str() + " is not forced by n = " + std::to_string(rep.n()) +
                                 " (expected " + rep.forced_alpha_at(sp.hbar).get_str() + ")");
  const GaussRational nh(mpq_class(rep.n()) * sp.hbar);
  if (!(sp.s == nh) && !(sp.s == GaussRational(0) - nh))
    throw SpecializationMismatch("s must be +-n h at an irrep point");
}

// pi_U(f) at the specialization; monomials map to ordered matrix products.
class HomEvaluator {
 public:
  HomEvaluator(const Ctx& ctx, const Irrep& rep, const Specialization& sp) : ctx_(ctx), rep_(rep), sp_(sp) {
    check_irrep_point(rep, sp);
    if (ctx->has_quotient()) {
      const GaussRational al = specialize(*ctx->quotient_alpha(), sp);
      if (!(al == GaussRational(sp.alpha)))
        throw SpecializationMismatch("algebra al specializes to " + al.str() + ", point has " + sp.alpha.get_str());
    }
    gens_ = rep.generators(ctx->presentation(), sp.hbar);
    pows_.resize(gens_.size());
  }

  QiMatrix operator()(const NCElement& f) {
    if (f.ctx() != ctx_ && !f.ctx()->compatible(*ctx_)) throw ContextMismatch("evaluate_hom");
    const size_t n = size_t(rep_.n());
    QiMatrix acc(n, n);
    for (auto& [m, c] : f.terms()) {
      QiMatrix t = QiMatrix::identity(n);
      for (int g = 0; g < int(gens_.size()); ++g)
        if (m.e[g]) t = t * power(g, m.e[g]);
      acc = acc + specialize(c, sp_) * t;
    }
    return acc;
  }

  const Specialization& point() const { return sp_; }

 private:
  Ctx ctx_;
  Irrep rep_;
  Specialization sp_;
  std::vector<QiMatrix> gens_;
  std::vector<std::vector<QiMatrix>> pows_;

  const QiMatrix& power(int g, int e) {
    auto& v = pows_[g];
    if (v.empty()) v.push_back(QiMatrix::identity(size_t(rep_.n())));
    while (int(v.size()) <= e) v.push_back(v.back() * gens_[g]);
    return v[e];
  }
};

inline QiMatrix evaluate_hom(const NCElement& f, const Irrep& rep, const Specialization& sp) {
  HomEvaluator ev(f.ctx(), rep, sp);
  return ev(f);
}

// Block matrix with block (r, c) = pi(M(r, c)).
inline QiMatrix evaluate_blocks(const NCMatrix& M, HomEvaluator& ev, size_t n) {
  QiMatrix out(M.rows() * n, M.cols() * n);
  for (size_t r = 0; r < M.rows(); ++r)
    for (size_t c = 0; c < M.cols(); ++c) {
      if (M(r, c).is_zero()) continue;
      const QiMatrix b = ev(M(r, c));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out(r * n + i, c * n + j) = b(i, j);
    }
  return out;
}

// ---- index pairing ----

struct PairingResult {
  Label label;
  int n = 0;
  std::string status;  // verified | outside-regime | degenerate | failed
  std::optional<GaussRational> value;      // tr pi(tr e) through the symbolic trace
  std::optional<GaussRational> numeric;    // trace of e built from pi(L_(k)) directly
  std::optional<long long> closed_form;    // n + k1 - k2 (branch-adjusted), only when n > k
  std::string note;

  bool in_regime() const { return n > label.k(); }
  std::string regime() const { return in_regime() ? "closed-form" : "outside closed-form regime"; }
};

// Families keyed by level over one symbolic-al algebra; shared across pairings.
class PairingContext {
 public:
  explicit PairingContext(Presentation p = Presentation::sl2h) : ctx_(make_algebra(p, Scalar::alpha())) {}

  const Ctx& ctx() const { return ctx_; }

  LineBundleFamily& family(int k) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = fams_.find(k);
    if (it == fams_.end()) it = fams_.emplace(k, std::make_unique<LineBundleFamily>(ctx_, k)).first;
    return *it->second;
  }

  // tr(L_(k)^j) for j <= k, cached
  const std::vector<NCElement>& power_traces(int k) {
    LineBundleFamily& f = family(k);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = traces_.find(k);
    if (it != traces_.end()) return it->second;
    std::vector<NCElement> t;
    const auto& P = f.powers(size_t(k));
    for (int j = 0; j <= k; ++j) t.push_back(mat_trace(P[j]));
    return traces_.emplace(k, std::move(t)).first->second;
  }

 private:
  Ctx ctx_;
  std::mutex mu_;
  std::map<int, std::unique_ptr<LineBundleFamily>> fams_;
  std::map<int, std::vector<NCElement>> traces_;
};

inline PairingResult index_pairing(PairingContext& pc, Label l, int n, const mpq_class& h = 1, int branch = 1) {
  PairingResult r;
  r.label = l;
  r.n = n;
  const int k = l.k();
  const Irrep rep(n);
  const Specialization sp = Specialization::irrep_point(n, h, branch);

  // numeric roots must stay distinct at the point
  std::vector<GaussRational> roots;
  GaussRational target;
  for (auto m : labels_of(k)) {
    GaussRational v = specialize(predicted_root(m), sp);
    if (m == l) target = v;
    roots.push_back(v);
  }
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i] == roots[j]) {
        r.status = "degenerate";
        r.note = "DegenerateAtSpecialization: roots " + labels_of(k)[i].str() + " and " + labels_of(k)[j].str() +
                 " coincide at n = " + std::to_string(n);
        return r;
      }

  LineBundleFamily& fam = pc.family(k);
  HomEvaluator ev(pc.ctx(), rep, sp);

  // (i) tr pi(tr e), through the unrationalized Lagrange numerator
  const Idempotent& e = fam.idempotent(l);
  const GaussRational den = specialize(e.denominator, sp);
  if (den.is_zero()) {
    r.status = "degenerate";
    r.note = "DegenerateAtSpecialization: Lagrange denominator vanishes";
    return r;
  }
  const auto& traces = pc.power_traces(k);
  NCElement tnum(pc.ctx());
  for (size_t j = 0; j < e.numerator.size(); ++j)
    if (!e.numerator[j].is_zero()) tnum += e.numerator[j] * traces[j];
  r.value = ev(tnum).trace() / den;

  // (ii) prod_{m != l} (lambda_m - pi(L_(k))) / (lambda_m - lambda_l) on the block matrix
  const size_t N = size_t(n) * size_t(k + 1);
  const QiMatrix PL = k == 0 ? QiMatrix(N, N) : evaluate_blocks(fam.L(), ev, size_t(n));
  QiMatrix acc = QiMatrix::identity(N);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (labels_of(k)[i] == l) continue;
    acc = (GaussRational(1) / (roots[i] - target)) * (acc * (roots[i] * QiMatrix::identity(N) - PL));
  }
  r.numeric = acc.trace();

  // (iii) n tr e at s = n h (sign flips with the branch)
  if (r.in_regime()) r.closed_form = n + branch * (l.k1 - l.k2);

  const bool agree = *r.value == *r.numeric;
  if (!agree) {
    r.status = "failed";
    r.note = "symbolic " + r.value->str() + " vs numeric " + r.numeric->str();
  } else if (!r.value->is_integer()) {
    r.status = "failed";
    r.note = "non-integral pairing " + r.value->str();
  } else if (r.closed_form) {
    r.status = *r.value == GaussRational(mpq_class(long(*r.closed_form))) ? "verified" : "failed";
    if (r.status == "failed") r.note = "closed form " + std::to_string(*r.closed_form) + " vs " + r.value->str();
  } else {
    r.status = "outside-regime";
  }
  return r;
}

inline PairingResult index_pairing(Label l, int n, const mpq_class& h = 1, int branch = 1) {
  PairingContext pc;
  return index_pairing(pc, l, n, h, branch);
}

struct PairingTable {
  int max_k = 0, max_n = 0;
  std::vector<PairingResult> cells;    // labels by level then descending k1, n ascending
  std::vector<PairingResult> skipped;  // roots collide at the irrep point
};

inline PairingTable pairing_table(int max_k, int max_n, const mpq_class& h = 1, int branch = 1) {
  if (max_k > kDefaultSpinCap) throw DegreeCapExceeded("pairing table k above cap");
  PairingTable t;
  t.max_k = max_k;
  t.max_n = max_n;
  PairingContext pc;
  for (int k = 0; k <= max_k; ++k)
    for (auto l : labels_of(k))
      for (int n = 1; n <= max_n; ++n) {
        auto r = index_pairing(pc, l, n, h, branch);
        (r.status == "degenerate" ? t.skipped : t.cells).push_back(std::move(r));
      }
  return t;
}

}  // namespace ncsphere
