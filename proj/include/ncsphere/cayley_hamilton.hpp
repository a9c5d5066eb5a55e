#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "ncmatrix.hpp"
#include "spin_extension.hpp"

namespace ncsphere {

// ---- univariate polynomials over K, ascending coefficients ----

using KPoly = std::vector<Scalar>;

inline KPoly poly_trim(KPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

inline KPoly poly_mul(const KPoly& x, const KPoly& y) {
  if (x.empty() || y.empty()) return {};
  KPoly r(x.size() + y.size() - 1);
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  for (auto& c : r) c = c.simplified();
  return poly_trim(r);
}

inline KPoly poly_sub(KPoly x, const KPoly& y) {
  if (x.size() < y.size()) x.resize(y.size());
  for (size_t i = 0; i < y.size(); ++i) x[i] = (x[i] - y[i]).simplified();
  return poly_trim(x);
}

inline KPoly poly_add(KPoly x, const KPoly& y) {
  if (x.size() < y.size()) x.resize(y.size());
  for (size_t i = 0; i < y.size(); ++i) x[i] = (x[i] + y[i]).simplified();
  return poly_trim(x);
}

// prod (lambda - r)
inline KPoly poly_from_roots(const std::vector<Scalar>& roots) {
  KPoly p{Scalar(1)};
  for (auto& r : roots) p = poly_mul(p, {-r, Scalar(1)});
  return p;
}

// Remainder of x modulo a monic divisor.
inline KPoly poly_rem_monic(KPoly x, const KPoly& m) {
  x = poly_trim(x);
  const size_t dm = m.size() - 1;
  while (x.size() > dm) {
    const Scalar lead = x.back();
    const size_t sh = x.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i) x[sh + i] = (x[sh + i] - lead * m[i]).simplified();
    x = poly_trim(x);
  }
  return x;
}

inline bool poly_equal(const KPoly& x, const KPoly& y) { return poly_trim(poly_sub(x, y)).empty(); }

// ---- spectrum ----

struct Label {
  int k1 = 0, k2 = 0;
  int k() const { return k1 + k2; }
  friend bool operator==(Label x, Label y) { return x.k1 == y.k1 && x.k2 == y.k2; }
  std::string str() const { return "(" + std::to_string(k1) + "," + std::to_string(k2) + ")"; }
};

// Labels of level k in the fixed order of descending k1.
inline std::vector<Label> labels_of(int k) {
  std::vector<Label> v;
  for (int k1 = k; k1 >= 0; --k1) v.push_back({k1, k - k1});
  return v;
}

// lambda_{k1 k2} = k1 l1 + k1 k2 (l1 + l2) + k2 l2
inline Scalar predicted_root(Label l) {
  return Scalar(l.k1) * Scalar::lambda1() + Scalar(l.k1 * l.k2) * Scalar::hbar() + Scalar(l.k2) * Scalar::lambda2();
}

struct SpectrumPrediction {
  int k = 0;
  std::vector<std::pair<Label, Scalar>> roots;
  std::vector<Scalar> values() const {
    std::vector<Scalar> v;
    for (auto& r : roots) v.push_back(r.second);
    return v;
  }
};

inline SpectrumPrediction predicted_spectrum(int k) {
  SpectrumPrediction p;
  p.k = k;
  for (auto l : labels_of(k)) p.roots.emplace_back(l, predicted_root(l));
  return p;
}

// ---- reports ----

struct ChReport {
  std::string task;
  std::string k;  // "1", "2", "generic", ...
  std::string status;  // verified | failed | degenerate
  std::optional<NCMatrix> residual;
  std::vector<Scalar> minpoly;
  std::vector<Scalar> predicted;
  std::vector<std::string> notes;
  double elapsed_ms = 0;
};

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// L^2 - (tr + h) L + (Delta + h tr / 2) id over U(gl(2)_h). With wrong = true
// the h tr / 2 correction is dropped (negative control).
inline ChReport verify_generic_ch(const Ctx& gl2, bool wrong = false) {
  Stopwatch sw;
  if (gl2->presentation() != Presentation::gl2h) throw ContextMismatch("generic CH needs gl2h");
  const NCMatrix L = NCMatrix::fundamental(gl2);
  const auto cz = casimir_and_center(gl2);
  const NCElement h(gl2, Scalar::hbar());
  NCElement c0 = cz.casimir;
  if (!wrong) c0 += Scalar::rational(1, 2) * (h * cz.trace);
  const NCMatrix lhs = L * L - (cz.trace + h) * L + c0 * NCMatrix::identity(gl2, 2);
  ChReport r;
  r.task = "verify-ch";
  r.k = "generic";
  r.status = lhs.is_zero() ? "verified" : "failed";
  r.residual = lhs;
  r.elapsed_ms = sw.ms();
  return r;
}

inline std::vector<Scalar> numeric_ch_coeffs(int k, const Scalar& alpha) {
  const Scalar h = Scalar::hbar();
  if (k == 1) return {alpha, -h, Scalar(1)};
  if (k == 2) return {Scalar(-8) * h * alpha, Scalar(4) * (alpha + h * h), Scalar(-4) * h, Scalar(1)};
  throw IndexOutOfRange("numeric CH is stated for k = 1, 2");
}

// The matrix whose numeric CH identity is checked: L (k=1) or L_(2) (k=2);
// in the compact presentation L_(2) is replaced by its conjugate L-bar_(2).
inline NCMatrix ch_matrix(const Ctx& ctx, int k) {
  if (k == 1) return NCMatrix::fundamental(ctx);
  if (ctx->presentation() == Presentation::su2h) {
    auto sl = make_algebra(Presentation::sl2h, ctx->quotient_alpha());
    return conjugate_to_compact(extension_matrix(sl, 2).matrix, ctx);
  }
  return extension_matrix(ctx, 2).matrix;
}

inline ChReport verify_numeric_ch(const Ctx& ctx, int k) {
  Stopwatch sw;
  if (!ctx->has_quotient()) throw ContextMismatch("numeric CH needs the quotient algebra");
  const auto coeffs = numeric_ch_coeffs(k, *ctx->quotient_alpha());
  const NCMatrix lhs = eval_matrix_poly(ch_matrix(ctx, k), coeffs);
  ChReport r;
  r.task = "verify-ch";
  r.k = std::to_string(k);
  r.status = lhs.is_zero() ? "verified" : "failed";
  r.residual = lhs;
  r.minpoly = coeffs;
  if (k == 2) r.notes.push_back(ctx->presentation() == Presentation::su2h ? "compact L-bar_(2)" : "L_(2)");
  r.elapsed_ms = sw.ms();
  return r;
}

// ---- minimal polynomial ----

inline std::vector<NCMatrix> matrix_powers(const NCMatrix& M, size_t upto) {
  std::vector<NCMatrix> p{NCMatrix::identity(M.ctx(), M.rows())};
  for (size_t j = 1; j <= upto; ++j) p.push_back(M * p.back());
  return p;
}

struct MinPoly {
  KPoly coeffs;  // monic, ascending
  std::vector<NCMatrix> powers;  // M^0 .. M^{deg+1}
  bool divides_other_annihilators = false;
  size_t degree() const { return coeffs.size() - 1; }
};

namespace detail {

using FlatKey = std::pair<size_t, Monomial>;
struct FlatKeyLess {
  bool operator()(const FlatKey& x, const FlatKey& y) const {
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  }
};
using Flat = std::map<FlatKey, Scalar, FlatKeyLess>;

inline Flat flatten(const NCMatrix& M) {
  Flat f;
  for (size_t i = 0; i < M.rows() * M.cols(); ++i)
    for (auto& [m, c] : M(i / M.cols(), i % M.cols()).terms()) f.emplace(FlatKey{i, m}, c);
  return f;
}

inline Scalar at(const Flat& f, const FlatKey& k) {
  auto it = f.find(k);
  return it == f.end() ? Scalar() : it->second;
}

// residual = v + sum c_j cols_j
inline Flat residual(const Flat& v, const std::vector<Flat>& cols, const std::vector<Scalar>& c) {
  Flat r = v;
  for (size_t j = 0; j < cols.size(); ++j) {
    if (c[j].is_zero()) continue;
    for (auto& [k, x] : cols[j]) {
      auto [it, fresh] = r.try_emplace(k, c[j] * x);
      if (!fresh) {
        it->second = (it->second + c[j] * x).simplified();
        if (it->second.is_zero()) r.erase(it);
      }
    }
  }
  return r;
}

inline std::optional<std::vector<Scalar>> solve_on_rows(const std::vector<Flat>& cols, const Flat& v,
                                                        const std::vector<FlatKey>& rows) {
  const size_t d = cols.size();
  if (d == 0) return std::vector<Scalar>{};
  std::vector<std::vector<Scalar>> A(d, std::vector<Scalar>(d));
  std::vector<Scalar> b(d);
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) A[i][j] = at(cols[j], rows[i]);
    b[i] = -at(v, rows[i]);
  }
  return bareiss_solve(A, b);
}

}  // namespace detail

// Lowest-degree monic annihilating polynomial of M over K. The flattened
// powers are tested for dependence on a growing set of pivot rows: if the
// square system on those rows is solved by c and the residual vanishes on
// every coordinate, M^d + sum c_j M^j = 0; otherwise a nonzero residual row
// extends the pivot set with a nonsingular minor.
inline MinPoly minimal_polynomial(const NCMatrix& M, size_t cap) {
  if (!M.square()) throw NotSquare(M.shape());
  using namespace detail;
  MinPoly out;
  std::vector<Flat> cols;
  std::vector<FlatKey> rows;
  out.powers.push_back(NCMatrix::identity(M.ctx(), M.rows()));
  for (size_t d = 0; d <= cap; ++d) {
    if (d > 0) out.powers.push_back(M * out.powers.back());
    Flat v = flatten(out.powers[d]);
    auto c = solve_on_rows(cols, v, rows);
    if (!c) throw PatternMismatch("pivot minor became singular");
    Flat r = residual(v, cols, *c);
    if (r.empty()) {
      out.coeffs = *c;
      out.coeffs.push_back(Scalar(1));
      // other annihilators of degree d+1: lambda^{d+1} + t lambda^d + ...
      out.powers.push_back(M * out.powers.back());
      Flat w = flatten(out.powers[d + 1]);
      bool ok = true;
      for (int t = 0; t <= 1 && ok; ++t) {
        Flat rhs = w;
        if (t) rhs = residual(w, {v}, {Scalar(1)});
        auto e = solve_on_rows(cols, rhs, rows);
        if (!e || !residual(rhs, cols, *e).empty()) {
          ok = false;
          break;
        }
        KPoly other = *e;
        other.push_back(Scalar(t));
        other.push_back(Scalar(1));
        ok = poly_rem_monic(other, out.coeffs).empty();
      }
      out.divides_other_annihilators = ok;
      return out;
    }
    rows.push_back(r.begin()->first);
    cols.push_back(std::move(v));
  }
  throw DegreeCapExceeded("no annihilating polynomial up to degree " + std::to_string(cap));
}

// Pairwise distinctness of the predicted roots, symbolically.
inline bool roots_distinct(const std::vector<Scalar>& r) {
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = i + 1; j < r.size(); ++j)
      if ((r[i] - r[j]).is_zero()) return false;
  return true;
}

// Distinctness at a rational point (h, al, s); s = 0 is allowed here so the
// degenerate discriminant can be reported rather than rejected.
inline bool roots_distinct_at(const std::vector<Scalar>& r, const mpq_class& h, const mpq_class& al,
                              const GaussRational& s) {
  std::vector<GaussRational> v;
  for (auto& x : r) {
    GaussRational d = x.d().eval(h, al);
    if (d.is_zero()) return false;
    v.push_back((x.p().eval(h, al) + x.q().eval(h, al) * s) / d);
  }
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j]) return false;
  return true;
}

struct SpectrumReport {
  ChReport report;
  MinPoly minpoly;
  SpectrumPrediction prediction;
  KPoly predicted_poly;
  bool matches = false, distinct = false;
};

// With al fixed to a rational value the entries of Lk carry that value, so the
// prediction is compared after the same substitution. Products are formed
// first: Scalar arithmetic reduces s^2 with a symbolic al.
inline SpectrumReport spectrum_check(const NCMatrix& Lk, int k, const std::optional<mpq_class>& al = std::nullopt) {
  Stopwatch sw;
  SpectrumReport s;
  s.prediction = predicted_spectrum(k);
  s.predicted_poly = poly_from_roots(s.prediction.values());
  if (al) {
    for (auto& c : s.predicted_poly) c = c.with_alpha(*al);
    for (auto& [l, v] : s.prediction.roots) v = v.with_alpha(*al);
  }
  s.minpoly = minimal_polynomial(Lk, size_t(k) + 2);
  s.matches = poly_equal(s.minpoly.coeffs, s.predicted_poly);
  s.distinct = roots_distinct(s.prediction.values());
  auto& r = s.report;
  r.task = "minpoly";
  r.k = std::to_string(k);
  r.minpoly = s.minpoly.coeffs;
  r.predicted = s.prediction.values();
  r.status = (s.matches && s.distinct && s.minpoly.divides_other_annihilators) ? "verified" : "failed";
  if (!s.matches) {
    r.notes.push_back("minimal polynomial differs from prod(lambda - lambda_{k1k2})");
    r.residual = eval_matrix_poly(Lk, s.predicted_poly);
  }
  if (!s.distinct) r.notes.push_back("predicted roots not pairwise distinct");
  if (!s.minpoly.divides_other_annihilators) r.notes.push_back("minimal polynomial does not divide a degree-(d+1) annihilator");
  r.elapsed_ms = sw.ms();
  return s;
}

}  // namespace ncsphere
