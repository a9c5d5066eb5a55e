#pragma once

// Independent reference implementations used only by the tests.

#include <map>
#include <random>
#include <vector>

#include "ncsphere/ncsphere.hpp"

namespace oracle {

using namespace ncsphere;

using Word = std::vector<int>;
using WordSum = std::map<Word, Scalar>;

inline void add(WordSum& s, const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = s.try_emplace(w, c);
  if (!fresh) {
    it->second = (it->second + c).simplified();
    if (it->second.is_zero()) s.erase(it);
  }
}

// Rewriting system written out by hand from the commutation relations:
// for a pair (j, i) with j > i in the generator order, g_j g_i -> g_i g_j + rhs.
struct Rules {
  int ngens = 0;
  std::map<std::pair<int, int>, WordSum> swap;  // (j, i), j > i
  // quotient rules: a pattern of letters and its replacement
  std::vector<std::pair<Word, WordSum>> quotient;
};

inline Rules rules_for(Presentation p, bool quotient, const Scalar& al = Scalar::alpha()) {
  const Scalar h = Scalar::hbar();
  Rules R;
  switch (p) {
    case Presentation::sl2h: {
      // b=0 < a=1 < c=2;  [a,b]=hb, [a,c]=-hc, [b,c]=2ha
      R.ngens = 3;
      R.swap[{1, 0}] = {{{0, 1}, 1}, {{0}, h}};       // ab = ba + h b
      R.swap[{2, 0}] = {{{0, 2}, 1}, {{1}, -2 * h}};  // cb = bc - 2h a
      R.swap[{2, 1}] = {{{1, 2}, 1}, {{2}, h}};       // ca = ac + h c
      if (quotient) R.quotient.push_back({{1, 1}, {{{1}, h}, {{0, 2}, -1}, {{}, -al}}});
      break;
    }
    case Presentation::gl2h: {
      // b=0 < a=1 < d=2 < c=3
      R.ngens = 4;
      R.swap[{1, 0}] = {{{0, 1}, 1}, {{0}, h}};               // ab = ba + h b
      R.swap[{2, 0}] = {{{0, 2}, 1}, {{0}, -h}};              // db = bd - h b
      R.swap[{2, 1}] = {{{1, 2}, 1}};                         // da = ad
      R.swap[{3, 0}] = {{{0, 3}, 1}, {{1}, -h}, {{2}, h}};    // cb = bc - h(a-d)
      R.swap[{3, 1}] = {{{1, 3}, 1}, {{3}, h}};               // ca = ac + h c
      R.swap[{3, 2}] = {{{2, 3}, 1}, {{3}, -h}};              // cd = dc - h c
      if (quotient) {
        R.quotient.push_back({{2}, {{{1}, -1}}});
        R.quotient.push_back({{1, 1}, {{{1}, h}, {{0, 3}, -1}, {{}, -al}}});
      }
      break;
    }
    case Presentation::su2h: {
      // x=0 < y=1 < z=2;  [x,y]=hz, [y,z]=hx, [z,x]=hy
      R.ngens = 3;
      R.swap[{1, 0}] = {{{0, 1}, 1}, {{2}, -h}};  // yx = xy - h z
      R.swap[{2, 0}] = {{{0, 2}, 1}, {{1}, h}};   // zx = xz + h y
      R.swap[{2, 1}] = {{{1, 2}, 1}, {{0}, -h}};  // zy = yz - h x
      if (quotient) R.quotient.push_back({{2, 2}, {{{}, al}, {{0, 0}, -1}, {{1, 1}, -1}}});
      break;
    }
  }
  return R;
}

inline bool is_sorted_word(const Word& w) {
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i - 1] > w[i]) return false;
  return true;
}

// Reduces by applying a randomly chosen applicable rule at a randomly chosen
// position until no rule applies.
inline WordSum reduce_random(WordSum s, const Rules& R, std::mt19937_64& rng) {
  for (;;) {
    std::vector<std::pair<Word, std::vector<std::pair<size_t, int>>>> work;  // word, (pos, rule id)
    for (auto& [w, c] : s) {
      std::vector<std::pair<size_t, int>> sites;
      for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] > w[i + 1]) sites.push_back({i, -1});
      for (size_t q = 0; q < R.quotient.size(); ++q) {
        const Word& pat = R.quotient[q].first;
        for (size_t i = 0; i + pat.size() <= w.size(); ++i)
          if (std::equal(pat.begin(), pat.end(), w.begin() + long(i))) sites.push_back({i, int(q)});
      }
      if (!sites.empty()) work.push_back({w, sites});
    }
    if (work.empty()) return s;
    auto& [w, sites] = work[rng() % work.size()];
    const auto [pos, rule] = sites[rng() % sites.size()];
    const Scalar c = s.at(w);
    s.erase(w);
    const Word pre(w.begin(), w.begin() + long(pos));
    size_t len = rule < 0 ? 2 : R.quotient[size_t(rule)].first.size();
    const Word post(w.begin() + long(pos + len), w.end());
    const WordSum& rhs = rule < 0 ? R.swap.at({w[pos], w[pos + 1]}) : R.quotient[size_t(rule)].second;
    for (auto& [mid, k] : rhs) {
      Word nw = pre;
      nw.insert(nw.end(), mid.begin(), mid.end());
      nw.insert(nw.end(), post.begin(), post.end());
      add(s, nw, (c * k).simplified());
    }
  }
}

inline WordSum from_element(const NCElement& f) {
  WordSum s;
  for (auto& [m, c] : f.terms()) {
    Word w;
    for (int g = 0; g < f.ctx()->ngens(); ++g)
      for (int k = 0; k < m.e[g]; ++k) w.push_back(g);
    add(s, w, c);
  }
  return s;
}

inline bool equal(const WordSum& x, const WordSum& y) {
  if (x.size() != y.size()) return false;
  for (auto& [w, c] : x) {
    auto it = y.find(w);
    if (it == y.end() || it->second != c) return false;
  }
  return true;
}

// n-dimensional irrep realized on homogeneous polynomials of degree n-1 in
// X, Y with E = X d/dY, F = Y d/dX, H = X d/dX - Y d/dY. Basis X^{n-1-j} Y^j.
struct PolyIrrep {
  QiMatrix E, F, H;
  explicit PolyIrrep(int n) : E(n, n), F(n, n), H(n, n) {
    const int d = n - 1;
    for (int j = 0; j <= d; ++j) {
      H(j, j) = GaussRational((d - j) - j);
      if (j > 0) E(j - 1, j) = GaussRational(j);      // X d/dY: X^{d-j}Y^j -> j X^{d-j+1} Y^{j-1}
      if (j < d) F(j + 1, j) = GaussRational(d - j);  // Y d/dX
    }
  }
  // generator images in PBW order at h
  std::vector<QiMatrix> gens(Presentation p, const mpq_class& h) const {
    const GaussRational hh(h), half(mpq_class(1, 2));
    const QiMatrix a = (hh * half) * H, b = hh * E, c = hh * F;
    if (p == Presentation::sl2h) return {b, a, c};
    const GaussRational I(0, 1);
    return {GaussRational(0, -1) * a, (I * half) * (b + c), half * (b - c)};
  }
};

inline QiMatrix eval_poly_irrep(const NCElement& f, const PolyIrrep& R, const Specialization& sp) {
  const auto G = R.gens(f.ctx()->presentation(), sp.hbar);
  const size_t n = R.E.rows();
  QiMatrix acc(n, n);
  for (auto& [m, c] : f.terms()) {
    QiMatrix t = QiMatrix::identity(n);
    for (int g = 0; g < f.ctx()->ngens(); ++g)
      for (int k = 0; k < m.e[g]; ++k) t = t * G[g];
    acc = acc + specialize(c, sp) * t;
  }
  return acc;
}

// Entrywise image of an algebra-valued matrix, entry (i, j) becoming an n x n block.
inline QiMatrix eval_blocks(const NCMatrix& M, const PolyIrrep& R, const Specialization& sp) {
  const size_t n = R.E.rows();
  QiMatrix out(M.rows() * n, M.cols() * n);
  for (size_t i = 0; i < M.rows(); ++i)
    for (size_t j = 0; j < M.cols(); ++j) {
      const QiMatrix b = eval_poly_irrep(M(i, j), R, sp);
      for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) out(i * n + r, j * n + c) = b(r, c);
    }
  return out;
}

inline GaussRational eval_scalar(const Scalar& c, const Specialization& sp) { return specialize(c, sp); }

inline QiMatrix eval_poly(const QiMatrix& M, const std::vector<GaussRational>& coeffs) {
  const size_t n = M.rows();
  QiMatrix acc(n, n), pw = QiMatrix::identity(n);
  for (auto& c : coeffs) {
    acc = acc + c * pw;
    pw = pw * M;
  }
  return acc;
}

// Rank by plain Gaussian elimination over Q(i).
inline size_t rank(std::vector<std::vector<GaussRational>> rows) {
  size_t r = 0;
  const size_t ncols = rows.empty() ? 0 : rows[0].size();
  for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      const GaussRational f = rows[i][c] / rows[r][c];
      for (size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

// Number of linearly independent matrices among I, M, ..., M^d.
inline size_t power_rank(const QiMatrix& M, size_t d) {
  std::vector<std::vector<GaussRational>> rows;
  QiMatrix pw = QiMatrix::identity(M.rows());
  for (size_t k = 0; k <= d; ++k) {
    std::vector<GaussRational> v;
    for (size_t i = 0; i < M.rows(); ++i)
      for (size_t j = 0; j < M.cols(); ++j) v.push_back(pw(i, j));
    rows.push_back(std::move(v));
    pw = pw * M;
  }
  return rank(rows);
}

}  // namespace oracle
