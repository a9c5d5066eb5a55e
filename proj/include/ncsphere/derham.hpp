#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "line_bundles.hpp"

namespace ncsphere {

// Element of a free right module: coefficient of each generator.
using ModVec = std::vector<NCElement>;

inline ModVec mod_times(const ModVec& v, const NCElement& f) {
  ModVec r;
  for (auto& c : v) r.push_back(c * f);
  return r;
}
inline ModVec mod_add(const ModVec& x, const ModVec& y, const Scalar& k = Scalar(1)) {
  ModVec r = x;
  for (size_t i = 0; i < r.size(); ++i) r[i] += k * y[i];
  return r;
}
inline bool mod_zero(const ModVec& v) {
  for (auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

// u20, u11, u02 in terms of the weight generators G_b, G_a, G_c (rows, columns b, a, c)
inline const std::array<std::array<Scalar, 3>, 3>& u_to_g() {
  static const std::array<std::array<Scalar, 3>, 3> T = [] {
    const Scalar I = Scalar::I(), h = Scalar::rational(1, 2);
    return std::array<std::array<Scalar, 3>, 3>{{{0, -I, 0}, {I * h, 0, I * h}, {h, 0, -h}}};
  }();
  return T;
}

// sum_i u_i f_i (compact coefficients) -> coefficients of G_b, G_a, G_c over sl2h
inline ModVec compact_to_weight(const ModVec& f, const Ctx& sl) {
  const auto& T = u_to_g();
  ModVec r(3, NCElement(sl));
  for (int i = 0; i < 3; ++i) {
    const NCElement fi = f[i].ctx() == sl ? f[i] : change_basis(f[i], sl);
    for (int j = 0; j < 3; ++j)
      if (!T[i][j].is_zero()) r[j] += T[i][j] * fi;
  }
  return r;
}

// ---- presentations ----

struct ModulePresentation {
  std::string name;
  std::vector<std::string> generators;
  // column j holds the coefficients of relation j: sum_i u_i M(i, j)
  NCMatrix relations;
  size_t rank() const { return generators.size(); }
};

struct PresentationSet {
  ModulePresentation T, omega0, omega1, omega2;
  bool tangent_complement = false;  // (id - e11) (x,y,z)^T = 0 and e11 (x,y,z)^T = (x,y,z)^T
  bool omega2_eigenrows = false;    // relation matrix = (Lb_(2) - 2h id)/2
};

inline PresentationSet module_presentations(const Ctx& compact) {
  if (compact->presentation() != Presentation::su2h || !compact->has_quotient())
    throw ContextMismatch("presentations live over the compact quotient algebra");
  const Scalar al = *compact->quotient_alpha();
  if (al.is_zero()) throw DivisionByZero("al = 0");
  const NCElement x = gen(compact, "x"), y = gen(compact, "y"), z = gen(compact, "z");
  const NCElement h(compact, Scalar::hbar());
  const std::vector<std::string> u = {"u20", "u11", "u02"};
  PresentationSet P;
  P.omega0 = {"Omega0", {"1"}, NCMatrix(compact, 1, 0)};
  const NCMatrix col = NCMatrix::from_elements(compact, {{x}, {y}, {z}});
  P.T = {"T", u, col};
  P.omega1 = {"Omega1", u, col};
  // u11 z - u02 y - h u20, -u20 z + u02 x - h u11, u20 y - u11 x - h u02
  P.omega2 = {"Omega2", u,
              NCMatrix::from_elements(compact, {{-h, -z, y}, {z, -h, -x}, {-y, x, -h}})};

  const NCMatrix e11 = al.inverse() * (col * NCMatrix::from_elements(compact, {{x, y, z}}));
  const NCMatrix id3 = NCMatrix::identity(compact, 3);
  P.tangent_complement = ((id3 - e11) * col).is_zero() && e11 * col == col;

  auto sl = make_algebra(Presentation::sl2h, al);
  const NCMatrix Lb = conjugate_to_compact(extension_matrix(sl, 2).matrix, compact);
  P.omega2_eigenrows = P.omega2.relations == Scalar::rational(1, 2) * (Lb - Scalar(2) * Scalar::hbar() * id3);
  return P;
}

// Relation columns as weight-basis module elements over sl2h.
inline std::vector<ModVec> weight_relations(const ModulePresentation& p, const Ctx& sl) {
  std::vector<ModVec> out;
  for (size_t j = 0; j < p.relations.cols(); ++j) {
    ModVec f;
    for (size_t i = 0; i < p.relations.rows(); ++i) f.push_back(p.relations(i, j));
    out.push_back(p.rank() == 3 ? compact_to_weight(f, sl) : ModVec{change_basis(f[0], sl)});
  }
  return out;
}

// ---- truncated modules ----

// The degree <= D part of (F_D A)^r modulo the relations it contains,
// split into ad(a)-weight blocks. Columns of a block are (generator,
// monomial) pairs in descending degree; relations are generated one degree
// higher and intersected with F_D, since the quotient filtration need not be
// strict.
class TruncatedModule {
 public:
  struct Key {
    int gen;
    Monomial m;
  };
  struct Block {
    std::vector<Key> cols;                 // all columns, degree <= D+1
    std::vector<std::vector<Scalar>> rows; // reduced relations inside F_D
    std::vector<size_t> pivots;            // pivot column of each row
    std::vector<size_t> basis;             // quotient basis: non-pivot columns of degree <= D
    size_t dim() const { return basis.size(); }
  };

  TruncatedModule(std::string name, Ctx sl, int rank, std::vector<ModVec> relations, int D, bool classical = false)
      : name_(std::move(name)), ctx_(std::move(sl)), rank_(rank), D_(D), classical_(classical),
        relations_(std::move(relations)) {
    if (ctx_->presentation() != Presentation::sl2h) throw ContextMismatch("truncation works in sl2h");
    for (auto& r : relations_) r = clean(r);
    for (auto m : normal_monomials(ctx_, unsigned(D_ + 1)))
      for (int j = 0; j < rank_; ++j) {
        const int w = gen_weight(j) + weight(m);
        blocks_[w].cols.push_back({j, m});
      }
    for (auto& [w, B] : blocks_) {
      std::stable_sort(B.cols.begin(), B.cols.end(), [](const Key& x, const Key& y) {
        if (x.m.degree() != y.m.degree()) return x.m.degree() > y.m.degree();
        if (x.gen != y.gen) return x.gen < y.gen;
        return y.m < x.m;
      });
      for (size_t i = 0; i < B.cols.size(); ++i) index_[w][pack(B.cols[i])] = i;
    }
    // generated relation rows, split by weight
    std::map<int, std::vector<std::vector<Scalar>>> raw;
    for (auto& R : relations_)
      for (auto m : normal_monomials(ctx_, unsigned(D_))) {
        const ModVec v = clean(mod_times(R, NCElement::monomial(ctx_, m)));
        std::map<int, std::vector<Scalar>> parts;
        for (int j = 0; j < rank_; ++j)
          for (auto& [mm, c] : v[j].terms()) {
            const int w = gen_weight(j) + weight(mm);
            auto& row = parts[w];
            if (row.empty()) row.resize(blocks_.at(w).cols.size());
            row[index_.at(w).at(pack({j, mm}))] = c;
          }
        for (auto& [w, row] : parts) raw[w].push_back(std::move(row));
      }
    for (auto& [w, B] : blocks_) {
      auto it = raw.find(w);
      if (it != raw.end()) {
        KMatrix M = KMatrix::from_rows(it->second);
        auto piv = rref(M);
        for (size_t r = 0; r < piv.size(); ++r) {
          if (int(B.cols[piv[r]].m.degree()) > D_) continue;
          std::vector<Scalar> row(M.cols());
          for (size_t c = 0; c < M.cols(); ++c) row[c] = M(r, c);
          B.rows.push_back(std::move(row));
          B.pivots.push_back(piv[r]);
        }
      }
      std::vector<bool> is_piv(B.cols.size(), false);
      for (auto p : B.pivots) is_piv[p] = true;
      for (size_t c = 0; c < B.cols.size(); ++c)
        if (!is_piv[c] && int(B.cols[c].m.degree()) <= D_) B.basis.push_back(c);
    }
  }

  const std::string& name() const { return name_; }
  const Ctx& ctx() const { return ctx_; }
  int rank() const { return rank_; }
  int degree() const { return D_; }
  bool classical() const { return classical_; }
  const std::vector<ModVec>& relations() const { return relations_; }

  static int weight(const Monomial& m) { return int(m.e[0]) - int(m.e[2]); }
  int gen_weight(int j) const { return rank_ == 1 ? 0 : 1 - j; }

  size_t dim(int w) const {
    auto it = blocks_.find(w);
    return it == blocks_.end() ? 0 : it->second.dim();
  }
  size_t total_dim() const {
    size_t n = 0;
    for (auto& [w, B] : blocks_) n += B.dim();
    return n;
  }
  int max_weight() const {
    int m = 0;
    for (auto& [w, B] : blocks_)
      if (B.dim()) m = std::max(m, w);
    return m;
  }

  // h -> 0 on every coefficient in classical mode
  ModVec clean(ModVec v) const {
    if (!classical_) return v;
    for (auto& c : v) c = c.map_coeffs([](const Scalar& s) { return s.at_hbar_zero(); });
    return v;
  }

  // Quotient coordinates of the weight-w component of v.
  std::vector<Scalar> coords(const ModVec& v0, int w) const {
    const ModVec v = clean(v0);
    auto bit = blocks_.find(w);
    if (bit == blocks_.end()) {
      for (int j = 0; j < rank_; ++j)
        for (auto& [m, c] : v[j].terms())
          if (gen_weight(j) + weight(m) == w) throw DegreeCapExceeded(name_ + ": element outside the truncation");
      return {};
    }
    const Block& B = bit->second;
    std::vector<Scalar> full(B.cols.size());
    for (int j = 0; j < rank_; ++j)
      for (auto& [m, c] : v[j].terms()) {
        if (gen_weight(j) + weight(m) != w) continue;
        if (int(m.degree()) > D_) throw DegreeCapExceeded(name_ + ": degree " + std::to_string(m.degree()));
        full[index_.at(w).at(pack({j, m}))] += c;
      }
    for (size_t r = 0; r < B.rows.size(); ++r) {
      const Scalar f = full[B.pivots[r]];
      if (f.is_zero()) continue;
      for (size_t c = 0; c < full.size(); ++c)
        if (!B.rows[r][c].is_zero()) full[c] = (full[c] - f * B.rows[r][c]).simplified();
    }
    std::vector<Scalar> out;
    for (auto c : B.basis) out.push_back(full[c].simplified());
    return out;
  }

  std::map<int, std::vector<Scalar>> all_coords(const ModVec& v) const {
    std::map<int, std::vector<Scalar>> out;
    for (auto& [w, B] : blocks_)
      if (B.dim()) out[w] = coords(v, w);
    return out;
  }

  bool is_zero_class(const ModVec& v) const {
    for (auto& [w, c] : all_coords(v))
      for (auto& x : c)
        if (!x.is_zero()) return false;
    return true;
  }

  // Representative G_j m of basis vector i of block w.
  ModVec basis_element(int w, size_t i) const {
    const Key& k = blocks_.at(w).cols.at(blocks_.at(w).basis.at(i));
    ModVec v(rank_, NCElement(ctx_));
    v[k.gen] = NCElement::monomial(ctx_, k.m);
    return v;
  }

  ModVec element(int w, const std::vector<Scalar>& c) const {
    ModVec v(rank_, NCElement(ctx_));
    for (size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) v = mod_add(v, basis_element(w, i), c[i]);
    return v;
  }

  // rho(g)(G_h m) = G_{ad_g h} m + G_h ad_g(m), g in {b=0, a=1, c=2}
  ModVec act(int g, const ModVec& v) const {
    ModVec r(rank_, NCElement(ctx_));
    for (int j = 0; j < rank_; ++j) {
      if (v[j].is_zero()) continue;
      r[j] += ad_action(g, v[j]);
      if (rank_ == 3) {
        const NCElement img = ad_action(g, NCElement::generator(ctx_, j));
        for (int k = 0; k < 3; ++k) {
          Monomial m;
          m.e[k] = 1;
          const Scalar c = img.coeff(m);
          if (!c.is_zero()) r[k] += c * v[j];
        }
      }
    }
    return clean(r);
  }

  static int shift(int g) { return g == 0 ? 1 : g == 2 ? -1 : 0; }

  // Matrix of rho(g) from block w to block w + shift(g).
  KMatrix action_matrix(int g, int w) const {
    const int t = w + shift(g);
    KMatrix M(dim(t), dim(w));
    for (size_t i = 0; i < dim(w); ++i) {
      const auto c = coords(act(g, basis_element(w, i)), t);
      for (size_t r = 0; r < c.size(); ++r) M(r, i) = c[r];
    }
    return M;
  }

  // Highest-weight vectors of weight w: kernel of rho(b) on block w.
  std::vector<std::vector<Scalar>> highest_weight(int w) const {
    if (dim(w) == 0) return {};
    if (dim(w + 1) == 0) {
      std::vector<std::vector<Scalar>> out;
      for (size_t i = 0; i < dim(w); ++i) {
        std::vector<Scalar> e(dim(w));
        e[i] = Scalar(1);
        out.push_back(e);
      }
      return out;
    }
    return nullspace(action_matrix(0, w));
  }

  // multiplicity of each spin 0..max_weight
  std::vector<int> multiplicities() const {
    std::vector<int> m;
    for (int w = 0; w <= max_weight(); ++w) m.push_back(int(highest_weight(w).size()));
    return m;
  }

  std::vector<int> weights() const {
    std::vector<int> out;
    for (auto& [w, B] : blocks_)
      if (B.dim()) out.push_back(w);
    return out;
  }

 private:
  std::string name_;
  Ctx ctx_;
  int rank_, D_;
  bool classical_;
  std::vector<ModVec> relations_;
  std::map<int, Block> blocks_;
  std::map<int, std::map<uint64_t, size_t>> index_;

  static uint64_t pack(const Key& k) { return uint64_t(k.m.pack()) << 8 | uint64_t(k.gen); }
};

// ---- differentials ----

struct DifferentialMap {
  int level = 0;
  std::map<int, KMatrix> blocks;  // weight -> matrix from source block to target block
};

// A highest-weight vector of weight l and its prescribed image.
struct HwRule {
  int l;
  ModVec source, image;
};

// Extends the rules along the lowering orbits rho(c)^m and solves for the
// block matrices. Every block must be spanned by the orbits.
inline DifferentialMap build_differential(int level, const TruncatedModule& S, const TruncatedModule& T,
                                          const std::vector<HwRule>& rules) {
  DifferentialMap d;
  d.level = level;
  std::map<int, std::vector<ModVec>> src, img;
  for (auto& r : rules) {
    ModVec s = S.clean(r.source), t = T.clean(r.image);
    for (int w = r.l; w >= -r.l; --w) {
      if (S.dim(w) > 0) {
        src[w].push_back(s);
        img[w].push_back(t);
      }
      s = S.act(2, s);
      t = T.act(2, t);
    }
  }
  for (int w : S.weights()) {
    const size_t n = S.dim(w);
    if (src[w].size() != n)
      throw PatternMismatch(S.name() + " weight " + std::to_string(w) + ": " + std::to_string(src[w].size()) +
                            " orbit vectors for a block of dimension " + std::to_string(n));
    std::vector<std::vector<Scalar>> bc, ic;
    for (size_t i = 0; i < n; ++i) {
      bc.push_back(S.coords(src[w][i], w));
      ic.push_back(T.coords(img[w][i], w));
    }
    const KMatrix B = KMatrix::from_columns(bc, n);
    if (rank(B) != n) throw PatternMismatch(S.name() + " weight " + std::to_string(w) + ": orbit vectors dependent");
    const KMatrix Im = KMatrix::from_columns(ic, T.dim(w));
    d.blocks[w] = Im * inverse(B);
  }
  return d;
}

inline ModVec apply_differential(const DifferentialMap& d, const TruncatedModule& S, const TruncatedModule& T,
                                 const ModVec& v) {
  ModVec out(T.rank(), NCElement(T.ctx()));
  for (auto& [w, c] : S.all_coords(v)) {
    auto it = d.blocks.find(w);
    if (it == d.blocks.end()) continue;
    out = mod_add(out, T.element(w, it->second * c));
  }
  return out;
}

// ---- the complex ----

struct DerhamComplex {
  int N = 0;  // reported spins
  int D = 0;  // ambient coefficient degree
  bool classical = false;
  Ctx ctx;    // sl2h quotient
  std::vector<TruncatedModule> omega;  // 0, 1, 2
  DifferentialMap d0, d1;
  ModVec one, volume;                  // 1 in Omega0 and the class of u20 x + u11 y + u02 z in Omega2
};

inline NCElement b_power(const Ctx& sl, int l) { return NCElement::word(sl, std::vector<int>(size_t(l), 0)); }

inline DerhamComplex build_complex(int N, bool classical = false, const Scalar& al = Scalar::alpha()) {
  if (N < 0) throw IndexOutOfRange("N < 0");
  if (N > 2 * kDefaultSpinCap) throw DegreeCapExceeded("de Rham truncation above cap");
  if (al.is_zero()) throw DivisionByZero("al = 0");
  DerhamComplex C;
  C.N = N;
  C.D = N + 1;
  C.classical = classical;
  auto compact = make_algebra(Presentation::su2h, al);
  C.ctx = make_algebra(Presentation::sl2h, al);
  const Ctx& sl = C.ctx;
  const PresentationSet P = module_presentations(compact);
  C.omega.emplace_back("Omega0", sl, 1, std::vector<ModVec>{}, C.D, classical);
  C.omega.emplace_back("Omega1", sl, 3, weight_relations(P.omega1, sl), C.D, classical);
  C.omega.emplace_back("Omega2", sl, 3, weight_relations(P.omega2, sl), C.D, classical);
  const NCElement zero(sl), a = gen(sl, "a");

  // d b^l = l (db) b^{l-1}
  std::vector<HwRule> r0;
  for (int l = 0; l <= C.D; ++l) {
    ModVec img(3, zero);
    if (l > 0) img[0] = Scalar(l) * b_power(sl, l - 1);
    r0.push_back({l, {b_power(sl, l)}, img});
  }
  C.d0 = build_differential(0, C.omega[0], C.omega[1], r0);

  // exact copies e_l go to 0; w_l = G_a b^l - G_b a b^{l-1} goes to -(l+1) W_b b^{l-1}
  std::vector<HwRule> r1;
  for (int l = 1; l <= C.D + 1; ++l) r1.push_back({l, {Scalar(l) * b_power(sl, l - 1), zero, zero}, {zero, zero, zero}});
  for (int l = 1; l <= C.D; ++l)
    r1.push_back({l, {-(a * b_power(sl, l - 1)), b_power(sl, l), zero},
                  {Scalar(-(l + 1)) * b_power(sl, l - 1), zero, zero}});
  C.d1 = build_differential(1, C.omega[1], C.omega[2], r1);

  C.one = {NCElement::one(sl)};
  C.volume = C.omega[1].relations().at(0);
  return C;
}

// ---- commutative calculus on x^2 + y^2 + z^2 = al (h = 0) ----

class CPoly {
 public:
  using Exp3 = std::array<int, 3>;
  CPoly() = default;
  explicit CPoly(const Scalar& c) {
    if (!c.is_zero()) t_[{0, 0, 0}] = c;
  }
  static CPoly var(int i) {
    CPoly p;
    Exp3 e{0, 0, 0};
    e[i] = 1;
    p.t_[e] = Scalar(1);
    return p;
  }
  const std::map<Exp3, Scalar>& terms() const { return t_; }

  friend CPoly operator+(CPoly x, const CPoly& y) {
    for (auto& [e, c] : y.t_) x.add(e, c);
    return x;
  }
  friend CPoly operator-(CPoly x, const CPoly& y) {
    for (auto& [e, c] : y.t_) x.add(e, -c);
    return x;
  }
  friend CPoly operator*(const CPoly& x, const CPoly& y) {
    CPoly r;
    for (auto& [e1, c1] : x.t_)
      for (auto& [e2, c2] : y.t_) r.add({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
    return r;
  }
  friend CPoly operator*(const Scalar& k, CPoly x) {
    for (auto& [e, c] : x.t_) c = (k * c).simplified();
    x.prune();
    return x;
  }

  CPoly derivative(int i) const {
    CPoly r;
    for (auto& [e, c] : t_)
      if (e[i]) {
        Exp3 f = e;
        --f[i];
        r.add(f, Scalar(e[i]) * c);
      }
    return r;
  }

  // x^2 -> al - y^2 - z^2 until every monomial has x-degree <= 1
  CPoly reduced(const Scalar& al) const {
    CPoly r = *this;
    for (;;) {
      auto it = std::find_if(r.t_.begin(), r.t_.end(), [](auto& kv) { return kv.first[0] >= 2; });
      if (it == r.t_.end()) return r;
      const Exp3 e = it->first;
      const Scalar c = it->second;
      r.t_.erase(it);
      const Exp3 base{e[0] - 2, e[1], e[2]};
      r.add(base, c * al);
      r.add({base[0], base[1] + 2, base[2]}, -c);
      r.add({base[0], base[1], base[2] + 2}, -c);
    }
  }
  bool is_zero() const { return t_.empty(); }

 private:
  std::map<Exp3, Scalar> t_;
  void add(const Exp3& e, const Scalar& c) {
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) it->second = (it->second + c).simplified();
    if (it->second.is_zero()) t_.erase(it);
  }
  void prune() {
    for (auto it = t_.begin(); it != t_.end();)
      it = it->second.is_zero() ? t_.erase(it) : std::next(it);
  }
};

using CVec = std::array<CPoly, 3>;

// sl2h element at h = 0 as a polynomial in x, y, z (a = i x, b = z - i y, c = -z - i y).
inline CPoly to_commutative(const NCElement& f) {
  const Scalar I = Scalar::I();
  const CPoly x = CPoly::var(0), y = CPoly::var(1), z = CPoly::var(2);
  const CPoly img[3] = {z - I * y, I * x, CPoly(Scalar(-1)) * z - I * y};
  CPoly r;
  for (auto& [m, c] : f.terms()) {
    CPoly t(c.at_hbar_zero());
    for (int g = 0; g < 3; ++g)
      for (int k = 0; k < m.e[g]; ++k) t = t * img[g];
    r = r + t;
  }
  return r;
}

// G-basis module element -> coefficients of u20, u11, u02
inline CVec to_u_form(const ModVec& v) {
  const Scalar I = Scalar::I();
  const CPoly fb = to_commutative(v[0]), fa = to_commutative(v[1]), fc = to_commutative(v[2]);
  return {I * fa, Scalar(-1) * (I * (fb + fc)), fb - fc};
}

inline CVec gradient(const CPoly& f) { return {f.derivative(0), f.derivative(1), f.derivative(2)}; }
inline CVec curl(const CVec& g) {
  return {g[2].derivative(1) - g[1].derivative(2), g[0].derivative(2) - g[2].derivative(0),
          g[1].derivative(0) - g[0].derivative(1)};
}
// Omega1 classes are determined by g x (x,y,z); Omega2 classes by g . (x,y,z).
inline CVec canonical1(const CVec& g, const Scalar& al) {
  const CPoly x = CPoly::var(0), y = CPoly::var(1), z = CPoly::var(2);
  return {(g[1] * z - g[2] * y).reduced(al), (g[2] * x - g[0] * z).reduced(al), (g[0] * y - g[1] * x).reduced(al)};
}
inline CPoly canonical2(const CVec& g, const Scalar& al) {
  return (g[0] * CPoly::var(0) + g[1] * CPoly::var(1) + g[2] * CPoly::var(2)).reduced(al);
}

struct ClassicalLimitReport {
  bool d0_ok = true, d1_ok = true;
  size_t checked = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return d0_ok && d1_ok; }
};

// Sets h = 0 in both differentials and compares with d = grad and d = curl
// on every basis vector of the truncated Omega0 and Omega1.
inline ClassicalLimitReport classical_limit_check(const DerhamComplex& C) {
  ClassicalLimitReport rep;
  const Scalar al = *C.ctx->quotient_alpha();
  auto at0 = [](ModVec v) {
    for (auto& c : v) c = c.map_coeffs([](const Scalar& s) { return s.at_hbar_zero(); });
    return v;
  };
  for (int w : C.omega[0].weights())
    for (size_t i = 0; i < C.omega[0].dim(w); ++i) {
      const ModVec f = C.omega[0].basis_element(w, i);
      try {
        const ModVec df = at0(apply_differential(C.d0, C.omega[0], C.omega[1], f));
        const CVec lhs = canonical1(to_u_form(df), al);
        const CVec rhs = canonical1(gradient(to_commutative(f[0])), al);
        for (int k = 0; k < 3; ++k)
          if (!(lhs[k] - rhs[k]).reduced(al).is_zero()) {
            rep.d0_ok = false;
            rep.mismatches.push_back("d0 at " + f[0].str());
            break;
          }
      } catch (const Error& e) {
        rep.d0_ok = false;
        rep.mismatches.push_back("d0 at " + f[0].str() + ": " + e.what());
      }
      ++rep.checked;
    }
  for (int w : C.omega[1].weights())
    for (size_t i = 0; i < C.omega[1].dim(w); ++i) {
      const ModVec g = C.omega[1].basis_element(w, i);
      try {
        const ModVec dg = at0(apply_differential(C.d1, C.omega[1], C.omega[2], g));
        const CPoly lhs = canonical2(to_u_form(dg), al);
        const CPoly rhs = canonical2(curl(to_u_form(g)), al);
        if (!(lhs - rhs).reduced(al).is_zero()) {
          rep.d1_ok = false;
          rep.mismatches.push_back("d1 at weight " + std::to_string(w) + " basis " + std::to_string(i));
        }
      } catch (const Error& e) {
        rep.d1_ok = false;
        rep.mismatches.push_back(std::string("d1: ") + e.what());
      }
      ++rep.checked;
    }
  return rep;
}

// ---- report ----

// Spin multiplicities of the classical truncations at ambient degree D.
inline std::vector<int> classical_multiplicities(int p, int D) {
  std::vector<int> m;
  switch (p) {
    case 0: m.assign(size_t(D + 1), 1); break;
    case 1:
      m.assign(size_t(D + 2), 2);
      m[0] = 0;
      m[D + 1] = 1;
      break;
    default: m.assign(size_t(D + 2), 1); break;
  }
  return m;
}

struct DerhamReport {
  int N = 0;
  bool classical = false;
  std::array<std::vector<int>, 3> multiplicities;  // spins 0..N
  bool multiplicities_match = false;
  bool d_squared_zero = false;
  bool intertwines = false;
  std::array<int, 3> cohomology{};
  bool h0_generator = false, h2_generator = false;
  std::optional<bool> classical_limit_ok;
  std::vector<std::string> notes;
  std::string status;
  double elapsed_ms = 0;
};

inline KMatrix columns_matrix(const std::vector<std::vector<Scalar>>& cols, size_t rows) {
  return cols.empty() ? KMatrix(rows, 0) : KMatrix::from_columns(cols, rows);
}

inline DerhamReport derham_report(const DerhamComplex& C, bool with_classical_limit = true) {
  Stopwatch sw;
  DerhamReport R;
  R.N = C.N;
  R.classical = C.classical;

  R.multiplicities_match = true;
  for (int p = 0; p < 3; ++p) {
    const auto full = C.omega[p].multiplicities();
    const auto expect = classical_multiplicities(p, C.D);
    if (full != expect) {
      R.multiplicities_match = false;
      R.notes.push_back(C.omega[p].name() + " multiplicities differ from the classical truncation");
    }
    R.multiplicities[p].assign(full.begin(), full.begin() + std::min<size_t>(full.size(), size_t(C.N + 1)));
  }

  const auto& O = C.omega;
  auto block = [](const DifferentialMap& d, int w, size_t rows, size_t cols) {
    auto it = d.blocks.find(w);
    return it == d.blocks.end() ? KMatrix(rows, cols) : it->second;
  };

  R.d_squared_zero = true;
  for (int w : O[0].weights()) {
    const KMatrix p = block(C.d1, w, O[2].dim(w), O[1].dim(w)) * block(C.d0, w, O[1].dim(w), O[0].dim(w));
    if (!p.is_zero()) R.d_squared_zero = false;
  }

  R.intertwines = true;
  const DifferentialMap* ds[2] = {&C.d0, &C.d1};
  for (int p = 0; p < 2; ++p)
    for (int g : {0, 1, 2})
      for (int w : O[p].weights()) {
        const int t = w + TruncatedModule::shift(g);
        const KMatrix lhs = block(*ds[p], t, O[p + 1].dim(t), O[p].dim(t)) * O[p].action_matrix(g, w);
        const KMatrix rhs = O[p + 1].action_matrix(g, w) * block(*ds[p], w, O[p + 1].dim(w), O[p].dim(w));
        if (!(lhs == rhs)) {
          R.intertwines = false;
          R.notes.push_back("d" + std::to_string(p) + " fails to intertwine at weight " + std::to_string(w));
        }
      }

  // cohomology on highest-weight vectors of weights 0..N
  for (int w = 0; w <= C.N; ++w) {
    KMatrix K[3], Dk[2];
    for (int p = 0; p < 3; ++p) K[p] = columns_matrix(O[p].highest_weight(w), O[p].dim(w));
    for (int p = 0; p < 2; ++p) Dk[p] = block(*ds[p], w, O[p + 1].dim(w), O[p].dim(w)) * K[p];
    const int r0 = int(rank(Dk[0])), r1 = int(rank(Dk[1]));
    const int h[3] = {int(K[0].cols()) - r0, int(K[1].cols()) - r1 - r0, int(K[2].cols()) - r1};
    for (int p = 0; p < 3; ++p) R.cohomology[p] += (2 * w + 1) * h[p];
    if (w == 0) {
      const auto one = O[0].coords(C.one, 0);
      R.h0_generator = h[0] == 1 && (block(C.d0, 0, O[1].dim(0), O[0].dim(0)) * one) ==
                                        std::vector<Scalar>(O[1].dim(0));
      const auto vol = O[2].coords(C.volume, 0);
      const bool hw = O[2].coords(O[2].act(0, C.volume), 1) == std::vector<Scalar>(O[2].dim(1));
      KMatrix aug(O[2].dim(0), Dk[1].cols() + 1);
      for (size_t i = 0; i < aug.rows(); ++i) {
        for (size_t j = 0; j < Dk[1].cols(); ++j) aug(i, j) = Dk[1](i, j);
        aug(i, Dk[1].cols()) = vol[i];
      }
      R.h2_generator = h[2] == 1 && hw && rank(aug) == size_t(r1) + 1;
    }
  }

  if (with_classical_limit && !C.classical) {
    const auto cl = classical_limit_check(C);
    R.classical_limit_ok = cl.ok();
    for (auto& m : cl.mismatches) R.notes.push_back(m);
  }
  const bool ok = R.multiplicities_match && R.d_squared_zero && R.intertwines && R.cohomology == std::array<int, 3>{1, 0, 1} &&
                  R.h0_generator && R.h2_generator && R.classical_limit_ok.value_or(true);
  R.status = ok ? "verified" : "failed";
  R.elapsed_ms = sw.ms();
  return R;
}

}  // namespace ncsphere
