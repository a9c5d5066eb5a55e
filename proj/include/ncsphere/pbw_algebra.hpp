#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "scalars.hpp"

namespace ncsphere {

enum class Presentation { gl2h, sl2h, su2h };

inline std::string to_string(Presentation p) {
  switch (p) {
    case Presentation::gl2h: return "gl2h";
    case Presentation::sl2h: return "sl2h";
    case Presentation::su2h: return "su2h";
  }
  return "?";
}

inline Presentation parse_presentation(const std::string& s) {
  if (s == "gl2h") return Presentation::gl2h;
  if (s == "sl2h") return Presentation::sl2h;
  if (s == "su2h") return Presentation::su2h;
  throw UnknownPresentation(s);
}

// Exponent vector over the ordered generators; a PBW monomial is
// g0^e0 g1^e1 ... in generator order.
struct Monomial {
  std::array<uint8_t, 4> e{};

  unsigned degree() const { return unsigned(e[0]) + e[1] + e[2] + e[3]; }
  bool is_one() const { return degree() == 0; }
  uint32_t pack() const { return uint32_t(e[0]) | uint32_t(e[1]) << 8 | uint32_t(e[2]) << 16 | uint32_t(e[3]) << 24; }
  int last() const {
    for (int g = 3; g >= 0; --g)
      if (e[g]) return g;
    return -1;
  }
  friend bool operator==(const Monomial& x, const Monomial& y) { return x.e == y.e; }
  // graded, then lexicographic with larger early exponents first
  friend bool operator<(const Monomial& x, const Monomial& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return x.e > y.e;
  }
};

using TermList = std::vector<std::pair<Monomial, Scalar>>;

class AlgebraContext;
using Ctx = std::shared_ptr<const AlgebraContext>;

// A presented algebra: generators, Lie brackets [g_j, g_i] (linear in the
// generators), and optional quotient rules g^p -> lower-order element.
class AlgebraContext {
 public:
  struct QuotientRule {
    int gen;
    int power;
    TermList rhs;
  };

  Presentation presentation() const { return pres_; }
  std::string name() const { return to_string(pres_); }
  int ngens() const { return int(names_.size()); }
  const std::vector<std::string>& gen_names() const { return names_; }
  int gen_index(const std::string& n) const {
    for (int g = 0; g < ngens(); ++g)
      if (names_[g] == n) return g;
    throw IndexOutOfRange("no generator '" + n + "' in " + name());
  }
  bool has_quotient() const { return alpha_.has_value(); }
  const std::optional<Scalar>& quotient_alpha() const { return alpha_; }
  const std::vector<QuotientRule>& quotient_rules() const { return rules_; }
  // [g_j, g_i] as a combination of generators
  const std::vector<std::pair<int, Scalar>>& bracket(int j, int i) const { return bracket_[j][i]; }

  bool compatible(const AlgebraContext& o) const {
    if (pres_ != o.pres_ || alpha_.has_value() != o.alpha_.has_value()) return false;
    return !alpha_ || *alpha_ == *o.alpha_;
  }

  bool is_normal(const Monomial& m) const {
    for (int g = ngens(); g < 4; ++g)
      if (m.e[g]) return false;
    for (auto& r : rules_)
      if (m.e[r.gen] >= r.power) return false;
    return true;
  }

  // m * g in normal form.
  TermList mul_mono_gen(const Monomial& m, int g) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return mono_gen(m, g);
  }
  // m1 * m2 in normal form.
  TermList mul_mono_mono(const Monomial& m1, const Monomial& m2) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return mono_mono(m1, m2);
  }

  static Ctx make(Presentation p, std::optional<Scalar> alpha = std::nullopt);

 private:
  Presentation pres_{};
  std::vector<std::string> names_;
  std::array<std::array<std::vector<std::pair<int, Scalar>>, 4>, 4> bracket_;
  std::optional<Scalar> alpha_;
  std::vector<QuotientRule> rules_;

  mutable std::recursive_mutex mu_;
  mutable std::unordered_map<uint64_t, TermList> mono_gen_memo_;
  mutable std::unordered_map<uint64_t, TermList> mono_mono_memo_;

  static void accumulate(std::map<Monomial, Scalar>& acc, const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = acc.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
  static TermList to_list(std::map<Monomial, Scalar>& acc) {
    TermList out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc) out.emplace_back(m, std::move(c));
    return out;
  }

  const TermList& mono_gen(const Monomial& m, int g) const {
    const uint64_t key = uint64_t(m.pack()) << 8 | uint64_t(g);
    if (auto it = mono_gen_memo_.find(key); it != mono_gen_memo_.end()) return it->second;
    std::map<Monomial, Scalar> acc;
    const int last = m.last();
    if (last <= g) {
      Monomial m2 = m;
      ++m2.e[g];
      const QuotientRule* rule = nullptr;
      for (auto& r : rules_)
        if (r.gen == g && m2.e[g] >= r.power) rule = &r;
      if (!rule) {
        acc.emplace(m2, Scalar(1));
      } else {
        Monomial m0 = m2;
        m0.e[g] -= uint8_t(rule->power);
        for (auto& [t, c] : rule->rhs)
          for (auto& [u, cu] : mono_mono(m0, t)) accumulate(acc, u, c * cu);
      }
    } else {
      // m = m0 * last, and last * g = g * last + [last, g]
      Monomial m0 = m;
      --m0.e[last];
      TermList head = mono_gen(m0, g);
      for (auto& [u, cu] : head)
        for (auto& [v, cv] : mono_gen(u, last)) accumulate(acc, v, cu * cv);
      for (auto& [r, cr] : bracket_[last][g])
        for (auto& [v, cv] : mono_gen(m0, r)) accumulate(acc, v, cr * cv);
    }
    return mono_gen_memo_.emplace(key, to_list(acc)).first->second;
  }

  const TermList& mono_mono(const Monomial& m1, const Monomial& m2) const {
    const uint64_t key = uint64_t(m1.pack()) << 32 | uint64_t(m2.pack());
    if (auto it = mono_mono_memo_.find(key); it != mono_mono_memo_.end()) return it->second;
    TermList cur{{m1, Scalar(1)}};
    for (int g = 0; g < 4; ++g) {
      for (int k = 0; k < m2.e[g]; ++k) {
        std::map<Monomial, Scalar> acc;
        for (auto& [u, cu] : cur)
          for (auto& [v, cv] : mono_gen(u, g)) accumulate(acc, v, cu * cv);
        cur = to_list(acc);
      }
    }
    return mono_mono_memo_.emplace(key, std::move(cur)).first->second;
  }
};

inline Ctx make_algebra(Presentation p, std::optional<Scalar> alpha = std::nullopt) {
  return AlgebraContext::make(p, std::move(alpha));
}
inline Ctx make_algebra(const std::string& name, std::optional<Scalar> alpha = std::nullopt) {
  return AlgebraContext::make(parse_presentation(name), std::move(alpha));
}

inline Ctx AlgebraContext::make(Presentation p, std::optional<Scalar> alpha) {
  auto ctx = std::make_shared<AlgebraContext>();
  ctx->pres_ = p;
  const Scalar h = Scalar::hbar();
  // set [g_j, g_i] and [g_i, g_j] = -[g_j, g_i]
  auto lie = [&](int j, int i, std::vector<std::pair<int, Scalar>> v) {
    ctx->bracket_[j][i] = v;
    for (auto& t : v) t.second = -t.second;
    ctx->bracket_[i][j] = v;
  };
  auto mono = [](std::initializer_list<std::pair<int, int>> powers) {
    Monomial m;
    for (auto [g, e] : powers) m.e[g] = uint8_t(e);
    return m;
  };
  switch (p) {
    case Presentation::gl2h: {
      enum { b, a, d, c };
      ctx->names_ = {"b", "a", "d", "c"};
      lie(a, b, {{b, h}});
      lie(a, c, {{c, -h}});
      lie(b, c, {{a, h}, {d, -h}});
      lie(b, d, {{b, h}});
      lie(c, d, {{c, -h}});
      if (alpha) {
        ctx->rules_.push_back({d, 1, {{mono({{a, 1}}), Scalar(-1)}}});
        ctx->rules_.push_back({a, 2, {{mono({{a, 1}}), h}, {mono({{b, 1}, {c, 1}}), Scalar(-1)}, {Monomial{}, -*alpha}}});
      }
      break;
    }
    case Presentation::sl2h: {
      enum { b, a, c };
      ctx->names_ = {"b", "a", "c"};
      lie(a, b, {{b, h}});
      lie(a, c, {{c, -h}});
      lie(b, c, {{a, h * Scalar(2)}});
      if (alpha)
        ctx->rules_.push_back({a, 2, {{mono({{a, 1}}), h}, {mono({{b, 1}, {c, 1}}), Scalar(-1)}, {Monomial{}, -*alpha}}});
      break;
    }
    case Presentation::su2h: {
      enum { x, y, z };
      ctx->names_ = {"x", "y", "z"};
      lie(x, y, {{z, h}});
      lie(y, z, {{x, h}});
      lie(z, x, {{y, h}});
      if (alpha)
        ctx->rules_.push_back({z, 2, {{mono({{x, 2}}), Scalar(-1)}, {mono({{y, 2}}), Scalar(-1)}, {Monomial{}, *alpha}}});
      break;
    }
  }
  // quotient right-hand sides must themselves be normal
  for (auto& r : ctx->rules_)
    for (auto& [m, c] : r.rhs)
      if (m.e[r.gen] >= r.power) throw PatternMismatch("quotient rule is not order-decreasing");
  ctx->alpha_ = std::move(alpha);
  return ctx;
}

// PBW-normal element of a presented algebra.
class NCElement {
 public:
  using Terms = std::map<Monomial, Scalar>;

  NCElement() = default;
  explicit NCElement(Ctx ctx) : ctx_(std::move(ctx)) {}
  NCElement(Ctx ctx, const Scalar& c) : ctx_(std::move(ctx)) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
  }

  static NCElement one(const Ctx& ctx) { return NCElement(ctx, Scalar(1)); }
  static NCElement generator(const Ctx& ctx, int g) {
    return from_terms(ctx, ctx->mul_mono_gen(Monomial{}, g));
  }
  static NCElement generator(const Ctx& ctx, const std::string& name) { return generator(ctx, ctx->gen_index(name)); }
  // Product of generators in the given order, reduced.
  static NCElement word(const Ctx& ctx, const std::vector<int>& gens, const Scalar& c = Scalar(1)) {
    NCElement r(ctx, c);
    for (int g : gens) r = r.times_gen(g);
    return r;
  }
  // The ordered monomial g0^e0 g1^e1 ... reduced if it is not already normal.
  static NCElement monomial(const Ctx& ctx, const Monomial& m, const Scalar& c = Scalar(1)) {
    if (ctx->is_normal(m)) {
      NCElement r(ctx);
      if (!c.is_zero()) r.terms_.emplace(m, c);
      return r;
    }
    std::vector<int> w;
    for (int g = 0; g < 4; ++g)
      for (int k = 0; k < m.e[g]; ++k) w.push_back(g);
    return word(ctx, w, c);
  }
  static NCElement from_terms(const Ctx& ctx, const TermList& ts) {
    NCElement r(ctx);
    for (auto& [m, c] : ts) r.add_term(m, c);
    return r;
  }

  const Ctx& ctx() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }
  Scalar coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
  }
  // True iff the element lies in K*1.
  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  Scalar scalar_part() const { return coeff(Monomial{}); }

  void add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  NCElement operator-() const {
    NCElement r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend NCElement operator+(const NCElement& x, const NCElement& y) {
    NCElement r = x.ctx_ ? x : NCElement(y.ctx_);
    r += y;
    return r;
  }
  friend NCElement operator-(const NCElement& x, const NCElement& y) {
    NCElement r = x.ctx_ ? x : NCElement(y.ctx_);
    r -= y;
    return r;
  }
  NCElement& operator+=(const NCElement& y) {
    check_ctx(y);
    if (!ctx_) ctx_ = y.ctx_;
    for (auto& [m, c] : y.terms_) add_term(m, c);
    return *this;
  }
  NCElement& operator-=(const NCElement& y) {
    check_ctx(y);
    if (!ctx_) ctx_ = y.ctx_;
    for (auto& [m, c] : y.terms_) add_term(m, -c);
    return *this;
  }
  friend NCElement operator*(const NCElement& x, const NCElement& y) {
    x.check_ctx(y);
    NCElement r(x.ctx_ ? x.ctx_ : y.ctx_);
    for (auto& [u, cu] : x.terms_)
      for (auto& [v, cv] : y.terms_) {
        if (u.is_one()) {
          r.add_term(v, cu * cv);
          continue;
        }
        if (v.is_one()) {
          r.add_term(u, cu * cv);
          continue;
        }
        Scalar c = cu * cv;
        for (auto& [w, cw] : x.ctx_->mul_mono_mono(u, v)) r.add_term(w, c * cw);
      }
    return r;
  }
  NCElement& operator*=(const NCElement& y) { return *this = *this * y; }
  friend NCElement operator*(const Scalar& c, const NCElement& x) {
    NCElement r(x.ctx_);
    if (c.is_zero()) return r;
    for (auto& [m, v] : x.terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * v);
    return r;
  }
  friend NCElement operator*(const NCElement& x, const Scalar& c) { return c * x; }

  NCElement times_gen(int g) const {
    NCElement r(ctx_);
    for (auto& [u, cu] : terms_)
      for (auto& [v, cv] : ctx_->mul_mono_gen(u, g)) r.add_term(v, cu * cv);
    return r;
  }

  // Coefficientwise map (used for h -> 0 and similar substitutions).
  template <class F>
  NCElement map_coeffs(F&& f) const {
    NCElement r(ctx_);
    for (auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  friend bool operator==(const NCElement& x, const NCElement& y) {
    if (x.terms_.size() != y.terms_.size()) return false;
    auto i = x.terms_.begin();
    for (auto j = y.terms_.begin(); j != y.terms_.end(); ++i, ++j)
      if (!(i->first == j->first) || i->second != j->second) return false;
    return true;
  }
  friend bool operator!=(const NCElement& x, const NCElement& y) { return !(x == y); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      const bool unit = it->second.is_one(), neg = (-it->second).is_one();
      if (it->first.is_one())
        out += it->second.compact_str();
      else
        out += (unit ? "" : neg ? "-" : it->second.compact_str() + "*") + monomial_str(it->first);
    }
    return out;
  }
  std::string monomial_str(const Monomial& m) const {
    std::string s;
    for (int g = 0; g < ctx_->ngens(); ++g) {
      if (!m.e[g]) continue;
      if (!s.empty()) s += "*";
      s += ctx_->gen_names()[g];
      if (m.e[g] > 1) s += "^" + std::to_string(m.e[g]);
    }
    return s.empty() ? "1" : s;
  }

 private:
  Ctx ctx_;
  Terms terms_;

  void check_ctx(const NCElement& y) const {
    if (ctx_ && y.ctx_ && ctx_ != y.ctx_ && !ctx_->compatible(*y.ctx_))
      throw ContextMismatch(ctx_->name() + " vs " + y.ctx_->name());
  }
};

// Idempotent re-reduction of every monomial through the rewriting engine.
inline NCElement normal_form(const NCElement& e) {
  NCElement r(e.ctx());
  for (auto& [m, c] : e.terms()) r += NCElement::monomial(e.ctx(), m, c);
  return r;
}

inline NCElement gen(const Ctx& ctx, const std::string& name) { return NCElement::generator(ctx, name); }

// h^{-1} (g f - f g)
inline NCElement ad_action(const NCElement& g, const NCElement& f) {
  const Scalar hinv = Scalar(GPoly(1), GPoly(), GPoly::hbar());
  return (g * f - f * g).map_coeffs([&](const Scalar& c) { return (c * hinv).simplified(); });
}
inline NCElement ad_action(int g, const NCElement& f) { return ad_action(NCElement::generator(f.ctx(), g), f); }

struct CasimirReport {
  NCElement casimir, trace;
  bool central = false;
};

inline CasimirReport casimir_and_center(const Ctx& ctx) {
  auto g = [&](const char* n) { return gen(ctx, n); };
  CasimirReport r;
  const Scalar half = Scalar::rational(1, 2);
  switch (ctx->presentation()) {
    case Presentation::gl2h:
      r.casimir = g("a") * g("d") - half * (g("b") * g("c") + g("c") * g("b"));
      r.trace = g("a") + g("d");
      break;
    case Presentation::sl2h:
      r.casimir = -(g("a") * g("a")) - half * (g("b") * g("c") + g("c") * g("b"));
      r.trace = g("a") - g("a");
      break;
    case Presentation::su2h:
      r.casimir = g("x") * g("x") + g("y") * g("y") + g("z") * g("z");
      r.trace = NCElement(ctx);
      break;
  }
  r.central = true;
  for (int k = 0; k < ctx->ngens(); ++k) {
    NCElement x = NCElement::generator(ctx, k);
    if (!(x * r.casimir - r.casimir * x).is_zero() || !(x * r.trace - r.trace * x).is_zero()) r.central = false;
  }
  return r;
}

// Images of generators under the su2h <-> sl2h substitution
//   x = -i a, y = i(b+c)/2, z = (b-c)/2   and   a = i x, b = z - i y, c = -z - i y.
inline std::vector<NCElement> basis_change_images(const Ctx& from, const Ctx& to) {
  const Scalar I = Scalar::I(), half = Scalar::rational(1, 2);
  auto g = [&](const char* n) { return gen(to, n); };
  if (from->presentation() == Presentation::su2h && to->presentation() == Presentation::sl2h)
    return {-I * g("a"), I * half * (g("b") + g("c")), half * (g("b") - g("c"))};
  if (from->presentation() == Presentation::sl2h && to->presentation() == Presentation::su2h)
    return {g("z") - I * g("y"), I * g("x"), -g("z") - I * g("y")};  // order b, a, c
  throw ContextMismatch("change_basis supports su2h <-> sl2h only");
}

inline NCElement change_basis(const NCElement& f, const Ctx& to) {
  const Ctx& from = f.ctx();
  if (from->has_quotient() != to->has_quotient() ||
      (from->has_quotient() && *from->quotient_alpha() != *to->quotient_alpha()))
    throw ContextMismatch("incompatible quotient parameters");
  auto img = basis_change_images(from, to);
  std::vector<std::vector<NCElement>> pw(img.size());
  NCElement r(to);
  for (auto& [m, c] : f.terms()) {
    NCElement t(to, c);
    for (int g = 0; g < from->ngens(); ++g) {
      auto& p = pw[g];
      if (p.empty()) p.push_back(NCElement::one(to));
      while (int(p.size()) <= m.e[g]) p.push_back(p.back() * img[g]);
      if (m.e[g]) t = t * p[m.e[g]];
    }
    r += t;
  }
  return r;
}

// All normal monomials of degree <= maxdeg, ascending in the monomial order.
inline std::vector<Monomial> normal_monomials(const Ctx& ctx, unsigned maxdeg) {
  std::vector<Monomial> out;
  const int n = ctx->ngens();
  Monomial m;
  std::function<void(int, unsigned)> rec = [&](int g, unsigned left) {
    if (g == n) {
      if (ctx->is_normal(m)) out.push_back(m);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      m.e[g] = uint8_t(k);
      rec(g + 1, left - k);
    }
    m.e[g] = 0;
  };
  rec(0, maxdeg);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ncsphere
