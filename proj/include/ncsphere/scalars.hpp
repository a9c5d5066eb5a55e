#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "integers.hpp"

namespace ncsphere {

// Exponent pair of a monomial h^eh * al^ea.
struct Exp {
  uint16_t eh = 0, ea = 0;
  unsigned total() const { return unsigned(eh) + ea; }
  friend bool operator==(Exp x, Exp y) { return x.eh == y.eh && x.ea == y.ea; }
  // graded, then by power of h
  friend bool operator<(Exp x, Exp y) {
    if (x.total() != y.total()) return x.total() < y.total();
    return x.eh < y.eh;
  }
  friend Exp operator+(Exp x, Exp y) { return {uint16_t(x.eh + y.eh), uint16_t(x.ea + y.ea)}; }
  bool divides(Exp y) const { return eh <= y.eh && ea <= y.ea; }
};

// Polynomial in h and al with Gaussian-integer coefficients. Terms are kept
// sorted ascending in the graded order above, so back() is the leading term.
class GPoly {
 public:
  using Term = std::pair<Exp, GaussInt>;

  GPoly() = default;
  GPoly(int c) { if (c) terms_.push_back({Exp{}, GaussInt(c)}); }  // NOLINT
  GPoly(GaussInt c) { if (!c.is_zero()) terms_.push_back({Exp{}, std::move(c)}); }  // NOLINT

  static GPoly monomial(Exp e, GaussInt c = 1) {
    GPoly r;
    if (!c.is_zero()) r.terms_.push_back({e, std::move(c)});
    return r;
  }
  static GPoly hbar() { return monomial({1, 0}); }
  static GPoly alpha() { return monomial({0, 1}); }
  // h^2 - 4 al
  static const GPoly& discriminant() {
    static const GPoly D = monomial({2, 0}) + monomial({0, 1}, -4);
    return D;
  }
  static GPoly from_terms(std::vector<Term> ts) {
    GPoly r;
    std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    for (auto& t : ts) {
      if (!r.terms_.empty() && r.terms_.back().first == t.first)
        r.terms_.back().second += t.second;
      else
        r.terms_.push_back(std::move(t));
      if (r.terms_.back().second.is_zero()) r.terms_.pop_back();
    }
    return r;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.total() == 0); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].first.total() == 0 && terms_[0].second.is_one(); }
  const Term& leading() const { return terms_.back(); }
  GaussInt constant_term() const {
    return (!terms_.empty() && terms_[0].first.total() == 0) ? terms_[0].second : GaussInt();
  }
  unsigned degree() const { return terms_.empty() ? 0 : terms_.back().first.total(); }
  unsigned max_eh() const {
    unsigned m = 0;
    for (auto& t : terms_) m = std::max<unsigned>(m, t.first.eh);
    return m;
  }
  unsigned max_ea() const {
    unsigned m = 0;
    for (auto& t : terms_) m = std::max<unsigned>(m, t.first.ea);
    return m;
  }

  GPoly operator-() const {
    GPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend GPoly operator+(const GPoly& x, const GPoly& y) { return merge(x, y, false); }
  friend GPoly operator-(const GPoly& x, const GPoly& y) { return merge(x, y, true); }
  GPoly& operator+=(const GPoly& y) { return *this = merge(*this, y, false); }
  GPoly& operator-=(const GPoly& y) { return *this = merge(*this, y, true); }

  friend GPoly operator*(const GPoly& x, const GPoly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    if (x.terms_.size() == 1) return y.times_term(x.terms_[0].first, x.terms_[0].second);
    if (y.terms_.size() == 1) return x.times_term(y.terms_[0].first, y.terms_[0].second);
    const unsigned H = x.max_eh() + y.max_eh() + 1, A = x.max_ea() + y.max_ea() + 1;
    std::vector<GaussInt> acc(size_t(H) * A);
    for (auto& [ex, cx] : x.terms_)
      for (auto& [ey, cy] : y.terms_) acc[size_t(ex.eh + ey.eh) * A + (ex.ea + ey.ea)].add_mul(cx, cy);
    std::vector<Term> ts;
    for (unsigned h = 0; h < H; ++h)
      for (unsigned a = 0; a < A; ++a)
        if (!acc[size_t(h) * A + a].is_zero())
          ts.push_back({Exp{uint16_t(h), uint16_t(a)}, std::move(acc[size_t(h) * A + a])});
    std::sort(ts.begin(), ts.end(), [](const Term& u, const Term& v) { return u.first < v.first; });
    GPoly r;
    r.terms_ = std::move(ts);
    return r;
  }
  GPoly& operator*=(const GPoly& y) { return *this = *this * y; }

  GPoly times_term(Exp e, const GaussInt& c) const {
    GPoly r;
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.first + e, t.second * c});
    return r;
  }
  GPoly scaled(const GaussInt& c) const { return times_term(Exp{}, c); }

  friend bool operator==(const GPoly& x, const GPoly& y) {
    if (x.terms_.size() != y.terms_.size()) return false;
    for (size_t k = 0; k < x.terms_.size(); ++k)
      if (!(x.terms_[k].first == y.terms_[k].first) || !(x.terms_[k].second == y.terms_[k].second)) return false;
    return true;
  }
  friend bool operator!=(const GPoly& x, const GPoly& y) { return !(x == y); }

  // Non-negative gcd of all real and imaginary parts (0 for the zero poly).
  Int content() const {
    Int g;
    for (auto& t : terms_) {
      g = Int::gcd(g, t.second.re);
      if (g.is_one()) return g;
      g = Int::gcd(g, t.second.im);
      if (g.is_one()) return g;
    }
    return g;
  }
  GPoly divexact(const Int& g) const {
    GPoly r = *this;
    for (auto& t : r.terms_) {
      t.second.re = Int::divexact(t.second.re, g);
      t.second.im = Int::divexact(t.second.im, g);
    }
    return r;
  }

  // Tries to write scale * (*this) = quot * d over Z[i] with scale a power of
  // N(lc(d)). Returns false if d does not divide *this over Q(i).
  bool divide_by(const GPoly& d, GPoly& quot, Int& scale) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    quot = GPoly();
    scale = 1;
    GPoly r = *this;
    const Exp le = d.leading().first;
    const GaussInt& lc = d.leading().second;
    const GaussInt lcc = lc.conj();
    const Int N = lc.norm();
    while (!r.is_zero()) {
      const Exp re = r.leading().first;
      if (!le.divides(re)) return false;
      const Exp sh{uint16_t(re.eh - le.eh), uint16_t(re.ea - le.ea)};
      GaussInt t = r.leading().second * lcc;
      if (Int::divides(N, t.re) && Int::divides(N, t.im)) {
        t = GaussInt(Int::divexact(t.re, N), Int::divexact(t.im, N));
      } else {
        r = r.scaled(GaussInt(N));
        quot = quot.scaled(GaussInt(N));
        scale *= N;
      }
      r -= d.times_term(sh, t);
      quot += monomial(sh, t);
    }
    return true;
  }

  GaussRational eval(const mpq_class& h, const mpq_class& al) const {
    GaussRational r;
    for (auto& [e, c] : terms_) {
      mpq_class m = 1;
      for (unsigned k = 0; k < e.eh; ++k) m *= h;
      for (unsigned k = 0; k < e.ea; ++k) m *= al;
      r += GaussRational(mpq_class(c.re.mpz()) * m, mpq_class(c.im.mpz()) * m);
    }
    return r;
  }
  // Whether the polynomial becomes identically zero after substituting the
  // given values (unset coordinates stay symbolic).
  bool vanishes_at(const std::optional<mpq_class>& h, const std::optional<mpq_class>& al) const {
    std::map<unsigned, GaussRational> rest;
    for (auto& [e, c] : terms_) {
      mpq_class m = 1;
      unsigned key = 0;
      if (h) for (unsigned k = 0; k < e.eh; ++k) m *= *h;
      else key += e.eh * 65536u;
      if (al) for (unsigned k = 0; k < e.ea; ++k) m *= *al;
      else key += e.ea;
      rest[key] += GaussRational(mpq_class(c.re.mpz()) * m, mpq_class(c.im.mpz()) * m);
    }
    for (auto& [k, v] : rest)
      if (!v.is_zero()) return false;
    return true;
  }
  // B^m * P(h, A/B) for al = A/B; m must be at least max_ea().
  GPoly with_alpha(const mpq_class& al, unsigned m) const {
    const Int A(al.get_num()), B(al.get_den());
    std::vector<Term> ts;
    for (auto& [e, c] : terms_) {
      Int f = 1;
      for (unsigned k = 0; k < e.ea; ++k) f = f * A;
      for (unsigned k = e.ea; k < m; ++k) f = f * B;
      ts.push_back({Exp{e.eh, 0}, c * GaussInt(f)});
    }
    return from_terms(std::move(ts));
  }
  GPoly at_hbar_zero() const {
    GPoly r;
    for (auto& t : terms_)
      if (t.first.eh == 0) r.terms_.push_back(t);
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      const auto& [e, c] = *it;
      std::string mono;
      if (e.eh) mono += e.eh == 1 ? "h" : "h^" + std::to_string(e.eh);
      if (e.ea) mono += (mono.empty() ? "" : "*") + std::string(e.ea == 1 ? "al" : "al^" + std::to_string(e.ea));
      std::string coef = (!c.re.is_zero() && !c.im.is_zero()) ? "(" + c.str() + ")" : c.str();
      if (mono.empty())
        out += coef;
      else if (c.is_one())
        out += mono;
      else if (c == GaussInt(-1))
        out += "-" + mono;
      else
        out += coef + "*" + mono;
    }
    return out;
  }

 private:
  std::vector<Term> terms_;

  static GPoly merge(const GPoly& x, const GPoly& y, bool sub) {
    GPoly r;
    r.terms_.reserve(x.terms_.size() + y.terms_.size());
    size_t i = 0, j = 0;
    while (i < x.terms_.size() || j < y.terms_.size()) {
      if (j == y.terms_.size() || (i < x.terms_.size() && x.terms_[i].first < y.terms_[j].first)) {
        r.terms_.push_back(x.terms_[i++]);
      } else if (i == x.terms_.size() || y.terms_[j].first < x.terms_[i].first) {
        r.terms_.push_back({y.terms_[j].first, sub ? -y.terms_[j].second : y.terms_[j].second});
        ++j;
      } else {
        GaussInt c = sub ? x.terms_[i].second - y.terms_[j].second : x.terms_[i].second + y.terms_[j].second;
        if (!c.is_zero()) r.terms_.push_back({x.terms_[i].first, std::move(c)});
        ++i, ++j;
      }
    }
    return r;
  }
};

// Element (p + q*s)/d of K(s), s^2 = h^2 - 4 al.
class Scalar {
 public:
  Scalar() : d_(1) {}
  Scalar(int c) : p_(c), d_(1) {}  // NOLINT
  Scalar(GaussInt c) : p_(std::move(c)), d_(1) {}  // NOLINT
  Scalar(GPoly p) : p_(std::move(p)), d_(1) {}  // NOLINT
  Scalar(GPoly p, GPoly q, GPoly d) : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) { normalize(); }

  static Scalar hbar() { return Scalar(GPoly::hbar()); }
  static Scalar alpha() { return Scalar(GPoly::alpha()); }
  static Scalar s() { return Scalar(GPoly(), GPoly(1), GPoly(1)); }
  static Scalar I() { return Scalar(GaussInt::I()); }
  static Scalar rational(const Int& num, const Int& den) { return Scalar(GPoly(GaussInt(num)), GPoly(), GPoly(GaussInt(den))); }
  static Scalar rational(const mpq_class& q) { return rational(Int(q.get_num()), Int(q.get_den())); }
  // roots of l^2 - h l + al
  static Scalar lambda1() { return Scalar(GPoly::hbar(), GPoly(-1), GPoly(2)); }
  static Scalar lambda2() { return Scalar(GPoly::hbar(), GPoly(1), GPoly(2)); }

  const GPoly& p() const { return p_; }
  const GPoly& q() const { return q_; }
  const GPoly& d() const { return d_; }

  bool is_zero() const { return p_.is_zero() && q_.is_zero(); }
  bool is_one() const { return q_.is_zero() && p_ == d_; }
  bool has_s() const { return !q_.is_zero(); }
  bool is_polynomial() const { return d_.is_one(); }

  Scalar operator-() const {
    Scalar r = *this;
    r.p_ = -r.p_;
    r.q_ = -r.q_;
    return r;
  }
  // s -> -s
  Scalar conj() const {
    Scalar r = *this;
    r.q_ = -r.q_;
    return r;
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) { return add(x, y, false); }
  friend Scalar operator-(const Scalar& x, const Scalar& y) { return add(x, y, true); }
  Scalar& operator+=(const Scalar& y) { return *this = add(*this, y, false); }
  Scalar& operator-=(const Scalar& y) { return *this = add(*this, y, true); }

  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    if (x.is_zero() || y.is_zero()) return Scalar();
    Scalar r;
    if (!x.has_s() && !y.has_s()) {
      r.p_ = x.p_ * y.p_;
    } else {
      r.p_ = x.p_ * y.p_;
      if (x.has_s() && y.has_s()) r.p_ += GPoly::discriminant() * (x.q_ * y.q_);
      r.q_ = x.p_ * y.q_ + x.q_ * y.p_;
    }
    if (x.is_polynomial()) {
      r.d_ = y.d_;
    } else if (y.is_polynomial()) {
      r.d_ = x.d_;
    } else {
      r.d_ = x.d_ * y.d_;
    }
    if (!(x.is_polynomial() && y.is_polynomial())) r.normalize();
    return r;
  }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero scalar");
    if (!has_s()) return Scalar(d_, GPoly(), p_).simplified();
    // 1/(p+qs) = (p-qs)/(p^2 - q^2 D)
    GPoly den = p_ * p_ - GPoly::discriminant() * (q_ * q_);
    return Scalar(d_ * p_, -(d_ * q_), den).simplified();
  }
  friend Scalar operator/(const Scalar& x, const Scalar& y) {
    if (y.is_zero()) throw DivisionByZero("division by zero scalar");
    return (x * y.inverse()).simplified();
  }
  Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    if (x.d_ == y.d_) return x.p_ == y.p_ && x.q_ == y.q_;
    return x.p_ * y.d_ == y.p_ * x.d_ && x.q_ * y.d_ == y.q_ * x.d_;
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  // Cancels d against p and q when it divides both exactly.
  Scalar simplified() const {
    if (d_.is_constant() || is_zero()) return *this;
    GPoly qp, qq;
    Int sp, sq;
    if (!p_.divide_by(d_, qp, sp) || !q_.divide_by(d_, qq, sq)) return *this;
    // p = qp/sp * d, q = qq/sq * d
    Int L = sp * sq;
    return Scalar(qp.scaled(GaussInt(sq)), qq.scaled(GaussInt(sp)), GPoly(GaussInt(L)));
  }

  // h -> 0 applied to p, q, d. Only meaningful on s-free values whose
  // denominator survives; the classical checks use it that way.
  Scalar at_hbar_zero() const {
    GPoly d0 = d_.at_hbar_zero();
    if (d0.is_zero()) throw DenominatorVanishes("at h=0: " + d_.str());
    return Scalar(p_.at_hbar_zero(), q_.at_hbar_zero(), d0);
  }

  // al -> rational value; s keeps s^2 = h^2 - 4 al with the new value.
  Scalar with_alpha(const mpq_class& al) const {
    const unsigned m = std::max({p_.max_ea(), q_.max_ea(), d_.max_ea()});
    GPoly d = d_.with_alpha(al, m);
    if (d.is_zero()) throw DenominatorVanishes("at al=" + al.get_str() + ": " + d_.str());
    return Scalar(p_.with_alpha(al, m), q_.with_alpha(al, m), std::move(d));
  }

  std::string str() const { return "((" + p_.str() + ") + (" + q_.str() + ")*s) / (" + d_.str() + ")"; }
  // Short form for coefficients inside larger expressions.
  std::string compact_str() const {
    if (!has_s() && is_polynomial()) return p_.terms().size() > 1 ? "(" + p_.str() + ")" : p_.str();
    return "(" + str() + ")";
  }

 private:
  GPoly p_, q_, d_;

  void normalize() {
    if (d_.is_zero()) throw DivisionByZero("zero denominator");
    if (p_.is_zero() && q_.is_zero()) {
      d_ = GPoly(1);
      return;
    }
    if (d_.is_one()) return;
    Int g = d_.content();
    if (!g.is_one()) g = Int::gcd(g, p_.content());
    if (!g.is_one()) g = Int::gcd(g, q_.content());
    if (!g.is_one() && !g.is_zero()) {
      p_ = p_.divexact(g);
      q_ = q_.divexact(g);
      d_ = d_.divexact(g);
    }
    GaussInt u = d_.leading().second.normalizing_unit();
    if (!u.is_one()) {
      p_ = p_.scaled(u);
      q_ = q_.scaled(u);
      d_ = d_.scaled(u);
    }
  }

  // Returns c with y = c*x when the two polys are proportional by a
  // Gaussian-rational constant: then c = lc(y)/lc(x) and lc(x)*y = lc(y)*x.
  static bool proportional(const GPoly& x, const GPoly& y) {
    if (x.terms().size() != y.terms().size()) return false;
    const GaussInt& lx = x.leading().second;
    const GaussInt& ly = y.leading().second;
    for (size_t k = 0; k < x.terms().size(); ++k) {
      if (!(x.terms()[k].first == y.terms()[k].first)) return false;
      if (!(x.terms()[k].second * ly == y.terms()[k].second * lx)) return false;
    }
    return true;
  }

  static Scalar add(const Scalar& x, const Scalar& y, bool sub) {
    if (y.is_zero()) return x;
    if (x.is_zero()) return sub ? -y : y;
    Scalar r;
    if (x.d_ == y.d_) {
      r.p_ = sub ? x.p_ - y.p_ : x.p_ + y.p_;
      r.q_ = sub ? x.q_ - y.q_ : x.q_ + y.q_;
      r.d_ = x.d_;
    } else if (proportional(x.d_, y.d_)) {
      GaussInt lx = x.d_.leading().second, ly = y.d_.leading().second;
      GPoly yp = y.p_.scaled(lx), yq = y.q_.scaled(lx);
      r.p_ = x.p_.scaled(ly);
      r.q_ = x.q_.scaled(ly);
      r.p_ = sub ? r.p_ - yp : r.p_ + yp;
      r.q_ = sub ? r.q_ - yq : r.q_ + yq;
      r.d_ = x.d_.scaled(ly);
    } else {
      GPoly yp = y.p_ * x.d_, yq = y.q_ * x.d_;
      r.p_ = x.p_ * y.d_;
      r.q_ = x.q_ * y.d_;
      r.p_ = sub ? r.p_ - yp : r.p_ + yp;
      r.q_ = sub ? r.q_ - yq : r.q_ + yq;
      r.d_ = x.d_ * y.d_;
    }
    r.normalize();
    return r;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& v) { return os << v.str(); }

// A rational point (h, al) together with a chosen square root s of h^2-4al.
struct Specialization {
  mpq_class hbar, alpha;
  GaussRational s;

  static Specialization make(const mpq_class& h, const mpq_class& al, const GaussRational& s) {
    mpq_class D = h * h - 4 * al;
    if (sgn(D) == 0) throw DegenerateDiscriminant("h^2 - 4 al = 0 at the point");
    if (!(s * s == GaussRational(D))) throw SpecializationMismatch("s^2 != h^2 - 4 al");
    return {h, al, s};
  }

  // Picks s = +sqrt(h^2-4al) (or i*sqrt for negative values); branch -1 flips it.
  static Specialization at(const mpq_class& h, const mpq_class& al, int branch = 1) {
    mpq_class D = h * h - 4 * al;
    if (sgn(D) == 0) throw DegenerateDiscriminant("h^2 - 4 al = 0 at the point");
    mpq_class A = abs(D);
    mpz_class n = A.get_num(), d = A.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
      throw SpecializationMismatch("h^2 - 4 al = " + D.get_str() + " is not a square in Q(i)");
    mpz_class rn = sqrt(n), rd = sqrt(d);
    mpq_class r(rn, rd);
    r.canonicalize();
    if (branch < 0) r = -r;
    return sgn(D) > 0 ? Specialization{h, al, GaussRational(r)} : Specialization{h, al, GaussRational(0, r)};
  }

  // The point forced by the n-dimensional irrep: al = -h^2 (n^2-1)/4, s = n h.
  static Specialization irrep_point(int n, const mpq_class& h = 1, int branch = 1) {
    mpq_class al = -h * h * (n * n - 1) / 4;
    return make(h, al, GaussRational(mpq_class(branch * n) * h));
  }
};

inline GaussRational specialize(const GPoly& p, const Specialization& sp) { return p.eval(sp.hbar, sp.alpha); }

inline GaussRational specialize(const Scalar& x, const Specialization& sp) {
  GaussRational d = specialize(x.d(), sp);
  if (d.is_zero()) throw DenominatorVanishes(x.d().str());
  return (specialize(x.p(), sp) + specialize(x.q(), sp) * sp.s) / d;
}

}  // namespace ncsphere
