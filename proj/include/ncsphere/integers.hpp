#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "error.hpp"

namespace ncsphere {

// Arbitrary-precision integer with an int64 fast path. Almost every
// coefficient in this library is tiny, so the mpz fallback is rare.
class Int {
 public:
  Int() = default;
  Int(long long v) : small_(static_cast<int64_t>(v)) {}  // NOLINT
  Int(long v) : small_(v) {}                             // NOLINT
  Int(int v) : small_(v) {}                              // NOLINT
  explicit Int(const mpz_class& z) { assign(z); }

  Int(const Int& o) : small_(o.small_) {
    if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
  }
  Int(Int&&) noexcept = default;
  Int& operator=(const Int& o) {
    if (this != &o) {
      small_ = o.small_;
      big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Int& operator=(Int&&) noexcept = default;

  static Int parse(const std::string& s) {
    mpz_class z;
    if (s.empty() || z.set_str(s, 10) != 0) throw ParseError("bad integer '" + s + "'");
    return Int(z);
  }

  bool is_zero() const { return !big_ && small_ == 0; }
  bool is_one() const { return !big_ && small_ == 1; }
  int sign() const {
    if (big_) return sgn(*big_);
    return (small_ > 0) - (small_ < 0);
  }
  bool fits_small() const { return !big_; }
  int64_t small() const { return small_; }

  mpz_class mpz() const { return big_ ? *big_ : mpz_class(static_cast<long>(small_)); }

  std::string str() const { return big_ ? big_->get_str() : std::to_string(small_); }

  Int operator-() const {
    int64_t r;
    if (!big_ && !__builtin_sub_overflow(int64_t{0}, small_, &r)) return Int(static_cast<long long>(r));
    return Int(mpz_class(-mpz()));
  }

  friend Int operator+(const Int& a, const Int& b) {
    int64_t r;
    if (!a.big_ && !b.big_ && !__builtin_add_overflow(a.small_, b.small_, &r))
      return Int(static_cast<long long>(r));
    return Int(mpz_class(a.mpz() + b.mpz()));
  }
  friend Int operator-(const Int& a, const Int& b) {
    int64_t r;
    if (!a.big_ && !b.big_ && !__builtin_sub_overflow(a.small_, b.small_, &r))
      return Int(static_cast<long long>(r));
    return Int(mpz_class(a.mpz() - b.mpz()));
  }
  friend Int operator*(const Int& a, const Int& b) {
    int64_t r;
    if (!a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &r))
      return Int(static_cast<long long>(r));
    return Int(mpz_class(a.mpz() * b.mpz()));
  }
  Int& operator+=(const Int& b) {
    int64_t r;
    if (!big_ && !b.big_ && !__builtin_add_overflow(small_, b.small_, &r)) {
      small_ = r;
      return *this;
    }
    return *this = *this + b;
  }
  Int& operator-=(const Int& b) {
    int64_t r;
    if (!big_ && !b.big_ && !__builtin_sub_overflow(small_, b.small_, &r)) {
      small_ = r;
      return *this;
    }
    return *this = *this - b;
  }
  Int& operator*=(const Int& b) { return *this = *this * b; }

  // this += a*b
  void add_mul(const Int& a, const Int& b) {
    int64_t p, r;
    if (!big_ && !a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &p) &&
        !__builtin_add_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
    mpz_class z = mpz();
    mpz_addmul(z.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    assign(z);
  }

  // Exact division; the caller guarantees b | a.
  static Int divexact(const Int& a, const Int& b) {
    if (b.is_zero()) throw DivisionByZero("integer division by zero");
    if (!a.big_ && !b.big_ && !(a.small_ == INT64_MIN && b.small_ == -1))
      return Int(static_cast<long long>(a.small_ / b.small_));
    mpz_class z;
    mpz_divexact(z.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    return Int(z);
  }
  static bool divides(const Int& b, const Int& a) {
    if (b.is_zero()) return a.is_zero();
    if (!a.big_ && !b.big_ && b.small_ != -1) return a.small_ % b.small_ == 0;
    return mpz_divisible_p(a.mpz().get_mpz_t(), b.mpz().get_mpz_t()) != 0;
  }
  // Non-negative gcd.
  static Int gcd(const Int& a, const Int& b) {
    if (!a.big_ && !b.big_ && a.small_ != INT64_MIN && b.small_ != INT64_MIN)
      return Int(static_cast<long long>(std::gcd(a.small_, b.small_)));
    mpz_class z;
    mpz_gcd(z.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    return Int(z);
  }

  friend bool operator==(const Int& a, const Int& b) {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    return a.mpz() == b.mpz();
  }
  friend bool operator<(const Int& a, const Int& b) {
    if (!a.big_ && !b.big_) return a.small_ < b.small_;
    return a.mpz() < b.mpz();
  }

 private:
  int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;

  void assign(const mpz_class& z) {
    if (z.fits_slong_p()) {
      small_ = z.get_si();
      big_.reset();
    } else {
      small_ = 0;
      big_ = std::make_unique<mpz_class>(z);
    }
  }
};

inline std::ostream& operator<<(std::ostream& os, const Int& v) { return os << v.str(); }

struct GaussInt {
  Int re, im;

  GaussInt() = default;
  GaussInt(Int r, Int i = Int()) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
  GaussInt(int r) : re(r) {}                                                // NOLINT

  static GaussInt I() { return {0, 1}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_one() const { return re.is_one() && im.is_zero(); }
  GaussInt conj() const { return {re, -im}; }
  Int norm() const { return re * re + im * im; }
  GaussInt times_i() const { return {-im, re}; }

  GaussInt operator-() const { return {-re, -im}; }
  friend GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    if (a.im.is_zero() && b.im.is_zero()) return {a.re * b.re, Int()};
    Int r = a.re * b.re;
    r -= a.im * b.im;
    Int i = a.re * b.im;
    i.add_mul(a.im, b.re);
    return {std::move(r), std::move(i)};
  }
  GaussInt& operator+=(const GaussInt& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  GaussInt& operator-=(const GaussInt& b) {
    re -= b.re;
    im -= b.im;
    return *this;
  }
  // this += a*b
  void add_mul(const GaussInt& a, const GaussInt& b) {
    re.add_mul(a.re, b.re);
    if (!a.im.is_zero() || !b.im.is_zero()) {
      re.add_mul(-a.im, b.im);
      im.add_mul(a.re, b.im);
      im.add_mul(a.im, b.re);
    }
  }
  friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }

  // Unit u with u*this in the quadrant re>0, im>=0.
  GaussInt normalizing_unit() const {
    GaussInt u = 1, v = *this;
    for (int k = 0; k < 4; ++k) {
      if (v.re.sign() > 0 && v.im.sign() >= 0) return u;
      u = u.times_i();
      v = v.times_i();
    }
    throw DivisionByZero("zero has no normalizing unit");
  }

  std::string str() const {
    if (im.is_zero()) return re.str();
    if (re.is_zero()) return (im.is_one() ? std::string() : (im == Int(-1) ? std::string("-") : im.str() + "*")) + "I";
    return re.str() + (im.sign() > 0 ? "+" : "") + im.str() + "*I";
  }
};

// Exact element of Q(i), used for specialized values and irrep matrices.
struct GaussRational {
  mpq_class re, im;

  GaussRational() = default;
  GaussRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
  GaussRational(long r) : re(r) {}                                                       // NOLINT
  GaussRational(int r) : re(r) {}                                                        // NOLINT
  GaussRational(const GaussInt& g) : re(g.re.mpz()), im(g.im.mpz()) {}                    // NOLINT

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  GaussRational conj() const { return {re, -im}; }

  GaussRational operator-() const { return {-re, -im}; }
  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    mpq_class n = b.re * b.re + b.im * b.im;
    if (sgn(n) == 0) throw DivisionByZero("Gaussian rational division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  GaussRational& operator+=(const GaussRational& b) { return *this = *this + b; }
  GaussRational& operator-=(const GaussRational& b) { return *this = *this - b; }
  GaussRational& operator*=(const GaussRational& b) { return *this = *this * b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }

  bool is_integer() const { return sgn(im) == 0 && re.get_den() == 1; }

  std::string str() const {
    if (sgn(im) == 0) return re.get_str();
    if (sgn(re) == 0) return im.get_str() + "*I";
    return re.get_str() + (sgn(im) > 0 ? "+" : "") + im.get_str() + "*I";
  }
};

inline std::ostream& operator<<(std::ostream& os, const GaussRational& v) { return os << v.str(); }

// "P/Q" or "P" -> rational.
inline mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  std::string t = s;
  if (t.empty() || q.set_str(t, 10) != 0) throw ParseError("bad rational '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace ncsphere
