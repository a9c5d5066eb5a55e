#pragma once

#include <string>
#include <vector>

#include "pbw_algebra.hpp"

namespace ncsphere {

// Dense matrix of NCElements over one context. Column j holds the image of
// the j-th basis vector (right-action convention).
class NCMatrix {
 public:
  NCMatrix() = default;
  NCMatrix(Ctx ctx, size_t rows, size_t cols)
      : ctx_(std::move(ctx)), rows_(rows), cols_(cols), a_(rows * cols, NCElement(ctx_)) {}

  static NCMatrix identity(const Ctx& ctx, size_t n) {
    NCMatrix m(ctx, n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = NCElement::one(ctx);
    return m;
  }
  static NCMatrix from_scalars(const Ctx& ctx, const std::vector<std::vector<Scalar>>& v) {
    NCMatrix m(ctx, v.size(), v.empty() ? 0 : v[0].size());
    for (size_t i = 0; i < m.rows_; ++i)
      for (size_t j = 0; j < m.cols_; ++j) m(i, j) = NCElement(ctx, v[i][j]);
    return m;
  }
  static NCMatrix from_elements(const Ctx& ctx, const std::vector<std::vector<NCElement>>& v) {
    NCMatrix m(ctx, v.size(), v.empty() ? 0 : v[0].size());
    for (size_t i = 0; i < m.rows_; ++i) {
      if (v[i].size() != m.cols_) throw ShapeMismatch("ragged rows");
      for (size_t j = 0; j < m.cols_; ++j) m(i, j) = v[i][j];
    }
    return m;
  }
  // L = [[a, b], [c, d]] (d = -a without a d generator)
  static NCMatrix fundamental(const Ctx& ctx) {
    NCElement a, b, c, d;
    if (ctx->presentation() == Presentation::su2h) {
      // a = i x, b = z - i y, c = -z - i y
      const Scalar I = Scalar::I();
      a = I * gen(ctx, "x");
      b = gen(ctx, "z") - I * gen(ctx, "y");
      c = -gen(ctx, "z") - I * gen(ctx, "y");
      d = -a;
    } else {
      a = gen(ctx, "a");
      b = gen(ctx, "b");
      c = gen(ctx, "c");
      d = ctx->presentation() == Presentation::gl2h ? gen(ctx, "d") : -a;
    }
    return from_elements(ctx, {{a, b}, {c, d}});
  }

  const Ctx& ctx() const { return ctx_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  NCElement& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const NCElement& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }
  const NCElement& at(size_t i, size_t j) const {
    if (i >= rows_ || j >= cols_) throw IndexOutOfRange("matrix index");
    return (*this)(i, j);
  }

  bool is_zero() const {
    for (auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend NCMatrix operator+(const NCMatrix& x, const NCMatrix& y) {
    x.check_same(y);
    NCMatrix r = x;
    for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += y.a_[k];
    return r;
  }
  friend NCMatrix operator-(const NCMatrix& x, const NCMatrix& y) {
    x.check_same(y);
    NCMatrix r = x;
    for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= y.a_[k];
    return r;
  }
  NCMatrix operator-() const {
    NCMatrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }
  friend NCMatrix operator*(const NCMatrix& x, const NCMatrix& y) {
    if (x.cols_ != y.rows_) throw ShapeMismatch(x.shape() + " * " + y.shape());
    x.check_ctx(y);
    NCMatrix r(x.ctx_, x.rows_, y.cols_);
    for (size_t i = 0; i < x.rows_; ++i)
      for (size_t k = 0; k < x.cols_; ++k) {
        const NCElement& xik = x(i, k);
        if (xik.is_zero()) continue;
        for (size_t j = 0; j < y.cols_; ++j) {
          const NCElement& ykj = y(k, j);
          if (!ykj.is_zero()) r(i, j) += xik * ykj;
        }
      }
    return r;
  }
  friend NCMatrix operator*(const Scalar& c, const NCMatrix& x) {
    NCMatrix r = x;
    for (auto& e : r.a_) e = c * e;
    return r;
  }
  // entrywise left multiplication by an algebra element
  friend NCMatrix operator*(const NCElement& f, const NCMatrix& x) {
    NCMatrix r = x;
    for (auto& e : r.a_) e = f * e;
    return r;
  }
  friend NCMatrix operator*(const NCMatrix& x, const NCElement& f) {
    NCMatrix r = x;
    for (auto& e : r.a_) e = e * f;
    return r;
  }
  NCMatrix& operator+=(const NCMatrix& y) { return *this = *this + y; }
  NCMatrix& operator-=(const NCMatrix& y) { return *this = *this - y; }

  template <class F>
  NCMatrix map(F&& f) const {
    NCMatrix r = *this;
    for (auto& e : r.a_) e = f(e);
    return r;
  }

  friend bool operator==(const NCMatrix& x, const NCMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
    for (size_t k = 0; k < x.a_.size(); ++k)
      if (x.a_[k] != y.a_[k]) return false;
    return true;
  }
  friend bool operator!=(const NCMatrix& x, const NCMatrix& y) { return !(x == y); }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::string str() const {
    std::string s = "[";
    for (size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
      s += "]";
    }
    return s + "]";
  }

 private:
  Ctx ctx_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<NCElement> a_;

  void check_ctx(const NCMatrix& y) const {
    if (ctx_ != y.ctx_ && !ctx_->compatible(*y.ctx_)) throw ContextMismatch(ctx_->name() + " vs " + y.ctx_->name());
  }
  void check_same(const NCMatrix& y) const {
    if (rows_ != y.rows_ || cols_ != y.cols_) throw ShapeMismatch(shape() + " vs " + y.shape());
    check_ctx(y);
  }
};

inline NCElement mat_trace(const NCMatrix& A) {
  if (!A.square()) throw NotSquare(A.shape());
  NCElement t(A.ctx());
  for (size_t i = 0; i < A.rows(); ++i) t += A(i, i);
  return t;
}

// sum coeffs[i] A^i by Horner's rule
inline NCMatrix eval_matrix_poly(const NCMatrix& A, const std::vector<Scalar>& coeffs) {
  if (!A.square()) throw NotSquare(A.shape());
  const size_t n = A.rows();
  NCMatrix acc(A.ctx(), n, n);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * A;
    for (size_t i = 0; i < n; ++i) acc(i, i) += NCElement(A.ctx(), *it);
  }
  return acc;
}

// Sum of precomputed powers: coeffs[i] * powers[i].
inline NCMatrix combine_powers(const std::vector<NCMatrix>& powers, const std::vector<Scalar>& coeffs) {
  NCMatrix acc(powers.at(0).ctx(), powers[0].rows(), powers[0].cols());
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) acc += coeffs[i] * powers.at(i);
  return acc;
}

// Index of the tensor basis vector v_{s1} (x) ... (x) v_{sk}, s in {0,1},
// first factor most significant.
inline size_t tensor_index(const std::vector<int>& s) {
  size_t idx = 0;
  for (int x : s) idx = idx * 2 + size_t(x);
  return idx;
}

// Permutation matrix of the transposition of factors i and i+1 (1-based) on V^{(x)k}.
inline NCMatrix flip_and_perms(const Ctx& ctx, int k, int i) {
  if (k < 2 || i < 1 || i >= k) throw IndexOutOfRange("flip P^{" + std::to_string(i) + "," + std::to_string(i + 1) + "} on k=" + std::to_string(k));
  const size_t N = size_t(1) << k;
  NCMatrix P(ctx, N, N);
  for (size_t col = 0; col < N; ++col) {
    const int sh = k - i - 1;  // bit of factor i+1; factor i sits one bit higher
    size_t b1 = (col >> (sh + 1)) & 1, b2 = (col >> sh) & 1;
    size_t row = col & ~((size_t(1) << sh) | (size_t(1) << (sh + 1)));
    row |= (b2 << (sh + 1)) | (b1 << sh);
    P(row, col) = NCElement::one(ctx);
  }
  return P;
}

}  // namespace ncsphere
