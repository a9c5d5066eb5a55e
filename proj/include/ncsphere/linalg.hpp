#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalars.hpp"

namespace ncsphere {

// Dense matrix over K.
class KMatrix {
 public:
  KMatrix() = default;
  KMatrix(size_t r, size_t c) : rows_(r), cols_(c), a_(r * c) {}
  static KMatrix identity(size_t n) {
    KMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }
  static KMatrix from_rows(const std::vector<std::vector<Scalar>>& v) {
    KMatrix m(v.size(), v.empty() ? 0 : v[0].size());
    for (size_t i = 0; i < m.rows_; ++i)
      for (size_t j = 0; j < m.cols_; ++j) m(i, j) = v[i][j];
    return m;
  }
  static KMatrix from_columns(const std::vector<std::vector<Scalar>>& cols, size_t rows) {
    KMatrix m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
      for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Scalar& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }
  std::vector<Scalar> column(size_t j) const {
    std::vector<Scalar> v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    for (auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend KMatrix operator*(const KMatrix& x, const KMatrix& y) {
    if (x.cols_ != y.rows_) throw ShapeMismatch("KMatrix product");
    KMatrix r(x.rows_, y.cols_);
    for (size_t i = 0; i < x.rows_; ++i)
      for (size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k).is_zero()) continue;
        for (size_t j = 0; j < y.cols_; ++j)
          if (!y(k, j).is_zero()) r(i, j) += x(i, k) * y(k, j);
      }
    for (auto& e : r.a_) e = e.simplified();
    return r;
  }
  friend std::vector<Scalar> operator*(const KMatrix& x, const std::vector<Scalar>& v) {
    if (x.cols_ != v.size()) throw ShapeMismatch("KMatrix * vector");
    std::vector<Scalar> r(x.rows_);
    for (size_t i = 0; i < x.rows_; ++i) {
      for (size_t k = 0; k < x.cols_; ++k)
        if (!x(i, k).is_zero() && !v[k].is_zero()) r[i] += x(i, k) * v[k];
      r[i] = r[i].simplified();
    }
    return r;
  }
  friend KMatrix operator+(const KMatrix& x, const KMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw ShapeMismatch("KMatrix sum");
    KMatrix r = x;
    for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += y.a_[k];
    return r;
  }
  friend KMatrix operator-(const KMatrix& x, const KMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw ShapeMismatch("KMatrix difference");
    KMatrix r = x;
    for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= y.a_[k];
    return r;
  }
  friend KMatrix operator*(const Scalar& c, const KMatrix& x) {
    KMatrix r = x;
    for (auto& e : r.a_) e = c * e;
    return r;
  }
  friend bool operator==(const KMatrix& x, const KMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
    for (size_t k = 0; k < x.a_.size(); ++k)
      if (x.a_[k] != y.a_[k]) return false;
    return true;
  }

  template <class F>
  KMatrix map(F&& f) const {
    KMatrix r = *this;
    for (auto& e : r.a_) e = f(e);
    return r;
  }

  KMatrix block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    KMatrix m(nr, nc);
    for (size_t i = 0; i < nr; ++i)
      for (size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

// Reduced row echelon form over K, in place; returns pivot columns.
inline std::vector<size_t> rref(KMatrix& m) {
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Scalar inv = m(r, c).inverse();
    for (size_t j = c; j < m.cols(); ++j)
      if (!m(r, j).is_zero()) m(r, j) = (m(r, j) * inv).simplified();
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c);
      for (size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) = (m(i, j) - f * m(r, j)).simplified();
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline size_t rank(KMatrix m) { return rref(m).size(); }

// Basis of the right kernel {v : m v = 0}.
inline std::vector<std::vector<Scalar>> nullspace(KMatrix m) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<Scalar>> out;
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<Scalar> v(m.cols());
    v[f] = Scalar(1);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
    out.push_back(std::move(v));
  }
  return out;
}

inline KMatrix inverse(const KMatrix& m) {
  if (m.rows() != m.cols()) throw NotSquare("inverse");
  const size_t n = m.rows();
  KMatrix aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar(1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw DivisionByZero("singular matrix");
  return aug.block(0, n, n, n);
}

// Solves the square system A x = b by fraction-free (Bareiss) elimination
// followed by back substitution. Returns nullopt if A is singular.
inline std::optional<std::vector<Scalar>> bareiss_solve(std::vector<std::vector<Scalar>> A, std::vector<Scalar> b) {
  const size_t n = A.size();
  for (size_t i = 0; i < n; ++i) A[i].push_back(b[i]);
  Scalar prev(1);
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && A[p][k].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(A[p], A[k]);
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j <= n; ++j)
        A[i][j] = ((A[k][k] * A[i][j] - A[i][k] * A[k][j]) / prev).simplified();
      A[i][k] = Scalar();
    }
    prev = A[k][k];
  }
  std::vector<Scalar> x(n);
  for (size_t i = n; i-- > 0;) {
    Scalar acc = A[i][n];
    for (size_t j = i + 1; j < n; ++j) acc -= A[i][j] * x[j];
    x[i] = (acc / A[i][i]).simplified();
  }
  return x;
}

// Dense matrix over Q(i) for irrep evaluation.
class QiMatrix {
 public:
  QiMatrix() = default;
  QiMatrix(size_t r, size_t c) : rows_(r), cols_(c), a_(r * c) {}
  static QiMatrix identity(size_t n) {
    QiMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = GaussRational(1);
    return m;
  }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  GaussRational& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const GaussRational& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  friend QiMatrix operator*(const QiMatrix& x, const QiMatrix& y) {
    if (x.cols_ != y.rows_) throw ShapeMismatch("QiMatrix product");
    QiMatrix r(x.rows_, y.cols_);
    for (size_t i = 0; i < x.rows_; ++i)
      for (size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k).is_zero()) continue;
        for (size_t j = 0; j < y.cols_; ++j)
          if (!y(k, j).is_zero()) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend QiMatrix operator+(const QiMatrix& x, const QiMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw ShapeMismatch("QiMatrix sum");
    QiMatrix r = x;
    for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += y.a_[k];
    return r;
  }
  friend QiMatrix operator-(const QiMatrix& x, const QiMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw ShapeMismatch("QiMatrix difference");
    QiMatrix r = x;
    for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= y.a_[k];
    return r;
  }
  friend QiMatrix operator*(const GaussRational& c, const QiMatrix& x) {
    QiMatrix r = x;
    for (auto& e : r.a_) e = c * e;
    return r;
  }
  friend bool operator==(const QiMatrix& x, const QiMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  bool is_zero() const {
    for (auto& e : a_)
      if (!e.is_zero()) return false;
    return true;
  }
  GaussRational trace() const {
    GaussRational t;
    for (size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<GaussRational> a_;
};

}  // namespace ncsphere
