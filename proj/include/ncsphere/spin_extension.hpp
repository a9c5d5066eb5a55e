#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "linalg.hpp"
#include "ncmatrix.hpp"

namespace ncsphere {

inline constexpr int kDefaultSpinCap = 5;

inline long long binomial(int n, int r) {
  long long b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

// Basis v_{k1,k2} of the symmetric component: the sum of all distinct
// arrangements of k1 copies of v1 and k2 copies of v2, ordered by descending k1.
struct SymBasis {
  int k = 0;
  std::vector<std::vector<int>> vectors;  // (k+1) vectors of length 2^k
  std::vector<size_t> representative;     // one tensor index in each support

  static SymBasis make(int k) {
    SymBasis B;
    B.k = k;
    const size_t N = size_t(1) << k;
    for (int k2 = 0; k2 <= k; ++k2) {
      std::vector<int> v(N, 0);
      for (size_t idx = 0; idx < N; ++idx)
        if (__builtin_popcountll(idx) == k2) v[idx] = 1;
      B.vectors.push_back(std::move(v));
      B.representative.push_back((size_t(1) << k2) - 1);
    }
    return B;
  }
  size_t dim() const { return vectors.size(); }
  int k2_of(size_t r) const { return int(r); }
  int k1_of(size_t r) const { return k - int(r); }
};

struct ExtensionMatrix {
  int k = 0;
  NCMatrix matrix;
  SymBasis basis;
};

// Entry (row, col) of id^{(x)(i-1)} (x) L (x) id^{(x)(k-i)}.
inline NCElement slot_entry(const NCMatrix& L, int k, int slot, size_t row, size_t col) {
  const int sh = k - slot;  // bit position of the slot (slot is 1-based)
  const size_t mask = size_t(1) << sh;
  if ((row & ~mask) != (col & ~mask)) return NCElement(L.ctx());
  return L((row >> sh) & 1, (col >> sh) & 1);
}

inline NCMatrix slot_matrix(const NCMatrix& L, int k, int slot) {
  const size_t N = size_t(1) << k;
  NCMatrix M(L.ctx(), N, N);
  for (size_t r = 0; r < N; ++r)
    for (size_t c = 0; c < N; ++c) M(r, c) = slot_entry(L, k, slot, r, c);
  return M;
}

// Delta^{k-1}(L) = sum of L placed in each tensor slot.
inline NCMatrix coproduct_matrix(const NCMatrix& L, int k) {
  if (k < 1) throw IndexOutOfRange("coproduct k < 1");
  NCMatrix M = slot_matrix(L, k, 1);
  for (int s = 2; s <= k; ++s) M += slot_matrix(L, k, s);
  return M;
}

// Permutation matrix of a permutation of tensor factors: factor j of the
// input lands in factor perm[j] of the output (0-based).
inline NCMatrix permutation_matrix(const Ctx& ctx, const std::vector<int>& perm) {
  const int k = int(perm.size());
  const size_t N = size_t(1) << k;
  NCMatrix P(ctx, N, N);
  for (size_t col = 0; col < N; ++col) {
    size_t row = 0;
    for (int j = 0; j < k; ++j)
      if ((col >> (k - 1 - j)) & 1) row |= size_t(1) << (k - 1 - perm[j]);
    P(row, col) = NCElement::one(ctx);
  }
  return P;
}

// S^(k) = (1/k!) sum over all factor permutations.
inline NCMatrix symmetrizer(const Ctx& ctx, int k) {
  const size_t N = size_t(1) << k;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<long long>> cnt(N, std::vector<long long>(N, 0));
  long long fact = 0;
  do {
    ++fact;
    for (size_t col = 0; col < N; ++col) {
      size_t row = 0;
      for (int j = 0; j < k; ++j)
        if ((col >> (k - 1 - j)) & 1) row |= size_t(1) << (k - 1 - perm[j]);
      ++cnt[row][col];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  NCMatrix S(ctx, N, N);
  for (size_t r = 0; r < N; ++r)
    for (size_t c = 0; c < N; ++c)
      if (cnt[r][c]) S(r, c) = NCElement(ctx, Scalar::rational(Int(cnt[r][c]), Int(fact)));
  return S;
}

// Restricts an operator M on V^{(x)k} that preserves the symmetric component
// to the SymBasis: column c is M v_c read off at the representatives.
inline NCMatrix restrict_to_sym(const NCMatrix& M, const SymBasis& B) {
  const size_t n = B.dim(), N = B.vectors[0].size();
  NCMatrix R(M.ctx(), n, n);
  for (size_t c = 0; c < n; ++c)
    for (size_t r = 0; r < n; ++r) {
      NCElement acc(M.ctx());
      for (size_t j = 0; j < N; ++j)
        if (B.vectors[c][j]) acc += M(B.representative[r], j);
      R(r, c) = acc;
    }
  return R;
}

// L_(k) = k S L1 S restricted to the symmetric component. Since S v_c = v_c
// and S averages over each orbit, entry (r,c) is k/C(k,k2_r) times the sum of
// (L1 v_c) over the support of v_r.
inline ExtensionMatrix extension_matrix(const Ctx& ctx, int k, int cap = kDefaultSpinCap) {
  if (k < 1) throw IndexOutOfRange("extension_matrix k < 1");
  if (k > cap) throw DegreeCapExceeded("k = " + std::to_string(k) + " above cap " + std::to_string(cap));
  const NCMatrix L = NCMatrix::fundamental(ctx);
  ExtensionMatrix E;
  E.k = k;
  E.basis = SymBasis::make(k);
  const size_t n = E.basis.dim(), N = size_t(1) << k;
  E.matrix = NCMatrix(ctx, n, n);
  for (size_t c = 0; c < n; ++c) {
    // (L1 v_c)[row] = sum_j L1(row, j) v_c[j]
    std::vector<NCElement> img(N, NCElement(ctx));
    for (size_t j = 0; j < N; ++j) {
      if (!E.basis.vectors[c][j]) continue;
      for (size_t row = 0; row < N; ++row) {
        NCElement e = slot_entry(L, k, 1, row, j);
        if (!e.is_zero()) img[row] += e;
      }
    }
    for (size_t r = 0; r < n; ++r) {
      NCElement acc(ctx);
      for (size_t row = 0; row < N; ++row)
        if (E.basis.vectors[r][row]) acc += img[row];
      E.matrix(r, c) = Scalar::rational(Int(k), Int(binomial(k, int(r)))) * acc;
    }
  }
  return E;
}

// The same matrix through the full 2^k x 2^k product k S L1 S.
inline NCMatrix extension_matrix_full(const Ctx& ctx, int k) {
  const NCMatrix S = symmetrizer(ctx, k);
  const NCMatrix L1 = slot_matrix(NCMatrix::fundamental(ctx), k, 1);
  return restrict_to_sym(Scalar(k) * (S * L1 * S), SymBasis::make(k));
}

inline const std::vector<std::vector<Scalar>>& compact_transition() {
  static const std::vector<std::vector<Scalar>> P = [] {
    const Scalar h2 = Scalar::rational(1, 2), ih2 = Scalar::I() * h2;
    return std::vector<std::vector<Scalar>>{{0, 1, 0}, {h2, 0, -h2}, {-ih2, 0, -ih2}};
  }();
  return P;
}

// P L_(2) P^{-1} with entries rewritten in the compact generators.
inline NCMatrix conjugate_to_compact(const NCMatrix& L2, const Ctx& compact) {
  if (L2.rows() != 3 || L2.cols() != 3) throw ShapeMismatch("conjugate_to_compact needs L_(2)");
  const KMatrix P = KMatrix::from_rows(compact_transition());
  const KMatrix Pinv = inverse(P);
  auto lift = [&](const KMatrix& m) {
    std::vector<std::vector<Scalar>> v(3, std::vector<Scalar>(3));
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = 0; j < 3; ++j) v[i][j] = m(i, j);
    return NCMatrix::from_scalars(L2.ctx(), v);
  };
  const NCMatrix M = lift(P) * L2 * lift(Pinv);
  NCMatrix out(compact, 3, 3);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) out(i, j) = change_basis(M(i, j), compact);
  return out;
}

}  // namespace ncsphere
