#pragma once

// Exact LLL over the integers. Rows are basis vectors and every elementary
// row operation is mirrored on U, so reduced = U * input with |det U| = 1.

#include <utility>

#include "paralat/gram_schmidt.hpp"

namespace paralat {

enum class LllPath {
  Incremental,  // swap updates of mu and B in place
  Recompute,    // full Gram-Schmidt after every change
};

struct LllResult {
  IntMatrix basis;
  IntMatrix U;
  std::size_t swaps = 0;
};

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix I(n, IntVec(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline void check_delta(const Rat& delta) {
  if (delta <= Rat(1, 4) || delta >= 1) throw InvalidDelta("delta must lie strictly between 1/4 and 1, got " + to_string(delta));
}

namespace detail {

inline void row_submul(IntVec& a, const IntVec& b, const Int& q) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= q * b[i];
}

struct LllState {
  IntMatrix b, U;
  std::vector<RatVec> mu;
  RatVec B;

  void recompute() {
    GramSchmidt<Rat> gs = gram_schmidt(to_rat(b));
    mu = gs.mu;
    B = gs.norms;
  }

  // b_k -= q b_l with the induced update of row k of mu.
  void reduce(std::size_t k, std::size_t l, LllPath path) {
    Int q = nearest_rat(mu[k][l]);
    if (q == 0) return;
    row_submul(b[k], b[l], q);
    row_submul(U[k], U[l], q);
    if (path == LllPath::Recompute) {
      recompute();
      return;
    }
    for (std::size_t j = 0; j < l; ++j) mu[k][j] -= Rat(q) * mu[l][j];
    mu[k][l] -= q;
  }

  void swap(std::size_t k, LllPath path) {
    std::swap(b[k], b[k - 1]);
    std::swap(U[k], U[k - 1]);
    if (path == LllPath::Recompute) {
      recompute();
      return;
    }
    const std::size_t n = b.size();
    const Rat m = mu[k][k - 1];
    const Rat Bn = B[k] + m * m * B[k - 1];
    mu[k][k - 1] = m * B[k - 1] / Bn;
    B[k] = B[k - 1] * B[k] / Bn;
    B[k - 1] = Bn;
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
    for (std::size_t i = k + 1; i < n; ++i) {
      Rat t = mu[i][k];
      mu[i][k] = mu[i][k - 1] - m * t;
      mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
    }
  }
};

}  // namespace detail

/// LLL with factor delta in (1/4, 1). Throws DependentInput on dependent rows.
inline LllResult lll_reduce(const IntMatrix& basis, const Rat& delta = Rat(3, 4), LllPath path = LllPath::Incremental) {
  check_delta(delta);
  detail::LllState st;
  st.b = basis;
  st.U = identity_matrix(basis.size());
  st.recompute();
  LllResult out;
  const std::size_t n = basis.size();
  std::size_t k = 1;
  while (k < n) {
    if (abs(st.mu[k][k - 1]) > Rat(1, 2)) st.reduce(k, k - 1, path);
    const Rat m = st.mu[k][k - 1];
    if (st.B[k] < (delta - m * m) * st.B[k - 1]) {
      st.swap(k, path);
      ++out.swaps;
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;)
        if (abs(st.mu[k][l]) > Rat(1, 2)) st.reduce(k, l, path);
      ++k;
    }
  }
  out.basis = std::move(st.b);
  out.U = std::move(st.U);
  return out;
}

inline bool is_size_reduced(const GramSchmidt<Rat>& gs) {
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs(gs.mu[i][j]) > Rat(1, 2)) return false;
  return true;
}

inline bool satisfies_lovasz(const GramSchmidt<Rat>& gs, const Rat& delta) {
  for (std::size_t i = 1; i < gs.size(); ++i) {
    const Rat& m = gs.mu[i][i - 1];
    if (gs.norms[i] < (delta - m * m) * gs.norms[i - 1]) return false;
  }
  return true;
}

inline bool is_lll_reduced(const IntMatrix& basis, const Rat& delta) {
  GramSchmidt<Rat> gs = gram_schmidt(to_rat(basis));
  return is_size_reduced(gs) && satisfies_lovasz(gs, delta);
}

inline IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B) {
  IntMatrix C(A.size(), IntVec(B.empty() ? 0 : B[0].size(), Int(0)));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t k = 0; k < B.size(); ++k) {
      if (A[i][k] == 0) continue;
      for (std::size_t j = 0; j < C[i].size(); ++j) C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

/// Exact determinant by fraction-free Gaussian elimination (Bareiss).
inline Int determinant(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return Int(1);
  Int prev(1);
  int s = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return Int(0);
      std::swap(a[p], a[k]);
      s = -s;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return s * a[n - 1][n - 1];
}

/// Gram determinant det(B B^T) = det(Lambda)^2.
inline Int gram_determinant(const IntMatrix& b) {
  IntMatrix g(b.size(), IntVec(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      Int acc(0);
      for (std::size_t k = 0; k < b[i].size(); ++k) acc += b[i][k] * b[j][k];
      g[i][j] = acc;
    }
  return determinant(g);
}

inline Int norm2(const IntVec& v) {
  Int acc(0);
  for (const Int& x : v) acc += x * x;
  return acc;
}

}  // namespace paralat
