#pragma once

// Gram-Schmidt orthogonalization without normalization, generic over an
// ordered field F (Rat, or RatFunc for the parametric case).

#include <cstddef>
#include <vector>

#include "paralat/ratfunc.hpp"

namespace paralat {

inline bool field_is_zero(const Rat& x) { return x == 0; }
inline bool field_is_zero(const RatFunc& x) { return x.is_zero(); }

template <class F>
F inner(const std::vector<F>& a, const std::vector<F>& b) {
  F acc(0);
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (field_is_zero(a[i]) || field_is_zero(b[i])) continue;
    acc += a[i] * b[i];
  }
  return acc;
}

template <class F>
struct GramSchmidt {
  std::vector<std::vector<F>> bstar;  // orthogonal vectors
  std::vector<std::vector<F>> mu;     // mu[i][j] for j < i; mu[i][i] = 1
  std::vector<F> norms;               // squared norms of bstar

  std::size_t size() const { return bstar.size(); }
};

/// Orthogonalizes `v` in order. Throws DependentInput on a zero b*_i.
template <class F>
GramSchmidt<F> gram_schmidt(const std::vector<std::vector<F>>& v) {
  GramSchmidt<F> gs;
  const std::size_t n = v.size();
  gs.mu.assign(n, std::vector<F>(n, F(0)));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<F> w = v[i];
    for (std::size_t j = 0; j < i; ++j) {
      F m = inner(v[i], gs.bstar[j]) / gs.norms[j];
      gs.mu[i][j] = m;
      if (field_is_zero(m)) continue;
      for (std::size_t k = 0; k < w.size(); ++k)
        if (!field_is_zero(gs.bstar[j][k])) w[k] -= m * gs.bstar[j][k];
    }
    gs.mu[i][i] = F(1);
    F nrm = inner(w, w);
    if (field_is_zero(nrm)) throw DependentInput("vector " + std::to_string(i + 1) + " lies in the span of its predecessors");
    gs.bstar.push_back(std::move(w));
    gs.norms.push_back(std::move(nrm));
  }
  return gs;
}

/// Solves A x = b over F by Gaussian elimination. Throws SingularGram.
template <class F>
std::vector<F> solve_linear(std::vector<std::vector<F>> A, std::vector<F> b) {
  const std::size_t n = A.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && field_is_zero(A[p][c])) ++p;
    if (p == n) throw SingularGram("singular system of size " + std::to_string(n));
    std::swap(A[p], A[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (field_is_zero(A[r][c])) continue;
      F f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<F> x(n, F(0));
  for (std::size_t c = n; c-- > 0;) {
    F acc = b[c];
    for (std::size_t k = c + 1; k < n; ++k) acc -= A[c][k] * x[k];
    x[c] = acc / A[c][c];
  }
  return x;
}

/// Coefficients of the orthogonal projection of h onto span(v) in terms of v.
template <class F>
std::vector<F> projection_coefficients(const std::vector<std::vector<F>>& v, const std::vector<F>& h) {
  const std::size_t k = v.size();
  std::vector<std::vector<F>> G(k, std::vector<F>(k, F(0)));
  std::vector<F> rhs(k, F(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) G[i][j] = G[j][i] = inner(v[i], v[j]);
    rhs[i] = inner(v[i], h);
  }
  return solve_linear(std::move(G), std::move(rhs));
}

inline std::vector<RatVec> to_rat(const std::vector<std::vector<Int>>& m) {
  std::vector<RatVec> out;
  out.reserve(m.size());
  for (const auto& row : m) out.emplace_back(row.begin(), row.end());
  return out;
}

}  // namespace paralat
