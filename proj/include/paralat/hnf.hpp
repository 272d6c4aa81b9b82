#pragma once

// Column-style Hermite normal form: H = A * U with U unimodular, pivot rows
// strictly increasing left to right, positive pivots, entries left of a pivot
// reduced into [0, pivot), zero columns rightmost. The nonzero columns are a
// canonical basis of the lattice generated by the columns of A.

#include <utility>

#include "paralat/lll.hpp"

namespace paralat {

struct HnfResult {
  IntMatrix H;  // m x n
  IntMatrix U;  // n x n, H = A * U
  std::size_t rank = 0;
};

inline IntMatrix transpose(const IntMatrix& a) {
  if (a.empty()) return {};
  IntMatrix t(a[0].size(), IntVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline HnfResult hnf_column(const IntMatrix& A) {
  HnfResult r;
  r.H = A;
  const std::size_t m = A.size();
  const std::size_t n = m ? A[0].size() : 0;
  r.U = identity_matrix(n);
  IntMatrix& H = r.H;
  IntMatrix& U = r.U;

  auto col_combine = [&](IntMatrix& M, std::size_t c1, std::size_t c2, const Int& a, const Int& b, const Int& c,
                         const Int& d) {
    // (col c1, col c2) <- (a*c1 + b*c2, c*c1 + d*c2)
    for (auto& row : M) {
      Int x = row[c1], y = row[c2];
      row[c1] = a * x + b * y;
      row[c2] = c * x + d * y;
    }
  };

  std::size_t col = 0;
  for (std::size_t i = 0; i < m && col < n; ++i) {
    for (std::size_t j = col + 1; j < n; ++j) {
      if (H[i][j] == 0) continue;
      Int a = H[i][col], b = H[i][j], g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Int ag = a / g, bg = b / g;
      col_combine(H, col, j, x, y, -bg, ag);
      col_combine(U, col, j, x, y, -bg, ag);
    }
    if (H[i][col] == 0) continue;
    if (H[i][col] < 0) {
      for (auto& row : H) row[col] = -row[col];
      for (auto& row : U) row[col] = -row[col];
    }
    const Int p = H[i][col];
    for (std::size_t c = 0; c < col; ++c) {
      Int q = floor_div(H[i][c], p);
      if (q == 0) continue;
      for (auto& row : H) row[c] -= q * row[col];
      for (auto& row : U) row[c] -= q * row[col];
    }
    ++col;
  }
  r.rank = col;
  return r;
}

/// Canonical basis (as rows) of the lattice generated by the given rows.
inline IntMatrix lattice_basis(const IntMatrix& generators) {
  if (generators.empty()) return {};
  HnfResult r = hnf_column(transpose(generators));
  IntMatrix cols = transpose(r.H);
  cols.resize(r.rank);
  return cols;
}

inline bool same_lattice(const IntMatrix& a, const IntMatrix& b) { return lattice_basis(a) == lattice_basis(b); }

inline bool in_lattice(const IntMatrix& basis, const IntVec& v) {
  IntMatrix ext = basis;
  ext.push_back(v);
  return lattice_basis(ext) == lattice_basis(basis);
}

}  // namespace paralat
