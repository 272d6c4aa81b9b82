#pragma once

// Brute-force SVP / CVP oracles for small rank, all exact.
//
// The sphere search (Fincke-Pohst) runs on an LLL-reduced basis and visits
// every coefficient vector whose partial Gram-Schmidt distances fit inside
// the current radius. The box search enumerates a coefficient cube directly
// and is kept as an independent cross-check.

#include <functional>
#include <optional>

#include "paralat/hnf.hpp"

namespace paralat {

struct OracleResult {
  IntVec vector;
  IntVec coeffs;  // with respect to the caller's basis
  Rat value;      // squared norm (SVP) or squared distance to the target (CVP)
};

inline Int isqrt_floor(const Rat& x) {
  if (x <= 0) return Int(0);
  Int f = floor_rat(x), r;
  mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
  return r;
}

inline IntVec combine_rows(const IntVec& coeffs, const IntMatrix& rows) {
  IntVec v(rows.empty() ? 0 : rows[0].size(), Int(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (coeffs[i] != 0)
      for (std::size_t k = 0; k < v.size(); ++k) v[k] += coeffs[i] * rows[i][k];
  return v;
}

inline Rat dist2(const IntVec& v, const RatVec& x) {
  Rat acc(0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    Rat d = x[k] - v[k];
    acc += d * d;
  }
  return acc;
}

struct BabaiResult {
  IntVec coeffs;
  IntVec vector;
  Rat value;  // squared distance
};

/// Nearest-plane rounding of x against `basis` (coefficients w.r.t. basis).
inline BabaiResult babai_nearest_plane(const IntMatrix& basis, const RatVec& x) {
  GramSchmidt<Rat> gs = gram_schmidt(to_rat(basis));
  const std::size_t n = basis.size();
  RatVec w = x;
  IntVec a(n, Int(0));
  for (std::size_t i = n; i-- > 0;) {
    Int q = nearest_rat(inner(w, gs.bstar[i]) / gs.norms[i]);
    a[i] = q;
    if (q != 0)
      for (std::size_t k = 0; k < w.size(); ++k) w[k] -= q * basis[i][k];
  }
  IntVec v = combine_rows(a, basis);
  return {a, v, dist2(v, x)};
}

namespace detail {

/// Calls visit(a, value) for every coefficient vector with value <= radius(),
/// where value = ||x - sum a_i b_i||^2. radius() is re-read at each node so
/// the caller may shrink it.
inline void sphere_enumerate(const GramSchmidt<Rat>& gs, const RatVec& x, const std::function<Rat()>& radius,
                             const std::function<void(const IntVec&, const Rat&)>& visit) {
  const std::size_t n = gs.size();
  RatVec tc(n);
  Rat perp = inner(x, x);
  for (std::size_t i = 0; i < n; ++i) {
    tc[i] = inner(x, gs.bstar[i]) / gs.norms[i];
    perp -= tc[i] * tc[i] * gs.norms[i];
  }
  IntVec a(n, Int(0));
  std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t level, const Rat& partial) {
    // level counts down; `level` coordinates remain to be fixed
    if (level == 0) {
      visit(a, partial);
      return;
    }
    const std::size_t i = level - 1;
    Rat center = tc[i];
    for (std::size_t j = i + 1; j < n; ++j)
      if (a[j] != 0) center -= a[j] * gs.mu[j][i];
    Rat budget = (radius() - partial) / gs.norms[i];
    if (budget < 0) return;
    Int s = isqrt_floor(budget) + 1;
    Int lo = ceil_rat(center - s), hi = floor_rat(center + s);
    for (Int v = lo; v <= hi; ++v) {
      Rat d = center - v;
      Rat part = partial + d * d * gs.norms[i];
      if (part > radius()) continue;
      a[i] = v;
      rec(level - 1, part);
    }
    a[i] = 0;
  };
  rec(n, perp);
}

inline IntVec to_input_coords(const IntVec& reduced_coeffs, const IntMatrix& U) {
  // reduced rows are U * input rows, so sum a_i r_i = sum_j (U^T a)_j input_j
  IntVec c(U.empty() ? 0 : U[0].size(), Int(0));
  for (std::size_t i = 0; i < U.size(); ++i)
    if (reduced_coeffs[i] != 0)
      for (std::size_t j = 0; j < c.size(); ++j) c[j] += reduced_coeffs[i] * U[i][j];
  return c;
}

}  // namespace detail

/// A shortest nonzero vector. Among equal norms, the first found by the
/// deterministic search order is kept.
inline OracleResult svp_oracle(const IntMatrix& basis) {
  if (basis.empty()) throw EmptyBasis("SVP on an empty basis");
  LllResult red = lll_reduce(basis);
  GramSchmidt<Rat> gs = gram_schmidt(to_rat(red.basis));
  OracleResult best;
  best.value = Rat(norm2(red.basis[0]));
  IntVec best_a(basis.size(), Int(0));
  best_a[0] = 1;
  RatVec zero(basis[0].size(), Rat(0));
  detail::sphere_enumerate(
      gs, zero, [&] { return best.value; },
      [&](const IntVec& a, const Rat& v) {
        bool nonzero = false;
        for (const Int& x : a) nonzero = nonzero || x != 0;
        if (nonzero && v < best.value) {
          best.value = v;
          best_a = a;
        }
      });
  best.vector = combine_rows(best_a, red.basis);
  best.coeffs = detail::to_input_coords(best_a, red.U);
  return best;
}

/// A lattice vector closest to x. The initial radius is the Babai distance
/// unless `radius2` overrides it (it must then be at least the optimum).
inline OracleResult cvp_oracle(const IntMatrix& basis, const RatVec& x, std::optional<Rat> radius2 = std::nullopt) {
  if (basis.empty()) throw EmptyBasis("CVP on an empty basis");
  LllResult red = lll_reduce(basis);
  GramSchmidt<Rat> gs = gram_schmidt(to_rat(red.basis));
  BabaiResult babai = babai_nearest_plane(red.basis, x);
  OracleResult best;
  best.value = babai.value;
  IntVec best_a = babai.coeffs;
  Rat r = radius2 ? *radius2 : babai.value;
  detail::sphere_enumerate(
      gs, x, [&] { return r; },
      [&](const IntVec& a, const Rat& v) {
        if (v < best.value) {
          best.value = v;
          best_a = a;
        }
      });
  best.vector = combine_rows(best_a, red.basis);
  best.coeffs = detail::to_input_coords(best_a, red.U);
  return best;
}

/// Every lattice vector at the minimal distance from x (coefficients with
/// respect to the caller's basis).
inline std::vector<OracleResult> cvp_all_optimal(const IntMatrix& basis, const RatVec& x) {
  OracleResult one = cvp_oracle(basis, x);
  LllResult red = lll_reduce(basis);
  GramSchmidt<Rat> gs = gram_schmidt(to_rat(red.basis));
  std::vector<OracleResult> out;
  detail::sphere_enumerate(
      gs, x, [&] { return one.value; },
      [&](const IntVec& a, const Rat& v) {
        if (v == one.value) out.push_back({combine_rows(a, red.basis), detail::to_input_coords(a, red.U), v});
      });
  return out;
}

inline Int default_box_radius(std::size_t n) { return pow_int(Int(3), n); }

namespace detail {

inline void box_enumerate(std::size_t n, const Int& radius, const IntVec& center,
                          const std::function<void(const IntVec&)>& visit) {
  IntVec a(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      visit(a);
      return;
    }
    for (Int v = center[i] - radius; v <= center[i] + radius; ++v) {
      a[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

}  // namespace detail

/// SVP by scanning |m_i| <= radius over the LLL-reduced basis.
inline OracleResult svp_box(const IntMatrix& basis, std::optional<Int> radius = std::nullopt) {
  if (basis.empty()) throw EmptyBasis("SVP on an empty basis");
  LllResult red = lll_reduce(basis);
  const Int R = radius ? *radius : default_box_radius(basis.size());
  OracleResult best;
  bool found = false;
  IntVec best_a;
  detail::box_enumerate(basis.size(), R, IntVec(basis.size(), Int(0)), [&](const IntVec& a) {
    IntVec v = combine_rows(a, red.basis);
    Int n2 = norm2(v);
    if (n2 == 0) return;
    if (!found || n2 < best.value) {
      found = true;
      best.value = Rat(n2);
      best_a = a;
    }
  });
  best.vector = combine_rows(best_a, red.basis);
  best.coeffs = detail::to_input_coords(best_a, red.U);
  return best;
}

/// CVP by scanning a coefficient cube around the Babai coefficients.
inline OracleResult cvp_box(const IntMatrix& basis, const RatVec& x, std::optional<Int> radius = std::nullopt) {
  if (basis.empty()) throw EmptyBasis("CVP on an empty basis");
  LllResult red = lll_reduce(basis);
  BabaiResult babai = babai_nearest_plane(red.basis, x);
  const Int R = radius ? *radius : default_box_radius(basis.size());
  OracleResult best;
  best.value = babai.value;
  IntVec best_a = babai.coeffs;
  detail::box_enumerate(basis.size(), R, babai.coeffs, [&](const IntVec& a) {
    Rat d = dist2(combine_rows(a, red.basis), x);
    if (d < best.value) {
      best.value = d;
      best_a = a;
    }
  });
  best.vector = combine_rows(best_a, red.basis);
  best.coeffs = detail::to_input_coords(best_a, red.U);
  return best;
}

}  // namespace paralat
