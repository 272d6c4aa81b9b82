#pragma once

// Parametric lattice bases: rows of integer polynomials in one parameter.
// The degree of a vector is the largest entry degree; its pilot is the vector
// of coefficients at that degree.

#include <algorithm>
#include <map>

#include "paralat/branch_tree.hpp"
#include "paralat/hnf.hpp"

namespace paralat {

using ParamVector = PolyVec;
using ParamBasis = std::vector<ParamVector>;

inline int degree(const ParamVector& f) {
  int d = kNegInf;
  for (const Poly& p : f) d = std::max(d, p.degree());
  return d;
}

inline bool is_zero(const ParamVector& f) { return degree(f) == kNegInf; }

/// Coefficients of t^d in each entry. Requires 0 <= d <= deg f.
inline IntVec degree_part(const ParamVector& f, int d) {
  if (d < 0 || d > degree(f)) throw DegreeOutOfRange("degree " + std::to_string(d) + " outside [0, " + std::to_string(degree(f)) + "]");
  IntVec out;
  out.reserve(f.size());
  for (const Poly& p : f) {
    Rat c = p.coeff(d);
    if (!is_integer(c)) throw NonIntegral("entry coefficient " + c.get_str() + " is not an integer");
    out.push_back(c.get_num());
  }
  return out;
}

/// Leading-degree coefficient vector; all zeros for the zero vector.
inline IntVec pilot(const ParamVector& f) {
  int d = degree(f);
  if (d == kNegInf) return IntVec(f.size(), Int(0));
  return degree_part(f, d);
}

inline Int dot(const IntVec& a, const IntVec& b) {
  Int acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline bool is_integral(const ParamBasis& b) {
  for (const auto& v : b)
    for (const Poly& p : v)
      if (!p.is_integral()) return false;
  return true;
}

inline ParamBasis substitute(const ParamBasis& b, const Int& k, const Int& j) {
  ParamBasis out;
  out.reserve(b.size());
  for (const auto& v : b) out.push_back(substitute(v, k, j));
  return out;
}

inline IntMatrix eval_int(const ParamBasis& b, const Int& t) {
  IntMatrix out;
  for (const auto& v : b) {
    IntVec row;
    for (const Poly& p : v) {
      Rat x = p.eval(Rat(t));
      if (!is_integer(x)) throw NonIntegral("basis entry is not an integer at t = " + t.get_str());
      row.push_back(x.get_num());
    }
    out.push_back(std::move(row));
  }
  return out;
}

inline std::vector<RatFuncVec> to_ratfuncs(const ParamBasis& b) {
  std::vector<RatFuncVec> out;
  out.reserve(b.size());
  for (const auto& v : b) out.push_back(to_ratfuncs(v));
  return out;
}

/// sum_i coeffs[i] * rows[i] for integer coefficients.
inline ParamVector combine(const IntVec& coeffs, const ParamBasis& rows) {
  ParamVector out(rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (std::size_t k = 0; k < out.size(); ++k) out[k].add_scaled(rows[i][k], Rat(coeffs[i]));
  }
  return out;
}

/// f - q * g entrywise.
inline ParamVector sub_mul(const ParamVector& f, const Poly& q, const ParamVector& g) {
  ParamVector out = f;
  if (q.is_zero()) return out;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= q * g[k];
  return out;
}

/// Gram-Schmidt over Q(t).
inline GramSchmidt<RatFunc> param_gram_schmidt(const ParamBasis& b) { return gram_schmidt(to_ratfuncs(b)); }

/// Exact quotient of polynomials; throws if h does not divide f.
inline Poly exact_div(const Poly& f, const Poly& h) {
  auto [q, r] = divmod(f, h);
  if (!r.is_zero()) throw CertificationFailure("inexact polynomial division");
  return q;
}

/// Fraction-free Gram-Schmidt data of a polynomial basis. With d_{-1} = 1,
/// d[i] is the Gram determinant of the first i+1 vectors and
/// lambda[i][j] = d[j] * mu_ij, so every entry stays in Q[t]:
///   mu_ij = lambda[i][j] / d[j],   |b*_i|^2 = d[i] / d[i-1].
struct ParamGso {
  std::vector<Poly> d;
  std::vector<std::vector<Poly>> lambda;

  std::size_t size() const { return d.size(); }
  const Poly& prev_d(std::size_t i) const {
    static const Poly one(1);
    return i == 0 ? one : d[i - 1];
  }
  RatFunc mu(std::size_t i, std::size_t j) const { return RatFunc(lambda[i][j], d[j]); }
  RatFunc norm(std::size_t i) const { return RatFunc(d[i], prev_d(i)); }
};

/// Integral Gram-Schmidt recurrences with exact division. Throws
/// DependentInput when a prefix is dependent over Q(t).
inline ParamGso param_gso(const ParamBasis& b) {
  const std::size_t n = b.size();
  ParamGso g;
  g.d.reserve(n);
  g.lambda.assign(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Poly u = dot(b[i], b[j]);
      for (std::size_t k = 0; k < j; ++k)
        u = exact_div(g.d[k] * u - g.lambda[i][k] * g.lambda[j][k], g.prev_d(k));
      if (j < i) {
        g.lambda[i][j] = std::move(u);
      } else {
        if (u.is_zero()) throw DependentInput("vector " + std::to_string(i + 1) + " lies in the span of its predecessors");
        g.d.push_back(std::move(u));
      }
    }
  }
  return g;
}

/// Degree -> positions of the vectors of that degree, in basis order.
inline std::map<int, std::vector<std::size_t>> degree_blocks(const ParamBasis& b) {
  std::map<int, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < b.size(); ++i) blocks[degree(b[i])].push_back(i);
  return blocks;
}

inline std::string to_string(const ParamBasis& b, std::string_view var = "t") {
  std::string s = "[";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) s += ", ";
    s += to_string(b[i], var);
  }
  return s + "]";
}

/// Rank of a list of integer vectors over Q.
inline std::size_t rank_of(const IntMatrix& rows) {
  if (rows.empty()) return 0;
  return hnf_column(transpose(rows)).rank;
}

/// Replaces a same-degree block by an equivalent one whose first vectors keep
/// the degree with independent pilots; the rest drop in degree (or vanish).
inline ParamBasis hermite_degree_reduce(const ParamBasis& block, IntMatrix* U_out = nullptr) {
  if (block.empty()) return {};
  IntMatrix pilots;
  for (const auto& v : block) pilots.push_back(pilot(v));
  HnfResult h = hnf_column(transpose(pilots));
  // new vector c = sum_i U[i][c] * old vector i
  IntMatrix Ut = transpose(h.U);
  ParamBasis out;
  out.reserve(block.size());
  for (const IntVec& col : Ut) out.push_back(combine(col, block));
  if (U_out) *U_out = h.U;
  return out;
}

struct DegreeSortResult {
  ParamBasis basis;
  std::size_t hnf_rounds = 0;
  std::size_t dropped = 0;
};

/// Drops zero vectors, sorts by degree and repairs dependent pilots inside
/// each degree block until every block has independent pilots.
inline DegreeSortResult sort_and_reduce_degrees(const ParamBasis& input, bool strict = false) {
  DegreeSortResult r;
  r.basis = input;
  const std::size_t n = input.size();
  for (;;) {
    r.basis.erase(std::remove_if(r.basis.begin(), r.basis.end(), [](const ParamVector& v) { return is_zero(v); }),
                  r.basis.end());
    std::stable_sort(r.basis.begin(), r.basis.end(),
                     [](const ParamVector& a, const ParamVector& b) { return degree(a) < degree(b); });
    bool changed = false;
    for (const auto& [d, idx] : degree_blocks(r.basis)) {
      IntMatrix pilots;
      for (std::size_t i : idx) pilots.push_back(pilot(r.basis[i]));
      if (rank_of(pilots) == idx.size()) continue;
      ParamBasis block;
      for (std::size_t i : idx) block.push_back(r.basis[i]);
      ParamBasis red = hermite_degree_reduce(block);
      for (std::size_t k = 0; k < idx.size(); ++k) r.basis[idx[k]] = red[k];
      changed = true;
      ++r.hnf_rounds;
      break;  // degrees moved; regroup
    }
    if (!changed) break;
  }
  r.dropped = n - r.basis.size();
  if (strict && r.dropped) throw RankDeficient(std::to_string(r.dropped) + " vector(s) reduced to zero");
  return r;
}

}  // namespace paralat
