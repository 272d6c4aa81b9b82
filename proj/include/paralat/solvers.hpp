#pragma once

// Shortest and closest vectors of a parametric lattice as EQP vector
// formulas.
//
// Both run on the eventually reduced basis of each leaf. SVP scans the
// coefficient box |a_i| <= 3^n, which contains a shortest vector of any
// LLL-reduced basis (delta = 3/4), and keeps the eventually shortest
// candidate. CVP projects the target onto the span, floors its last
// coordinate and recurses on the sublattice for each offset in a window
// whose width follows from the nearest-plane bound.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>

#include "paralat/enumerate.hpp"
#include "paralat/param_lll.hpp"

namespace paralat {

struct EqpVectorFormula {
  BranchTree<PolyVec> tree;  // payload: lattice vector in the leaf variable s
  std::size_t dim = 0;

  Int threshold() const { return tree.global_threshold(); }
  std::int64_t modulus() const { return tree.common_modulus(); }

  /// Value at t, from the leaf whose progression contains t.
  IntVec at(const Int& t) const {
    const Leaf<PolyVec>& l = tree.leaf_for(t);
    Int s = floor_div(t - l.residue, Int(static_cast<long>(l.modulus)));
    IntVec out;
    for (const Poly& p : l.payload) {
      Rat v = p.eval(Rat(s));
      if (!is_integer(v)) throw NonIntegral("formula coordinate is not an integer at t = " + t.get_str());
      out.push_back(v.get_num());
    }
    return out;
  }

  /// Per leaf, the vector rewritten in the original parameter t.
  std::vector<PolyVec> pieces_in_t() const {
    std::vector<PolyVec> out;
    for (const auto& l : tree.leaves()) {
      PolyVec v;
      for (const Poly& p : l.payload) v.push_back(unsubstitute(p, l.modulus, l.residue));
      out.push_back(std::move(v));
    }
    return out;
  }

  /// One EQP per coordinate over the common modulus.
  std::vector<EqpFunc> coordinates() const { return flatten(tree); }

  std::string to_string(std::string_view name = "u") const {
    std::ostringstream os;
    const auto pieces = pieces_in_t();
    const std::string head = std::string(name) + "(t) = ";
    if (tree.size() == 1 && tree.leaves()[0].modulus == 1) {
      os << head << paralat::to_string(pieces[0]) << " for t ≥ " << threshold().get_str();
      return os.str();
    }
    std::vector<std::size_t> order(tree.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto &la = tree.leaves()[a], &lb = tree.leaves()[b];
      return std::pair(la.modulus, la.residue) < std::pair(lb.modulus, lb.residue);
    });
    const std::string pad(head.size(), ' ');
    bool first = true;
    for (std::size_t i : order) {
      const auto& l = tree.leaves()[i];
      os << (first ? head : pad) << paralat::to_string(pieces[i]) << "  if t ≡ " << l.residue << " (mod " << l.modulus << ")\n";
      first = false;
    }
    os << "for t ≥ " << threshold().get_str();
    return os.str();
  }
};

struct SolverOptions {
  std::size_t max_rank = 3;
  std::size_t walk_limit = kDefaultWalk;
  // Lower each leaf threshold while the brute-force oracle agrees one step
  // below it, up to this many steps.
  std::size_t oracle_walk = 64;
  LllOptions lll;
};

struct Projection {
  RatFuncVec y;                 // orthogonal projection onto the span
  std::vector<RatFunc> coeffs;  // y = sum coeffs[i] * basis[i]
};

/// Orthogonal projection of x onto the Q(t)-span of the basis.
inline Projection project_to_span(const ParamBasis& basis, const RatFuncVec& x) {
  Projection p;
  p.y.assign(x.size(), RatFunc());
  if (basis.empty()) return p;
  p.coeffs = projection_coefficients(to_ratfuncs(basis), x);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = 0; k < x.size(); ++k)
      if (!basis[i][k].is_zero() && !p.coeffs[i].is_zero()) p.y[k] += p.coeffs[i] * RatFunc(basis[i][k]);
  return p;
}

/// Integers i with -ceil(2^(k/2-1)) <= i <= ceil(2^(k/2-1)) + 1.
inline std::pair<long, long> cvp_window(std::size_t k) {
  long c = 1;
  if (k >= 2) {
    // smallest c with c^2 >= 2^(k-2)
    Int p = pow_int(Int(2), k - 2), r;
    mpz_sqrt(r.get_mpz_t(), p.get_mpz_t());
    if (r * r < p) r += 1;
    c = r.get_si();
  }
  return {-c, c + 1};
}

namespace detail {

inline Int sub_threshold(const Int& T, const Int& k, const Int& j) {
  Int u = ceil_div(T - j, k);
  return u < 0 ? Int(0) : u;
}

inline std::int64_t to_modulus(const Int& x) { return to_i64(x); }

inline void check_rank(const ParamBasis& basis, const SolverOptions& opt) {
  if (basis.size() > opt.max_rank)
    throw DimensionTooLarge("rank " + std::to_string(basis.size()) + " exceeds the limit " + std::to_string(opt.max_rank));
}

inline bool is_zero_vec(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

/// Lowers a certified leaf threshold while `ok(s - 1)` holds.
inline Int walk_down(Int s, std::size_t steps, const std::function<bool(const Int&)>& ok) {
  for (std::size_t i = 0; i < steps && s > 0; ++i) {
    if (!ok(s - 1)) break;
    s -= 1;
  }
  return s;
}

// Norm polynomial of sum a_i g_i, given Gram entries split by degree:
// coeff k = sum_ij a_i a_j G_ij[k].
struct GramByDegree {
  std::vector<IntMatrix> G;  // G[k][i][j]
  // Word-sized copy of G, filled by fits_words when box norms fit in 62 bits.
  std::vector<std::int64_t> W;

  explicit GramByDegree(const ParamBasis& g) {
    const std::size_t n = g.size();
    int top = 0;
    std::vector<std::vector<Poly>> P(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        P[i][j] = dot(g[i], g[j]);
        top = std::max(top, P[i][j].degree());
      }
    G.assign(static_cast<std::size_t>(top) + 1, IntMatrix(n, IntVec(n, Int(0))));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (int k = 0; k <= P[i][j].degree(); ++k) G[static_cast<std::size_t>(k)][i][j] = P[i][j].coeff(k).get_num();
  }

  std::size_t rank() const { return G.empty() ? 0 : G[0].size(); }

  /// True when every norm over the box |a_i| <= R, and every difference of
  /// two such norms, fits in an int64; fills W in that case.
  bool fits_words(long R) {
    const std::size_t n = rank();
    Int big(0);
    for (const auto& m : G)
      for (const auto& row : m)
        for (const Int& x : row)
          if (abs(x) > big) big = abs(x);
    if (Int(static_cast<long>(n * n)) * big * R * R >= Int(1) << 61) return false;
    W.clear();
    for (const auto& m : G)
      for (const auto& row : m)
        for (const Int& x : row) W.push_back(x.get_si());
    return true;
  }

  void norm_words(const std::vector<long>& a, std::int64_t* out) const {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < G.size(); ++k) {
      const std::int64_t* g = &W[k * n * n];
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        std::int64_t row = 0;
        for (std::size_t j = 0; j < n; ++j) row += g[i * n + j] * a[j];
        acc += a[i] * row;
      }
      out[k] = acc;
    }
  }

  IntVec norm(const IntVec& a) const {
    IntVec c(G.size(), Int(0));
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < G.size(); ++k) {
      Int acc(0);
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        Int row(0);
        for (std::size_t j = 0; j < n; ++j)
          if (a[j] != 0) row += G[k][i][j] * a[j];
        acc += a[i] * row;
      }
      c[k] = acc;
    }
    return c;
  }
};

// Calls f on every a in [-R, R]^n whose first nonzero entry is positive, in
// lexicographic order.
template <typename F>
void for_each_half_box(std::size_t n, long R, F&& f) {
  std::vector<long> a(n, 0);
  std::function<void(std::size_t, bool)> rec = [&](std::size_t i, bool lead_set) {
    if (i == n) {
      if (lead_set) f(a);
      return;
    }
    for (long v = lead_set ? -R : 0; v <= R; ++v) {
      a[i] = v;
      rec(i + 1, lead_set || v != 0);
    }
    a[i] = 0;
  };
  rec(0, false);
}

// Whether p (low degree first) is positive at every s >= T, from the
// coefficients of p(T + u) all being nonnegative with p(T) > 0. Empty when
// an intermediate value overflows; false means "not shown", not negative.
// Shifts p in place.
inline std::optional<bool> positive_from(std::vector<std::int64_t>& p, std::int64_t T) {
  const std::size_t d = p.size() - 1;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = d; j-- > i;) {
      std::int64_t step;
      if (__builtin_mul_overflow(T, p[j + 1], &step) || __builtin_add_overflow(p[j], step, &p[j])) return std::nullopt;
    }
  return p[0] > 0 && std::all_of(p.begin(), p.end(), [](std::int64_t c) { return c >= 0; });
}

// Raises T to a point past which the norm difference diff (coefficients,
// low degree first) stays positive; throws if diff is eventually negative.
inline void certify_difference(const IntVec& diff, Int& T, std::size_t walk_limit) {
  Poly d(std::vector<Rat>(diff.begin(), diff.end()));
  if (d.is_zero()) return;
  if (d.lead() < 0) throw CertificationFailure("SVP minimizer is not eventually minimal");
  if (cauchy_bound(d) <= T) return;
  Int b = eventual_sign(d, walk_limit).threshold;
  if (b > T) T = b;
}

// Top-down comparison of coefficient vectors (eventual order).
inline int cmp_top_down(const IntVec& a, const IntVec& b) {
  for (std::size_t k = a.size(); k-- > 0;)
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  return 0;
}

// Integral value of v at s, if it has one.
inline std::optional<IntVec> int_value(const PolyVec& v, const Int& s) {
  IntVec out;
  for (const Poly& p : v) {
    Rat x = p.eval(Rat(s));
    if (!is_integer(x)) return std::nullopt;
    out.push_back(x.get_num());
  }
  return out;
}

inline void sort_leaves(std::vector<Leaf<PolyVec>>& leaves) {
  std::sort(leaves.begin(), leaves.end(), [](const auto& a, const auto& b) {
    return std::pair(a.modulus, a.residue) < std::pair(b.modulus, b.residue);
  });
}

inline Poly poly_from(const IntVec& c) {
  std::vector<Rat> r(c.begin(), c.end());
  return Poly(std::move(r));
}

}  // namespace detail

/// Eventually shortest nonzero vector per residue class.
inline EqpVectorFormula parametric_svp(const ParamBasis& basis, const SolverOptions& opt = {}) {
  if (basis.empty()) throw RankZero("SVP needs at least one basis vector");
  detail::check_rank(basis, opt);
  ReducedOutput red = parametric_lll(basis, Rat(3, 4), opt.lll);
  const std::size_t n = red.rank;
  const long R = pow_int(Int(3), n).get_si();
  EqpVectorFormula out;
  out.dim = basis[0].size();
  std::vector<Leaf<PolyVec>> leaves;
  for (const auto& leaf : red.tree.leaves()) {
    const ParamBasis& g = leaf.payload.basis;
    detail::GramByDegree gram(g);
    const std::size_t K = gram.G.size();
    std::vector<long> best_a;
    Int T = leaf.threshold;
    if (gram.fits_words(R)) {
      std::vector<std::int64_t> best(K), c(K), shift;
      detail::for_each_half_box(n, R, [&](const std::vector<long>& a) {
        gram.norm_words(a, c.data());
        if (best_a.empty() || std::lexicographical_compare(c.rbegin(), c.rend(), best.rbegin(), best.rend())) {
          best_a = a;
          best = c;
        }
      });
      // certify: every other candidate is eventually no shorter; the norms are
      // recomputed rather than stored, and only slow cases go through Poly
      detail::for_each_half_box(n, R, [&](const std::vector<long>& a) {
        gram.norm_words(a, c.data());
        std::size_t top = K;
        std::int64_t lead = 0, rest = 0;
        for (std::size_t k = K; k-- > 0;) {
          const std::int64_t d = c[k] - best[k];
          if (top == K) {
            if (d != 0) top = k, lead = d;
          } else {
            rest = std::max(rest, d < 0 ? -d : d);
          }
        }
        if (top == K) return;
        if (lead < 0) throw CertificationFailure("SVP minimizer is not eventually minimal");
        // Cauchy bound ceil(1 + rest/lead) <= T
        if (top == 0 || T >= 1 + (rest + lead - 1) / lead) return;
        if (T.fits_slong_p()) {
          shift.resize(top + 1);
          for (std::size_t k = 0; k <= top; ++k) shift[k] = c[k] - best[k];
          if (detail::positive_from(shift, T.get_si()).value_or(false)) return;
        }
        IntVec diff;
        for (std::size_t k = 0; k < K; ++k) diff.emplace_back(static_cast<long>(c[k] - best[k]));
        detail::certify_difference(diff, T, opt.walk_limit);
      });
    } else {
      std::vector<IntVec> norms;
      IntVec best;
      detail::for_each_half_box(n, R, [&](const std::vector<long>& a) {
        IntVec c = gram.norm(IntVec(a.begin(), a.end()));
        if (best_a.empty() || detail::cmp_top_down(c, best) < 0) {
          best_a = a;
          best = c;
        }
        norms.push_back(std::move(c));
      });
      for (const IntVec& c : norms) {
        IntVec diff(K);
        for (std::size_t k = 0; k < K; ++k) diff[k] = c[k] - best[k];
        detail::certify_difference(diff, T, opt.walk_limit);
      }
    }
    PolyVec v = combine(IntVec(best_a.begin(), best_a.end()), g);
    T = detail::walk_down(T, opt.oracle_walk, [&](const Int& s) {
      Int t = leaf.t_at(s);
      IntMatrix b = eval_int(basis, t);
      if (gram_determinant(b) == 0) return false;
      std::optional<IntVec> w = detail::int_value(v, s);
      if (!w || detail::is_zero_vec(*w) || !in_lattice(b, *w)) return false;
      return Rat(norm2(*w)) == svp_oracle(b).value;
    });
    leaves.push_back(Leaf<PolyVec>{leaf.modulus, leaf.residue, T, std::move(v)});
  }
  detail::sort_leaves(leaves);
  out.tree = BranchTree<PolyVec>(std::move(leaves));
  return out;
}

namespace detail {

struct CvpLeaf {
  std::int64_t modulus;  // relative to the caller's variable
  std::int64_t residue;
  Int threshold;         // in the leaf variable
  PolyVec vector;        // in the leaf variable
};

inline RatFunc dist2(const PolyVec& v, const RatFuncVec& x) {
  RatFunc acc;
  for (std::size_t k = 0; k < v.size(); ++k) {
    RatFunc d = RatFunc(v[k]) - x[k];
    acc += d * d;
  }
  return acc;
}

// Closest vector to x in span_Z(g), per class of the current variable s.
inline std::vector<CvpLeaf> cvp_rec(const ParamBasis& g, const RatFuncVec& x, std::size_t walk) {
  const std::size_t k = g.size();
  if (k == 0) return {CvpLeaf{1, 0, Int(0), PolyVec(x.size())}};
  Projection proj = project_to_span(g, x);
  EqpFunc top = floor_ratfunc(proj.coeffs[k - 1], walk);
  const std::int64_t P = top.modulus();
  const Int PP(static_cast<long>(P));
  auto [lo, hi] = cvp_window(k);
  std::vector<CvpLeaf> out;
  for (std::int64_t j = 0; j < P; ++j) {
    const Int J(static_cast<long>(j));
    const ParamBasis gj = substitute(g, PP, J);
    const RatFuncVec xj = substitute(x, PP, J);
    const Poly base = top.piece(j).substitute(PP, J);
    const Int Tj = sub_threshold(top.threshold(), PP, J);
    const ParamBasis prefix(gj.begin(), gj.end() - 1);
    const ParamVector& last = gj.back();

    // one candidate tree per offset
    std::vector<std::vector<CvpLeaf>> cands;
    std::int64_t L = 1;
    for (long off = lo; off <= hi; ++off) {
      const Poly a = base + Poly(off);
      RatFuncVec xr = xj;
      for (std::size_t c = 0; c < xr.size(); ++c)
        if (!last[c].is_zero() && !a.is_zero()) xr[c] -= RatFunc(a * last[c]);
      std::vector<CvpLeaf> sub = cvp_rec(prefix, xr, walk);
      for (CvpLeaf& l : sub) {
        const Poly al = a.substitute(Int(static_cast<long>(l.modulus)), Int(static_cast<long>(l.residue)));
        const ParamVector lastl = substitute(last, Int(static_cast<long>(l.modulus)), Int(static_cast<long>(l.residue)));
        l.vector = sub_mul(l.vector, -al, lastl);
        L = checked_lcm(L, l.modulus, kMaxLeafModulus);
      }
      cands.push_back(std::move(sub));
    }
    // compare all offsets on the common refinement
    const Int LL(static_cast<long>(L));
    for (std::int64_t rho = 0; rho < L; ++rho) {
      const Int RHO(static_cast<long>(rho));
      const RatFuncVec xl = substitute(xj, LL, RHO);
      std::vector<RatFunc> dists;
      std::vector<PolyVec> vecs;
      Int T = sub_threshold(Tj, LL, RHO);
      for (const auto& sub : cands) {
        const CvpLeaf* hit = nullptr;
        for (const CvpLeaf& l : sub)
          if (rho % l.modulus == l.residue) hit = &l;
        const Int k2(static_cast<long>(L / hit->modulus)), j2(static_cast<long>((rho - hit->residue) / hit->modulus));
        PolyVec v = substitute(hit->vector, k2, j2);
        Int th = sub_threshold(hit->threshold, k2, j2);
        if (th > T) T = th;
        dists.push_back(dist2(v, xl));
        vecs.push_back(std::move(v));
      }
      EventualMin m = eventual_argmin(dists, walk);
      if (m.threshold > T) T = m.threshold;
      // leaf of s: s = P*(L*u + rho) + j
      out.push_back(CvpLeaf{to_modulus(PP * LL), to_modulus(PP * RHO + J), T, std::move(vecs[m.index])});
    }
  }
  return out;
}

}  // namespace detail

/// Eventually closest lattice vector to x(t) per residue class.
inline EqpVectorFormula parametric_cvp(const ParamBasis& basis, const RatFuncVec& x, const SolverOptions& opt = {}) {
  EqpVectorFormula out;
  out.dim = x.size();
  if (basis.empty()) {
    out.tree = BranchTree<PolyVec>(PolyVec(x.size()));
    return out;
  }
  detail::check_rank(basis, opt);
  if (basis[0].size() != x.size()) throw ParseError("target length differs from the basis vectors");
  Int poles(0);
  for (const RatFunc& f : x) {
    Int p = pole_threshold(f, opt.walk_limit);
    if (p > poles) poles = p;
  }
  ReducedOutput red = parametric_lll(basis, Rat(3, 4), opt.lll);
  std::vector<Leaf<PolyVec>> leaves;
  for (const auto& leaf : red.tree.leaves()) {
    const Int M(static_cast<long>(leaf.modulus)), r(static_cast<long>(leaf.residue));
    const RatFuncVec xs = substitute(x, M, r);
    for (detail::CvpLeaf& c : detail::cvp_rec(leaf.payload.basis, xs, opt.walk_limit)) {
      const Int cm(static_cast<long>(c.modulus)), cr(static_cast<long>(c.residue));
      Leaf<PolyVec> l;
      l.modulus = detail::to_modulus(M * cm);
      l.residue = detail::to_modulus(M * cr + r);
      Int T = c.threshold;
      Int lt = detail::sub_threshold(leaf.threshold, cm, cr);
      if (lt > T) T = lt;
      Int pt = detail::sub_threshold(poles, Int(static_cast<long>(l.modulus)), Int(static_cast<long>(l.residue)));
      if (pt > T) T = pt;
      const PolyVec v = c.vector;
      T = detail::walk_down(T, opt.oracle_walk, [&](const Int& s) {
        Int t = l.t_at(s);
        if (t < poles) return false;
        IntMatrix b = eval_int(basis, t);
        if (gram_determinant(b) == 0) return false;
        RatVec xt = eval(x, Rat(t));
        std::optional<IntVec> w = detail::int_value(v, s);
        if (!w || !in_lattice(b, *w)) return false;
        return paralat::dist2(*w, xt) == cvp_oracle(b, xt).value;
      });
      l.threshold = T;
      l.payload = c.vector;
      leaves.push_back(std::move(l));
    }
  }
  detail::sort_leaves(leaves);
  out.tree = BranchTree<PolyVec>(std::move(leaves));
  return out;
}

}  // namespace paralat
