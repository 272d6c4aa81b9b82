#pragma once

// Eventually LLL-reduced bases of parametric lattices.
//
// Each leaf of the output covers the progression t = M*s + r (s >= T) and
// holds integer polynomial vectors in s. The pipeline on a leaf:
//   1. drop zero vectors, sort by degree, repair dependent pilots per degree
//      (HNF on the pilot matrix);
//   2. make each higher-degree vector's pilot orthogonal to every lower
//      degree block by subtracting rounded projection coefficients, going
//      back to 1 whenever a degree drops;
//   3. LLL each degree block on its pilots, then fix coefficients that tend
//      to +-1/2 from the wrong side with a +-1 correction;
//   4. size-reduce every vector against all lower-degree vectors.
// Whenever a rounding yields a periodic (non-polynomial) quotient, the leaf is
// split by the period and each child restarts its current stage. A leaf ends
// with a symbolic certificate of both LLL conditions.

#include <functional>
#include <sstream>
#include <utility>

#include "paralat/param_basis.hpp"

namespace paralat {

struct LeafBasis {
  ParamBasis basis;  // vectors in the leaf variable s
  std::vector<std::string> transcript;
};

inline LeafBasis substitute(const LeafBasis& b, const Int& k, const Int& j) {
  LeafBasis out{substitute(b.basis, k, j), b.transcript};
  out.transcript.push_back("branch s -> " + k.get_str() + "*s + " + j.get_str());
  return out;
}

struct LllOptions {
  std::size_t walk_limit = kDefaultWalk;
  std::size_t max_leaves = 1u << 14;
  bool allow_rank_drop = false;  // otherwise vectors reduced to zero raise RankDeficient
  // Called before a leaf is split by `period` (in the leaf variable).
  std::function<void(const Leaf<LeafBasis>&, std::int64_t period)> on_branch;
};

struct ReducedOutput {
  Rat delta;
  std::size_t rank = 0;
  BranchTree<LeafBasis> tree;

  /// Basis of the leaf containing t, evaluated at t.
  IntMatrix basis_at(const Int& t) const {
    const Leaf<LeafBasis>& l = tree.leaf_for(t);
    Int s = floor_div(t - l.residue, Int(static_cast<long>(l.modulus)));
    return eval_int(l.payload.basis, s);
  }
  Int threshold() const { return tree.global_threshold(); }
  std::int64_t modulus() const { return tree.common_modulus(); }
};

struct ReductionCertificate {
  bool ok = true;
  Int threshold;
  std::string failure;
};

namespace detail {

/// Eventual sign of 2*lambda - d (want <= 0) and 2*lambda + d (want >= 0):
/// together they say |lambda / d| <= 1/2 once d > 0.
struct HalfTest {
  SignCertificate above;  // sign of 2*lambda - d
  SignCertificate below;  // sign of 2*lambda + d
  bool too_high() const { return above.sign > 0; }
  bool too_low() const { return below.sign < 0; }
};

inline HalfTest half_test(const Poly& lambda, const Poly& d, std::size_t walk) {
  Poly twice = Rat(2) * lambda;
  return {eventual_sign(twice - d, walk), eventual_sign(twice + d, walk)};
}

}  // namespace detail

/// Symbolic check that a basis is LLL-reduced with factor delta at every
/// integer s >= threshold.
inline ReductionCertificate certify_eventually_reduced(const ParamBasis& b, const Rat& delta,
                                                        std::size_t walk = kDefaultWalk) {
  ReductionCertificate c;
  if (b.empty()) return c;
  ParamGso g;
  try {
    g = param_gso(b);
  } catch (const DependentInput& e) {
    return {false, Int(0), e.what()};
  }
  auto raise = [&](const Int& t) {
    if (t > c.threshold) c.threshold = t;
  };
  auto fail = [&](std::string why) {
    c.ok = false;
    if (c.failure.empty()) c.failure = std::move(why);
  };
  for (std::size_t i = 0; i < b.size(); ++i) {
    SignCertificate s = eventual_sign(g.d[i], walk);
    if (s.sign <= 0) fail("squared norm of b*_" + std::to_string(i + 1) + " is not eventually positive");
    raise(s.threshold);
    for (std::size_t j = 0; j < i; ++j) {
      detail::HalfTest h = detail::half_test(g.lambda[i][j], g.d[j], walk);
      if (h.too_high() || h.too_low())
        fail("coefficient (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + g.mu(i, j).to_string("s") +
             " is not eventually within 1/2");
      raise(h.above.threshold);
      raise(h.below.threshold);
    }
    if (i > 0) {
      // |b*_i|^2 + mu^2 |b*_{i-1}|^2 >= delta |b*_{i-1}|^2, scaled by d[i-1] * d[i-2]
      const Poly& l = g.lambda[i][i - 1];
      Poly gap = g.d[i] * g.prev_d(i - 1) + l * l - delta * (g.d[i - 1] * g.d[i - 1]);
      SignCertificate lov = eventual_sign(gap, walk);
      if (lov.sign < 0) fail("Lovasz condition fails eventually at position " + std::to_string(i + 1));
      raise(lov.threshold);
    }
  }
  return c;
}

namespace detail {

inline std::string vec_name(std::size_t i) { return "v" + std::to_string(i + 1); }

inline std::string matrix_string(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m[i].size(); ++j) os << (j ? ", " : "") << m[i][j].get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

enum class Stage { Orthogonalize, BlockLll, CrossReduce, Certify, Done };

struct Work {
  Leaf<LeafBasis> leaf;
  Stage stage = Stage::Orthogonalize;
  std::size_t pos = 0;  // position in the cross-degree schedule
};

inline void raise_leaf(Work& w, const Int& t) {
  if (t > w.leaf.threshold) w.leaf.threshold = t;
}

inline void require_integral(const ParamVector& v) {
  for (const Poly& p : v)
    if (!p.is_integral()) throw NonIntegral("rounded combination left Z[s]: " + to_string(v, "s"));
}

/// Determinant of a square polynomial matrix by fraction-free elimination.
inline Poly poly_det(std::vector<std::vector<Poly>> a) {
  const std::size_t n = a.size();
  Poly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k].is_zero()) ++p;
    if (p == n) return {};
    if (p != k) {
      std::swap(a[p], a[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = exact_div(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
    prev = a[k][k];
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

/// Projection of h onto span(rows) as numerators over one common
/// denominator (the Gram determinant), by Cramer's rule.
inline std::pair<std::vector<Poly>, Poly> projection_numerators(const ParamBasis& rows, const ParamVector& h) {
  const std::size_t k = rows.size();
  std::vector<std::vector<Poly>> G(k, std::vector<Poly>(k));
  std::vector<Poly> rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) G[i][j] = G[j][i] = dot(rows[i], rows[j]);
    rhs[i] = dot(rows[i], h);
  }
  Poly den = poly_det(G);
  if (den.is_zero()) throw SingularGram("lower-degree block is dependent");
  std::vector<Poly> num;
  num.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    auto Gj = G;
    for (std::size_t i = 0; i < k; ++i) Gj[i][j] = rhs[i];
    num.push_back(poly_det(std::move(Gj)));
  }
  return {std::move(num), std::move(den)};
}

/// Applies b_k -= q * b_j to the fraction-free Gram-Schmidt data (j < k):
/// only row k changes.
inline void gso_sub(ParamGso& g, std::size_t k, std::size_t j, const Poly& q) {
  for (std::size_t l = 0; l < j; ++l) g.lambda[k][l] -= q * g.lambda[j][l];
  g.lambda[k][j] -= q * g.d[j];
}

/// Steps 1-2. Returns the branching modulus (> 1) or 1 when the stage is done.
inline std::int64_t orthogonalize(Work& w, const LllOptions& opt) {
  ParamBasis& b = w.leaf.payload.basis;
  auto& log = w.leaf.payload.transcript;
  for (;;) {
    DegreeSortResult ds = sort_and_reduce_degrees(b);
    if (ds.hnf_rounds) log.push_back("step1: " + std::to_string(ds.hnf_rounds) + " HNF round(s) on dependent pilots");
    if (ds.dropped && !opt.allow_rank_drop)
      throw RankDeficient(std::to_string(ds.dropped) + " vector(s) reduced to zero; the input is dependent");
    b = std::move(ds.basis);

    bool restart = false;
    auto blocks = degree_blocks(b);
    for (auto eit = blocks.begin(); eit != blocks.end() && !restart; ++eit) {
      const int e = eit->first;
      for (auto dit = blocks.begin(); dit != eit && !restart; ++dit) {
        const std::vector<std::size_t>& low = dit->second;
        ParamBasis Bd;
        IntMatrix low_pilots;
        for (std::size_t i : low) {
          Bd.push_back(b[i]);
          low_pilots.push_back(pilot(b[i]));
        }
        for (std::size_t idx : eit->second) {
          IntVec hp = pilot(b[idx]);
          bool orth = true;
          for (const IntVec& p : low_pilots) orth = orth && dot(hp, p) == 0;
          if (orth) continue;
          auto [alpha, den] = projection_numerators(Bd, b[idx]);
          std::vector<EqpFunc> q;
          std::int64_t P = 1;
          for (const Poly& a : alpha) {
            q.push_back(nearest_ratfunc(a, den, opt.walk_limit));
            P = checked_lcm(P, q.back().modulus());
            raise_leaf(w, q.back().threshold());
          }
          if (P > 1) return P;
          ParamVector h = b[idx];
          std::ostringstream os;
          os << "step2: " << vec_name(idx) << " -=";
          for (std::size_t j = 0; j < Bd.size(); ++j) {
            const Poly& qj = q[j].piece(0);
            if (qj.is_zero()) continue;
            h = sub_mul(h, qj, Bd[j]);
            os << " (" << qj.to_string("s") << ")*" << vec_name(low[j]);
          }
          require_integral(h);
          log.push_back(os.str());
          b[idx] = std::move(h);
          if (degree(b[idx]) < e) {
            restart = true;
            break;
          }
          IntVec np = pilot(b[idx]);
          for (const IntVec& p : low_pilots)
            if (dot(np, p) != 0) throw CertificationFailure("reduced vector is not asymptotically orthogonal");
        }
      }
    }
    if (restart) continue;
    bool independent = true;
    for (const auto& [d, idx] : degree_blocks(b)) {
      IntMatrix pilots;
      for (std::size_t i : idx) pilots.push_back(pilot(b[i]));
      independent = independent && rank_of(pilots) == idx.size();
    }
    if (!independent) continue;
    IntMatrix all;
    for (const auto& v : b) all.push_back(pilot(v));
    if (rank_of(all) != b.size()) throw CertificationFailure("pilot vectors dependent after orthogonalization");
    return 1;
  }
}

/// Step 3 on the block at `pos` (consecutive, same degree): LLL on pilots,
/// then +-1 corrections in the order k ascending, j descending. The full
/// basis provides the Gram-Schmidt prefix.
inline void reduce_block(ParamBasis& b, const std::vector<std::size_t>& pos, const Rat& delta,
                         std::vector<std::string>& log) {
  IntMatrix pilots;
  for (std::size_t i : pos) pilots.push_back(pilot(b[i]));
  LllResult r;
  try {
    r = lll_reduce(pilots, delta);
  } catch (const DependentInput&) {
    throw DependentPilots("pilot vectors of a degree block are dependent");
  }
  if (r.U != identity_matrix(pos.size())) {
    ParamBasis block;
    for (std::size_t i : pos) block.push_back(b[i]);
    for (std::size_t k = 0; k < pos.size(); ++k) b[pos[k]] = combine(r.U[k], block);
    log.push_back("step3: LLL on degree " + std::to_string(degree(b[pos[0]])) + " pilots, U = " + matrix_string(r.U));
  }
  ParamGso g = param_gso(b);
  for (std::size_t a = 1; a < pos.size(); ++a) {
    for (std::size_t c = a; c-- > 0;) {
      const std::size_t k = pos[a], j = pos[c];
      HalfTest h = half_test(g.lambda[k][j], g.d[j], 0);
      long q = h.too_high() ? 1 : (h.too_low() ? -1 : 0);
      if (q == 0) continue;
      gso_sub(g, k, j, Poly(q));
      HalfTest after = half_test(g.lambda[k][j], g.d[j], 0);
      if (after.too_high() || after.too_low())
        throw CertificationFailure("same-degree coefficient does not tend to +-1/2: " + RatFunc(g.lambda[k][j] + Rat(q) * g.d[j], g.d[j]).to_string("s"));
      b[k] = sub_mul(b[k], Poly(q), b[j]);
      log.push_back("step3: " + vec_name(k) + (q > 0 ? " -= " : " += ") + vec_name(j));
    }
  }
}

inline void block_lll(Work& w, const Rat& delta) {
  ParamBasis& b = w.leaf.payload.basis;
  const Rat delta_prime = (delta + 1) / 2;
  for (const auto& [d, idx] : degree_blocks(b)) reduce_block(b, idx, d == 0 ? delta : delta_prime, w.leaf.payload.transcript);
}

/// (k, j) pairs for cross-degree reduction: k over vectors above the lowest
/// degree in order; j over strictly lower-degree vectors, last first.
inline std::vector<std::pair<std::size_t, std::size_t>> cross_schedule(const ParamBasis& b) {
  std::vector<std::pair<std::size_t, std::size_t>> s;
  for (std::size_t k = 0; k < b.size(); ++k)
    for (std::size_t j = k; j-- > 0;)
      if (degree(b[j]) < degree(b[k])) s.emplace_back(k, j);
  return s;
}

/// Step 4 from w.pos. Returns the branching modulus or 1 when finished.
inline std::int64_t cross_reduce(Work& w, const LllOptions& opt) {
  ParamBasis& b = w.leaf.payload.basis;
  auto schedule = cross_schedule(b);
  ParamGso g = param_gso(b);
  for (; w.pos < schedule.size(); ++w.pos) {
    auto [k, j] = schedule[w.pos];
    EqpFunc q = nearest_ratfunc(g.lambda[k][j], g.d[j], opt.walk_limit);
    raise_leaf(w, q.threshold());
    if (q.modulus() > 1) return q.modulus();
    const Poly& qp = q.piece(0);
    if (qp.is_zero()) continue;
    b[k] = sub_mul(b[k], qp, b[j]);
    require_integral(b[k]);
    gso_sub(g, k, j, qp);
    w.leaf.payload.transcript.push_back("step4: " + vec_name(k) + " -= (" + qp.to_string("s") + ")*" + vec_name(j));
  }
  return 1;
}

/// Runs leaves from `start` until `last` is done, depth first.
inline BranchTree<LeafBasis> run_pipeline(std::vector<Work> start, const Rat& delta, const LllOptions& opt, Stage last) {
  std::vector<Leaf<LeafBasis>> done;
  std::vector<Work> stack(start.rbegin(), start.rend());
  std::size_t total = stack.size();
  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    std::int64_t P = 1;
    while (P == 1 && w.stage != Stage::Done) {
      switch (w.stage) {
        case Stage::Orthogonalize:
          P = orthogonalize(w, opt);
          if (P == 1) w.stage = Stage::BlockLll;
          break;
        case Stage::BlockLll:
          block_lll(w, delta);
          w.stage = Stage::CrossReduce;
          w.pos = 0;
          break;
        case Stage::CrossReduce:
          P = cross_reduce(w, opt);
          if (P == 1) w.stage = Stage::Certify;
          break;
        case Stage::Certify: {
          ReductionCertificate c = certify_eventually_reduced(w.leaf.payload.basis, delta, opt.walk_limit);
          if (!c.ok) throw CertificationFailure(c.failure + " on leaf t = " + std::to_string(w.leaf.modulus) + "s + " + std::to_string(w.leaf.residue));
          raise_leaf(w, c.threshold);
          w.stage = Stage::Done;
          break;
        }
        case Stage::Done:
          break;
      }
      if (P == 1 && w.stage > last) break;
    }
    if (P == 1) {
      done.push_back(std::move(w.leaf));
      continue;
    }
    if (opt.on_branch) opt.on_branch(w.leaf, P);
    if (P > kMaxLeafModulus / w.leaf.modulus) throw ModulusOverflow("leaf modulus exceeds " + std::to_string(kMaxLeafModulus));
    total += static_cast<std::size_t>(P) - 1;
    if (total > opt.max_leaves) throw ModulusOverflow("branching exceeded " + std::to_string(opt.max_leaves) + " leaves");
    auto kids = split_leaf(w.leaf, w.leaf.modulus * P);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      if (!is_integral(it->payload.basis)) throw NonIntegral("branching left Z[s]");
      stack.push_back(Work{std::move(*it), w.stage, w.pos});
    }
  }
  return BranchTree<LeafBasis>(std::move(done));
}

inline void check_input(const ParamBasis& basis) {
  if (basis.empty()) throw EmptyBasis("parametric basis has no vectors");
  const std::size_t m = basis[0].size();
  for (const auto& v : basis)
    if (v.size() != m) throw ParseError("basis vectors have different lengths");
  if (!is_integral(basis)) throw NonIntegral("basis entries must have integer coefficients");
}

}  // namespace detail

/// Full pipeline: an eventually LLL-reduced basis (factor delta) per leaf.
inline ReducedOutput parametric_lll(const ParamBasis& basis, const Rat& delta = Rat(3, 4), const LllOptions& opt = {}) {
  check_delta(delta);
  detail::check_input(basis);
  std::vector<detail::Work> start(1);
  start[0].leaf = Leaf<LeafBasis>{1, 0, Int(0), LeafBasis{basis, {}}};
  ReducedOutput out;
  out.delta = delta;
  out.tree = detail::run_pipeline(std::move(start), delta, opt, detail::Stage::Certify);
  out.rank = out.tree.leaves().empty() ? 0 : out.tree.leaves()[0].payload.basis.size();
  return out;
}

/// Steps 1-2 only: sorted, per-degree independent pilots, pilots of
/// different degrees orthogonal.
inline BranchTree<LeafBasis> asym_orthogonalize(const ParamBasis& basis, const LllOptions& opt = {}) {
  detail::check_input(basis);
  std::vector<detail::Work> start(1);
  start[0].leaf = Leaf<LeafBasis>{1, 0, Int(0), LeafBasis{basis, {}}};
  return detail::run_pipeline(std::move(start), Rat(3, 4), opt, detail::Stage::Orthogonalize);
}

/// Step 3 on a single same-degree block with factor delta_prime.
inline ParamBasis lift_pilot_lll(const ParamBasis& block, const Rat& delta_prime, std::vector<std::string>* log = nullptr) {
  check_delta(delta_prime);
  if (block.empty()) return {};
  const int d = degree(block[0]);
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (degree(block[i]) != d) throw DegreeOutOfRange("block vectors must share one degree");
    pos.push_back(i);
  }
  ParamBasis b = block;
  std::vector<std::string> local;
  detail::reduce_block(b, pos, delta_prime, log ? *log : local);
  return b;
}

/// Step 4 on one basis already satisfying steps 1-3.
inline BranchTree<LeafBasis> final_cross_degree_size_reduce(const ParamBasis& basis, const LllOptions& opt = {}) {
  detail::check_input(basis);
  std::vector<detail::Work> start(1);
  start[0].leaf = Leaf<LeafBasis>{1, 0, Int(0), LeafBasis{basis, {}}};
  start[0].stage = detail::Stage::CrossReduce;
  return detail::run_pipeline(std::move(start), Rat(3, 4), opt, detail::Stage::CrossReduce);
}

}  // namespace paralat
