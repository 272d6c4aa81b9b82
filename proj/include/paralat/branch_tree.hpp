#pragma once

// A partition of the parameter range into arithmetic progressions
// t = modulus * s + residue (s >= threshold), each carrying a payload written
// in the progression variable s.
//
// A payload type P must provide `P substitute(const P&, const Int& k, const Int& j)`
// returning the payload re-expressed in s' where s = k * s' + j.

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "paralat/eqp.hpp"

namespace paralat {

template <class P>
struct Leaf {
  std::int64_t modulus = 1;
  std::int64_t residue = 0;
  Int threshold;  // in the progression variable s
  P payload;

  /// Parameter value for progression index s.
  Int t_at(const Int& s) const { return Int(static_cast<long>(modulus)) * s + residue; }
  /// Smallest t covered by the leaf.
  Int t_threshold() const { return t_at(threshold); }
  bool covers(const Int& t) const {
    return mod_floor(t, Int(static_cast<long>(modulus))) == residue && t >= t_threshold();
  }
};

/// Splits a leaf into the progressions of a finer modulus.
template <class P>
std::vector<Leaf<P>> split_leaf(const Leaf<P>& leaf, std::int64_t new_modulus) {
  if (new_modulus < 1 || new_modulus % leaf.modulus != 0)
    throw InvalidRefinement(std::to_string(new_modulus) + " is not a multiple of " + std::to_string(leaf.modulus));
  const std::int64_t k = new_modulus / leaf.modulus;
  std::vector<Leaf<P>> out;
  out.reserve(static_cast<std::size_t>(k));
  const Int K(static_cast<long>(k));
  for (std::int64_t j = 0; j < k; ++j) {
    const Int J(static_cast<long>(j));
    Leaf<P> child;
    child.modulus = new_modulus;
    child.residue = leaf.residue + j * leaf.modulus;
    child.threshold = ceil_div(leaf.threshold - J, K);
    if (child.threshold < 0) child.threshold = 0;
    child.payload = k == 1 ? leaf.payload : substitute(leaf.payload, K, J);
    out.push_back(std::move(child));
  }
  return out;
}

template <class P>
class BranchTree {
 public:
  BranchTree() = default;
  explicit BranchTree(P root) { leaves_.push_back(Leaf<P>{1, 0, Int(0), std::move(root)}); }
  explicit BranchTree(std::vector<Leaf<P>> leaves) : leaves_(std::move(leaves)) {}

  const std::vector<Leaf<P>>& leaves() const { return leaves_; }
  std::vector<Leaf<P>>& leaves() { return leaves_; }
  std::size_t size() const { return leaves_.size(); }

  /// Replaces leaf `index` by its refinement to `new_modulus`.
  void branch(std::size_t index, std::int64_t new_modulus) {
    std::vector<Leaf<P>> kids = split_leaf(leaves_.at(index), new_modulus);
    leaves_.erase(leaves_.begin() + static_cast<std::ptrdiff_t>(index));
    leaves_.insert(leaves_.begin() + static_cast<std::ptrdiff_t>(index), kids.begin(), kids.end());
  }

  /// lcm of the leaf moduli.
  std::int64_t common_modulus() const {
    std::int64_t m = 1;
    for (const Leaf<P>& l : leaves_) m = checked_lcm(m, l.modulus, kMaxLeafModulus);
    return m;
  }

  /// Max over leaves of the first covered t.
  Int global_threshold() const {
    Int t(0);
    for (const Leaf<P>& l : leaves_) {
      Int lt = l.t_threshold();
      if (lt > t) t = lt;
    }
    return t;
  }

  /// Every residue of the common modulus is covered by exactly one leaf.
  bool is_partition() const {
    if (leaves_.empty()) return false;
    for (const Leaf<P>& l : leaves_)
      if (l.modulus < 1 || l.residue < 0 || l.residue >= l.modulus) return false;
    const std::int64_t L = common_modulus();
    if (L <= kMaxModulus) {
      std::vector<int> hits(static_cast<std::size_t>(L), 0);
      for (const Leaf<P>& l : leaves_)
        for (std::int64_t r = l.residue; r < L; r += l.modulus) ++hits[static_cast<std::size_t>(r)];
      for (int h : hits)
        if (h != 1) return false;
      return true;
    }
    // Too many residues to list: pairwise disjoint with densities summing to
    // one is equivalent.
    Rat density(0);
    for (const Leaf<P>& l : leaves_) density += make_rat(Int(1), Int(static_cast<long>(l.modulus)));
    if (density != 1) return false;
    for (std::size_t a = 0; a < leaves_.size(); ++a)
      for (std::size_t b = a + 1; b < leaves_.size(); ++b) {
        const std::int64_t g = std::gcd(leaves_[a].modulus, leaves_[b].modulus);
        if ((leaves_[a].residue - leaves_[b].residue) % g == 0) return false;
      }
    return true;
  }

  /// Leaf whose progression contains t (ignoring thresholds).
  const Leaf<P>& leaf_for(const Int& t) const {
    for (const Leaf<P>& l : leaves_)
      if (mod_floor(t, Int(static_cast<long>(l.modulus))) == l.residue) return l;
    throw InvalidRefinement("no leaf covers t = " + t.get_str());
  }

 private:
  std::vector<Leaf<P>> leaves_;
};

/// Rewrites a payload in s (t = M s + r) back in terms of t.
inline Poly unsubstitute(const Poly& p, std::int64_t M, std::int64_t r) {
  return p.compose_affine(make_rat(Int(1), Int(static_cast<long>(M))), make_rat(Int(static_cast<long>(-r)), Int(static_cast<long>(M))));
}

/// Flattens a tree of scalar payloads into one EQP in the original t.
inline EqpFunc flatten(const BranchTree<Poly>& tree) {
  const std::int64_t L = tree.common_modulus();
  if (L > kMaxModulus) throw ModulusOverflow("tree modulus " + std::to_string(L) + " too large to flatten");
  std::vector<Poly> pieces;
  pieces.reserve(static_cast<std::size_t>(L));
  for (std::int64_t r = 0; r < L; ++r) {
    const Leaf<Poly>& l = tree.leaf_for(Int(static_cast<long>(r)));
    pieces.push_back(unsubstitute(l.payload, l.modulus, l.residue));
  }
  return EqpFunc(tree.global_threshold(), L, std::move(pieces));
}

/// Flattens vector payloads coordinatewise.
inline std::vector<EqpFunc> flatten(const BranchTree<PolyVec>& tree) {
  std::vector<EqpFunc> out;
  if (tree.size() == 0) return out;
  const std::size_t m = tree.leaves()[0].payload.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Leaf<Poly>> leaves;
    for (const Leaf<PolyVec>& l : tree.leaves()) leaves.push_back({l.modulus, l.residue, l.threshold, l.payload.at(i)});
    out.push_back(flatten(BranchTree<Poly>(std::move(leaves))));
  }
  return out;
}

inline Poly substitute(const Poly& p, const Int& k, const Int& j) { return p.substitute(k, j); }

}  // namespace paralat
