#pragma once

// Sampled re-checks of symbolic results against exact evaluation.
//
// Leaf (M, r, T) with T in t is sampled at t = r + M*ceil(T/M) + k*M, so
// every residue class of every leaf is covered at or above its threshold.
// Checks are exact; a failure records the first offending t.

#include <iomanip>
#include <optional>
#include <sstream>

#include "paralat/solvers.hpp"

namespace paralat {

struct CheckResult {
  std::string name;
  Int t;
  bool pass = true;
  std::string detail;
};

struct LeafReport {
  std::int64_t modulus = 1;
  std::int64_t residue = 0;
  Int threshold;  // in t
  std::vector<Int> samples;
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct VerificationReport {
  std::string check;
  std::vector<LeafReport> leaves;

  bool pass() const {
    for (const auto& l : leaves)
      if (!l.pass()) return false;
    return true;
  }
  std::size_t checks_run() const {
    std::size_t n = 0;
    for (const auto& l : leaves) n += l.checks.size();
    return n;
  }
  std::optional<CheckResult> first_failure() const {
    for (const auto& l : leaves)
      for (const auto& c : l.checks)
        if (!c.pass) return c;
    return std::nullopt;
  }

  std::string to_table() const {
    std::ostringstream os;
    os << check << ": " << (pass() ? "PASS" : "FAIL") << " (" << checks_run() << " checks, " << leaves.size() << " leaves)\n";
    os << std::left << std::setw(12) << "modulus" << std::setw(10) << "residue" << std::setw(12) << "threshold"
       << std::setw(8) << "checks" << "result\n";
    for (const auto& l : leaves) {
      os << std::setw(12) << l.modulus << std::setw(10) << l.residue << std::setw(12) << l.threshold.get_str()
         << std::setw(8) << l.checks.size();
      if (l.pass()) {
        os << "PASS\n";
      } else {
        for (const auto& c : l.checks)
          if (!c.pass) {
            os << "FAIL " << c.name << " at t = " << c.t.get_str() << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
            break;
          }
      }
    }
    return os.str();
  }
};

/// t = r + M*ceil(T/M) + k*M for k = 0..count-1, T the leaf threshold in t.
template <class P>
std::vector<Int> sample_points(const Leaf<P>& leaf, std::size_t count) {
  const Int M(static_cast<long>(leaf.modulus));
  const Int first = leaf.residue + M * ceil_div(leaf.t_threshold(), M);
  std::vector<Int> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(first + M * Int(static_cast<long>(k)));
  return out;
}

namespace detail {

template <class P>
LeafReport leaf_report(const Leaf<P>& leaf, std::size_t samples) {
  LeafReport r;
  r.modulus = leaf.modulus;
  r.residue = leaf.residue;
  r.threshold = leaf.t_threshold();
  r.samples = sample_points(leaf, samples);
  return r;
}

template <class P>
Int s_of(const Leaf<P>& leaf, const Int& t) {
  return floor_div(t - leaf.residue, Int(static_cast<long>(leaf.modulus)));
}

// Report for a leaf whose samples must also avoid the target's poles.
template <class P>
LeafReport leaf_report(Leaf<P> leaf, std::size_t samples, const RatFuncVec& target) {
  Int poles(0);
  for (const RatFunc& f : target) {
    Int p = pole_threshold(f);
    if (p > poles) poles = p;
  }
  const Int M(static_cast<long>(leaf.modulus));
  Int s = ceil_div(poles - leaf.residue, M);
  if (s > leaf.threshold) leaf.threshold = s;
  return leaf_report(leaf, samples);
}

inline std::string describe_lll_failure(const IntMatrix& b, const Rat& delta) {
  GramSchmidt<Rat> gs;
  try {
    gs = gram_schmidt(to_rat(b));
  } catch (const DependentInput&) {
    return "evaluated basis is dependent";
  }
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs(gs.mu[i][j]) > Rat(1, 2)) return "|mu(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")| = " + Rat(abs(gs.mu[i][j])).get_str() + " > 1/2";
  for (std::size_t i = 1; i < gs.size(); ++i) {
    const Rat& m = gs.mu[i][i - 1];
    if (gs.norms[i] < (delta - m * m) * gs.norms[i - 1]) return "Lovasz condition fails at position " + std::to_string(i + 1);
  }
  return "";
}

}  // namespace detail

/// Both LLL conditions with the pipeline's delta, at each sample.
inline VerificationReport check_reduced(const ReducedOutput& out, std::size_t samples_per_class = 3) {
  VerificationReport rep{"reduced", {}};
  for (const auto& leaf : out.tree.leaves()) {
    LeafReport lr = detail::leaf_report(leaf, samples_per_class);
    for (const Int& t : lr.samples) {
      IntMatrix b = eval_int(leaf.payload.basis, detail::s_of(leaf, t));
      CheckResult c{"lll", t, true, ""};
      if (!b.empty() && !is_lll_reduced(b, out.delta)) {
        c.pass = false;
        c.detail = detail::describe_lll_failure(b, out.delta);
      }
      lr.checks.push_back(std::move(c));
    }
    rep.leaves.push_back(std::move(lr));
  }
  return rep;
}

/// The leaf basis spans the same lattice as the input at each sample.
inline VerificationReport check_span(const ParamBasis& before, const ReducedOutput& after, std::size_t samples_per_class = 3) {
  VerificationReport rep{"span", {}};
  for (const auto& leaf : after.tree.leaves()) {
    LeafReport lr = detail::leaf_report(leaf, samples_per_class);
    for (const Int& t : lr.samples) {
      IntMatrix got = eval_int(leaf.payload.basis, detail::s_of(leaf, t));
      IntMatrix want = eval_int(before, t);
      CheckResult c{"span", t, same_lattice(got, want), ""};
      if (!c.pass) c.detail = "lattices differ (HNF mismatch)";
      lr.checks.push_back(std::move(c));
    }
    rep.leaves.push_back(std::move(lr));
  }
  return rep;
}

/// Formula value lies in the lattice and attains the brute-force optimum:
/// shortest nonzero norm without a target, closest distance with one.
inline VerificationReport check_optimality(const EqpVectorFormula& formula, const ParamBasis& basis,
                                           const std::optional<RatFuncVec>& target, std::size_t samples_per_class = 3,
                                           std::size_t max_rank = 4) {
  VerificationReport rep{target ? "cvp-optimal" : "svp-optimal", {}};
  for (const auto& leaf : formula.tree.leaves()) {
    LeafReport lr = detail::leaf_report(leaf, samples_per_class);
    for (const Int& t : lr.samples) {
      if (basis.size() > max_rank) {
        lr.checks.push_back({"rank", t, false, "rank " + std::to_string(basis.size()) + " is above the oracle limit"});
        continue;
      }
      IntMatrix b = eval_int(basis, t);
      IntVec v = formula.at(t);
      if (!basis.empty() && !in_lattice(b, v)) {
        lr.checks.push_back({"member", t, false, "formula value is not in the lattice"});
        continue;
      }
      if (target) {
        RatVec x = eval(*target, Rat(t));
        Rat got = dist2(v, x);
        Rat best = basis.empty() ? dist2(IntVec(x.size(), Int(0)), x) : cvp_oracle(b, x).value;
        lr.checks.push_back({"distance", t, got == best, got == best ? "" : "distance^2 " + got.get_str() + " vs optimum " + best.get_str()});
      } else {
        Int got = norm2(v);
        Rat best = svp_oracle(b).value;
        bool ok = got != 0 && Rat(got) == best;
        lr.checks.push_back({"norm", t, ok, ok ? "" : "norm^2 " + got.get_str() + " vs optimum " + best.get_str()});
      }
    }
    rep.leaves.push_back(std::move(lr));
  }
  return rep;
}

/// At each sample, every closest vector's last coefficient a_n over the
/// reduced basis lies in the searched window around floor(c_n), where c_n
/// is the last coordinate of the target's projection, and satisfies
/// |a_n - c_n| <= 2^(n/2-1) (checked squared: 4 (a_n - c_n)^2 <= 2^n).
inline VerificationReport check_cvp_window(const ReducedOutput& red, const RatFuncVec& target, std::size_t samples_per_class = 3) {
  VerificationReport rep{"cvp-window", {}};
  for (const auto& leaf : red.tree.leaves()) {
    LeafReport lr = detail::leaf_report(leaf, samples_per_class, target);
    const std::size_t n = leaf.payload.basis.size();
    if (n == 0) {  // nothing to search
      rep.leaves.push_back(std::move(lr));
      continue;
    }
    auto [lo, hi] = cvp_window(n);
    const Rat bound(pow_int(Int(2), n));
    for (const Int& t : lr.samples) {
      IntMatrix g = eval_int(leaf.payload.basis, detail::s_of(leaf, t));
      RatVec x = eval(target, Rat(t));
      RatVec c = projection_coefficients(to_rat(g), x);
      Int f = floor_rat(c[n - 1]);
      CheckResult res{"window", t, true, ""};
      for (const OracleResult& o : cvp_all_optimal(g, x)) {
        Int off = o.coeffs[n - 1] - f;
        Rat gap = Rat(o.coeffs[n - 1]) - c[n - 1];
        if (off < lo || off > hi) {
          res.pass = false;
          res.detail = "optimal last coefficient offset " + off.get_str() + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
          break;
        }
        if (Rat(4) * gap * gap > bound) {
          res.pass = false;
          res.detail = "|a_n - c_n| = " + Rat(abs(gap)).get_str() + " above 2^(n/2-1)";
          break;
        }
      }
      lr.checks.push_back(std::move(res));
    }
    rep.leaves.push_back(std::move(lr));
  }
  return rep;
}

/// Nearest-plane distance to the projected target is at most
/// 2^(n/2-1) |g*_n| at each sample (squared: 4 * d^2 <= 2^n |g*_n|^2).
inline VerificationReport check_babai_bound(const ReducedOutput& red, const RatFuncVec& target, std::size_t samples_per_class = 3) {
  VerificationReport rep{"babai-bound", {}};
  for (const auto& leaf : red.tree.leaves()) {
    LeafReport lr = detail::leaf_report(leaf, samples_per_class, target);
    const std::size_t n = leaf.payload.basis.size();
    for (const Int& t : lr.samples) {
      if (n == 0) break;
      IntMatrix g = eval_int(leaf.payload.basis, detail::s_of(leaf, t));
      RatVec x = eval(target, Rat(t));
      RatVec c = projection_coefficients(to_rat(g), x);
      RatVec y(x.size(), Rat(0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < y.size(); ++k) y[k] += c[i] * g[i][k];
      BabaiResult w = babai_nearest_plane(g, y);
      GramSchmidt<Rat> gs = gram_schmidt(to_rat(g));
      Rat lhs = Rat(4) * w.value, rhs = Rat(pow_int(Int(2), n)) * gs.norms[n - 1];
      lr.checks.push_back({"babai", t, lhs <= rhs, lhs <= rhs ? "" : "nearest-plane distance above the bound"});
    }
    rep.leaves.push_back(std::move(lr));
  }
  return rep;
}

}  // namespace paralat
