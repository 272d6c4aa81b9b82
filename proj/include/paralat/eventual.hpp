#pragma once

// "Eventually" made constructive: every sign or ordering claim about a
// polynomial or rational function comes with an integer threshold T such
// that the claim holds at every integer t >= T.
//
// Thresholds start from the Cauchy root bound 1 + max|a_k / a_d|, which
// exceeds every real root. Below that bound the integers are checked one by
// one (at most `walk_limit` of them), which tightens T without sampling.

#include <cstddef>
#include <vector>

#include "paralat/ratfunc.hpp"

namespace paralat {

inline constexpr std::size_t kDefaultWalk = 4096;

struct SignCertificate {
  int sign = 0;   // -1, 0, +1
  Int threshold;  // strict sign holds for all integers t >= threshold
};

/// Smallest integer strictly above every real root (for deg >= 1).
inline Int cauchy_bound(const Poly& f) {
  const int d = f.degree();
  if (d <= 0) return Int(0);
  const Rat lead = abs(f.lead());
  Rat m(0);
  for (int k = 0; k < d; ++k) {
    Rat q = abs(f.coeff(k)) / lead;
    if (q > m) m = q;
  }
  return ceil_rat(Rat(1) + m);
}

inline SignCertificate eventual_sign(const Poly& f, std::size_t walk_limit = kDefaultWalk) {
  if (f.is_zero()) return {0, Int(0)};
  const int s = sign(f.lead());
  if (f.degree() == 0) return {s, Int(0)};
  Int t = cauchy_bound(f);
  for (std::size_t steps = 0; steps < walk_limit && t > 0; ++steps) {
    Int prev = t - 1;
    if (sign(f.eval(Rat(prev))) != s) break;
    t = prev;
  }
  return {s, t};
}

enum class Cmp { LT, EQ, GT };

inline const char* to_string(Cmp c) {
  switch (c) {
    case Cmp::LT: return "LT";
    case Cmp::EQ: return "EQ";
    case Cmp::GT: return "GT";
  }
  return "?";
}

struct Ordering {
  Cmp cmp = Cmp::EQ;
  Int threshold;
};

/// Threshold beyond which the (monic) denominator has no integer zero.
inline Int pole_threshold(const RatFunc& f, std::size_t walk_limit = kDefaultWalk) {
  return eventual_sign(f.den(), walk_limit).threshold;
}

/// Sign of a rational function for all large t; the canonical denominator is
/// monic, so the eventual sign is the numerator's.
inline SignCertificate eventual_sign(const RatFunc& f, std::size_t walk_limit = kDefaultWalk) {
  SignCertificate n = eventual_sign(f.num(), walk_limit);
  Int d = pole_threshold(f, walk_limit);
  if (d > n.threshold) n.threshold = d;
  return n;
}

/// Ordering of f(t) against g(t) valid at every integer t >= threshold
/// (including that both are defined there).
inline Ordering eventual_compare(const RatFunc& f, const RatFunc& g, std::size_t walk_limit = kDefaultWalk) {
  Int poles = pole_threshold(f, walk_limit);
  Int pg = pole_threshold(g, walk_limit);
  if (pg > poles) poles = pg;
  if (f == g) return {Cmp::EQ, poles};
  SignCertificate s = eventual_sign(f - g, walk_limit);
  Ordering o{s.sign < 0 ? Cmp::LT : (s.sign > 0 ? Cmp::GT : Cmp::EQ), s.threshold};
  if (poles > o.threshold) o.threshold = poles;
  return o;
}

/// Eventual order of two polynomials without a threshold: compares the
/// coefficient sequences from the top degree down.
inline int eventual_cmp(const Poly& a, const Poly& b) {
  const int da = a.degree(), db = b.degree();
  const int top = da > db ? da : db;
  for (int k = top; k >= 0; --k) {
    const Rat ca = a.coeff(k), cb = b.coeff(k);
    if (ca != cb) return ca < cb ? -1 : 1;
  }
  return 0;
}

struct EventualMin {
  std::size_t index = 0;
  Int threshold;  // values[index](t) <= values[j](t) for all j, all t >= threshold
};

/// Index of an eventually minimal value. Ties go to the earliest index.
inline EventualMin eventual_argmin(const std::vector<RatFunc>& values, std::size_t walk_limit = kDefaultWalk) {
  if (values.empty()) throw EmptyBasis("eventual_argmin of an empty candidate list");
  std::size_t best = 0;
  for (std::size_t j = 1; j < values.size(); ++j)
    if (eventual_sign(values[j] - values[best], 0).sign < 0) best = j;
  EventualMin out{best, Int(0)};
  for (std::size_t j = 0; j < values.size(); ++j) {
    Ordering o = eventual_compare(values[best], values[j], walk_limit);
    if (o.cmp == Cmp::GT) throw CertificationFailure("eventual_argmin selected a non-minimal candidate");
    if (o.threshold > out.threshold) out.threshold = o.threshold;
  }
  return out;
}

}  // namespace paralat
