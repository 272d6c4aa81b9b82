#pragma once

// Eventually quasi-polynomial functions of an integer parameter t: for
// t >= threshold the value is pieces[t mod modulus](t). Pieces are kept in the
// original variable t.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "paralat/eventual.hpp"

namespace paralat {

class EqpFunc {
 public:
  EqpFunc() : modulus_(1), pieces_(1) {}
  EqpFunc(const Poly& p) : modulus_(1), pieces_{p} {}  // NOLINT: polynomials are EQP
  EqpFunc(Int threshold, std::int64_t modulus, std::vector<Poly> pieces)
      : threshold_(std::move(threshold)), modulus_(modulus), pieces_(std::move(pieces)) {
    if (modulus_ < 1 || static_cast<std::int64_t>(pieces_.size()) != modulus_)
      throw InvalidRefinement("EQP needs exactly one piece per residue");
    if (threshold_ < 0) threshold_ = 0;
  }

  const Int& threshold() const { return threshold_; }
  std::int64_t modulus() const { return modulus_; }
  const std::vector<Poly>& pieces() const { return pieces_; }
  const Poly& piece(std::int64_t residue) const { return pieces_[static_cast<std::size_t>(residue)]; }
  const Poly& piece_for(const Int& t) const { return piece(mod_floor(t, Int(static_cast<long>(modulus_))).get_si()); }

  Rat eval(const Int& t) const { return piece_for(t).eval(Rat(t)); }

  /// Same function with modulus a multiple of the current one.
  EqpFunc refine(std::int64_t modulus) const {
    if (modulus < 1 || modulus % modulus_ != 0)
      throw InvalidRefinement(std::to_string(modulus) + " is not a multiple of " + std::to_string(modulus_));
    std::vector<Poly> p;
    p.reserve(static_cast<std::size_t>(modulus));
    for (std::int64_t r = 0; r < modulus; ++r) p.push_back(pieces_[static_cast<std::size_t>(r % modulus_)]);
    return EqpFunc(threshold_, modulus, std::move(p));
  }

  EqpFunc with_threshold(const Int& t) const {
    EqpFunc e = *this;
    e.threshold_ = t > threshold_ ? t : threshold_;
    return e;
  }

  /// All pieces share degree and leading coefficient.
  bool is_mild() const {
    for (const Poly& p : pieces_)
      if (p.degree() != pieces_[0].degree() || p.lead() != pieces_[0].lead()) return false;
    return true;
  }

  template <class Op>
  friend EqpFunc combine(const EqpFunc& a, const EqpFunc& b, Op op) {
    const std::int64_t m = checked_lcm(a.modulus_, b.modulus_);
    std::vector<Poly> p;
    p.reserve(static_cast<std::size_t>(m));
    for (std::int64_t r = 0; r < m; ++r) p.push_back(op(a.piece(r % a.modulus_), b.piece(r % b.modulus_)));
    return EqpFunc(a.threshold_ > b.threshold_ ? a.threshold_ : b.threshold_, m, std::move(p));
  }

  friend EqpFunc operator+(const EqpFunc& a, const EqpFunc& b) {
    return combine(a, b, [](const Poly& x, const Poly& y) { return x + y; });
  }
  friend EqpFunc operator-(const EqpFunc& a, const EqpFunc& b) {
    return combine(a, b, [](const Poly& x, const Poly& y) { return x - y; });
  }
  friend EqpFunc operator*(const EqpFunc& a, const EqpFunc& b) {
    return combine(a, b, [](const Poly& x, const Poly& y) { return x * y; });
  }
  friend EqpFunc operator*(const Rat& s, EqpFunc a) {
    for (Poly& p : a.pieces_) p *= s;
    return a;
  }
  EqpFunc operator-() const { return Rat(-1) * *this; }

  friend bool operator==(const EqpFunc& a, const EqpFunc& b) {
    return a.threshold_ == b.threshold_ && a.modulus_ == b.modulus_ && a.pieces_ == b.pieces_;
  }

  /// Case-split rendering, one line per residue class.
  std::string to_string(std::string_view var = "t") const {
    std::ostringstream os;
    if (modulus_ == 1) {
      os << pieces_[0].to_string(var);
    } else {
      for (std::int64_t r = 0; r < modulus_; ++r) {
        if (r) os << "\n";
        os << piece(r).to_string(var) << "  if " << var << " ≡ " << r << " (mod " << modulus_ << ")";
      }
    }
    os << (modulus_ == 1 ? "  " : "\n") << "for " << var << " ≥ " << threshold_.get_str();
    return os.str();
  }

 private:
  Int threshold_;
  std::int64_t modulus_;
  std::vector<Poly> pieces_;
};

namespace detail {

/// True iff p(P*s + i) - p(i) has every coefficient divisible by D for each
/// residue i, so that restricting (p - (p(i) mod D)) / D to the class gives a
/// polynomial with integer coefficients in s.
inline bool integral_on_classes(const Poly& p, std::int64_t P, const Int& D) {
  const Int M(static_cast<long>(P));
  for (std::int64_t i = 0; i < P; ++i) {
    const Int I(static_cast<long>(i));
    Poly g = p.substitute(M, I) - Poly(p.eval(Rat(I)));
    for (const Rat& c : g.coeffs())
      if (!is_integer(c) || mod_floor(c.get_num(), D) != 0) return false;
  }
  return true;
}

/// Smallest positive P dividing D with integral restrictions to every class
/// mod P. P = D always qualifies.
inline std::int64_t residue_period(const Poly& p, const Int& D) {
  if (D == 1 || p.degree() <= 0) return 1;
  for (std::int64_t P = 1; P <= kMaxModulus; ++P) {
    Int ip(static_cast<long>(P));
    if (mod_floor(D, ip) != 0) continue;
    if (integral_on_classes(p, P, D)) return P;
  }
  throw ModulusOverflow("floor period exceeds " + std::to_string(kMaxModulus));
}

}  // namespace detail

/// floor(f(t) / h(t)) as a mild integer-valued EQP.
inline EqpFunc floor_ratfunc(Poly f, Poly h, std::size_t walk_limit = kDefaultWalk) {
  if (h.is_zero()) throw DivByZero("floor of a rational function with zero denominator");
  if (h.lead() < 0) {
    f = -f;
    h = -h;
  }
  Int threshold = eventual_sign(h, walk_limit).threshold;  // h(t) > 0 from here on
  auto [q, r] = divmod(f, h);
  auto [D, p] = integral_scaling(q);
  const std::int64_t P = detail::residue_period(p, D);
  const RatFunc tail(r, h);
  const SignCertificate tail_sign = eventual_sign(tail, walk_limit);
  auto raise = [&](const Int& t) {
    if (t > threshold) threshold = t;
  };

  // Fractional part c_i of q on each class, as a numerator over D.
  std::vector<Int> frac;
  frac.reserve(static_cast<std::size_t>(P));
  for (std::int64_t i = 0; i < P; ++i) frac.push_back(mod_floor(p.eval(Rat(static_cast<long>(i))).get_num(), D));

  // -c < tail < 1 - c is monotone in c, so the smallest and largest nonzero
  // fractional parts certify every class at once.
  long zero_offset = 0;
  if (!tail.is_zero()) {
    std::optional<Int> lo_c, hi_c;
    bool any_zero = false;
    for (const Int& c : frac) {
      if (c == 0) {
        any_zero = true;
        continue;
      }
      if (!lo_c || c < *lo_c) lo_c = c;
      if (!hi_c || c > *hi_c) hi_c = c;
    }
    if (lo_c) {
      Ordering lo = eventual_compare(tail, RatFunc(-make_rat(*lo_c, D)), walk_limit);
      Ordering hi = eventual_compare(tail, RatFunc(Rat(1) - make_rat(*hi_c, D)), walk_limit);
      if (lo.cmp != Cmp::GT || hi.cmp != Cmp::LT) throw CertificationFailure("floor tail not eventually small");
      raise(lo.threshold);
      raise(hi.threshold);
    }
    if (any_zero) {
      // the tail's sign decides the floor on classes with c = 0
      raise(tail_sign.threshold);
      if (tail_sign.sign > 0) {
        Ordering hi = eventual_compare(tail, RatFunc(1), walk_limit);
        if (hi.cmp != Cmp::LT) throw CertificationFailure("floor tail not eventually below 1");
        raise(hi.threshold);
      } else {
        Ordering lo = eventual_compare(tail, RatFunc(-1), walk_limit);
        if (lo.cmp != Cmp::GT) throw CertificationFailure("floor tail not eventually above -1");
        raise(lo.threshold);
        zero_offset = -1;
      }
    }
  }

  std::vector<Poly> pieces;
  pieces.reserve(static_cast<std::size_t>(P));
  const Poly scaled = p * (Rat(1) / Rat(D));
  for (const Int& c : frac) pieces.push_back(scaled + Poly(make_rat(-c, D) + Rat(c == 0 ? zero_offset : 0)));
  return EqpFunc(threshold, P, std::move(pieces));
}

inline EqpFunc floor_ratfunc(const RatFunc& x, std::size_t walk_limit = kDefaultWalk) {
  return floor_ratfunc(x.num(), x.den(), walk_limit);
}

/// Nearest integer to f(t) / h(t), ties rounded up: floor((2f + h) / (2h)).
inline EqpFunc nearest_ratfunc(const Poly& f, const Poly& h, std::size_t walk_limit = kDefaultWalk) {
  if (h.is_zero()) throw DivByZero("rounding of a rational function with zero denominator");
  return floor_ratfunc(Rat(2) * f + h, Rat(2) * h, walk_limit);
}

inline EqpFunc nearest_ratfunc(const RatFunc& x, std::size_t walk_limit = kDefaultWalk) {
  return nearest_ratfunc(x.num(), x.den(), walk_limit);
}

struct EqpSelection {
  std::int64_t modulus = 1;
  std::vector<std::size_t> index;  // per residue class, the minimizing candidate
  std::vector<Int> thresholds;     // per residue class
  Int threshold;                   // max over classes and candidate thresholds
};

/// Per residue class of the common modulus, an eventually minimal candidate.
inline EqpSelection eqp_eventual_min(const std::vector<EqpFunc>& candidates, std::size_t walk_limit = kDefaultWalk) {
  if (candidates.empty()) throw EmptyBasis("eqp_eventual_min of an empty candidate list");
  EqpSelection sel;
  for (const EqpFunc& c : candidates) {
    sel.modulus = checked_lcm(sel.modulus, c.modulus());
    if (c.threshold() > sel.threshold) sel.threshold = c.threshold();
  }
  for (std::int64_t r = 0; r < sel.modulus; ++r) {
    std::vector<RatFunc> vals;
    vals.reserve(candidates.size());
    for (const EqpFunc& c : candidates) vals.emplace_back(c.piece(r % c.modulus()));
    EventualMin m = eventual_argmin(vals, walk_limit);
    sel.index.push_back(m.index);
    sel.thresholds.push_back(m.threshold);
    if (m.threshold > sel.threshold) sel.threshold = m.threshold;
  }
  return sel;
}

}  // namespace paralat
