#pragma once

// Univariate polynomials over Q in a single parameter (conventionally t).
//
// Coefficients are stored lowest degree first with no trailing zeros, so the
// zero polynomial is the empty sequence and structural equality is value
// equality.

#include <algorithm>
#include <climits>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "paralat/rational.hpp"

namespace paralat {

/// Degree of the zero polynomial; compares below every real degree.
inline constexpr int kNegInf = INT_MIN;

class Poly {
 public:
  Poly() = default;
  Poly(const Rat& c) {  // NOLINT: constants convert implicitly
    if (c != 0) c_.push_back(c);
  }
  Poly(const Int& c) : Poly(Rat(c)) {}  // NOLINT
  Poly(long c) : Poly(Rat(c)) {}        // NOLINT
  Poly(int c) : Poly(Rat(c)) {}         // NOLINT

  /// Coefficients lowest degree first.
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static Poly monomial(const Rat& c, int k) {
    if (c == 0) return {};
    std::vector<Rat> v(static_cast<std::size_t>(k) + 1);
    v.back() = c;
    return Poly(std::move(v));
  }
  /// The identity polynomial t.
  static Poly t() { return monomial(Rat(1), 1); }

  int degree() const { return c_.empty() ? kNegInf : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rat>& coeffs() const { return c_; }

  /// Coefficient of t^k; zero beyond the degree.
  Rat coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Rat(0);
    return c_[static_cast<std::size_t>(k)];
  }
  Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }

  bool is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return x.get_den() == 1; });
  }

  /// Least common multiple of the coefficient denominators.
  Int denominator_lcm() const {
    Int d(1);
    for (const Rat& x : c_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    return d;
  }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// g(t) = f(a*t + b).
  Poly compose_affine(const Rat& a, const Rat& b) const {
    Poly lin(std::vector<Rat>{b, a});
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Poly(*it);
    return acc;
  }

  /// g(s) = f(M*s + r): restriction to the progression t = M*s + r.
  Poly substitute(const Int& M, const Int& r) const { return compose_affine(Rat(M), Rat(r)); }

  Poly operator-() const {
    Poly p = *this;
    for (Rat& x : p.c_) x = -x;
    return p;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Rat& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (Rat& x : c_) x *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
  friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
  friend Poly operator*(Poly a, long s) { return a *= Rat(s); }
  friend Poly operator*(long s, Poly a) { return a *= Rat(s); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Adds s * o in place without temporaries for the product.
  void add_scaled(const Poly& o, const Rat& s) {
    if (s == 0 || o.is_zero()) return;
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += s * o.c_[i];
    trim();
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Human-readable form, highest degree first, e.g. "t^2 - 100*t".
  std::string to_string(std::string_view var = "t") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      const Rat& a = c_[static_cast<std::size_t>(k)];
      if (a == 0) continue;
      Rat mag = abs(a);
      if (first) {
        if (a < 0) os << "-";
      } else {
        os << (a < 0 ? " - " : " + ");
      }
      first = false;
      bool unit = (mag == 1);
      if (k == 0 || !unit) os << mag.get_str();
      if (k > 0) {
        if (!unit) os << "*";
        os << var;
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

/// Euclidean division over Q: f = q*h + r with deg r < deg h.
inline std::pair<Poly, Poly> divmod(const Poly& f, const Poly& h) {
  if (h.is_zero()) throw DivByZero("polynomial division by zero");
  Poly r = f;
  const int dh = h.degree();
  if (r.degree() < dh) return {Poly(), r};
  std::vector<Rat> q(static_cast<std::size_t>(r.degree() - dh) + 1);
  const Rat lh = h.lead();
  while (!r.is_zero() && r.degree() >= dh) {
    int k = r.degree() - dh;
    Rat c = r.lead() / lh;
    q[static_cast<std::size_t>(k)] = c;
    r -= Poly::monomial(c, k) * h;
  }
  return {Poly(std::move(q)), r};
}

namespace detail {

// Integer coefficient vectors, lowest degree first, no trailing zeros.
using ZPoly = std::vector<Int>;

inline void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Divides out the content and makes the leading coefficient positive.
inline void make_primitive(ZPoly& a) {
  if (a.empty()) return;
  Int g(0);
  for (const Int& x : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (a.back() < 0) g = -g;
  if (g != 1)
    for (Int& x : a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

inline ZPoly to_zpoly(const Poly& p) {
  const Int d = p.denominator_lcm();
  ZPoly out;
  out.reserve(p.coeffs().size());
  for (const Rat& c : p.coeffs()) out.push_back(c.get_num() * (d / c.get_den()));
  make_primitive(out);
  return out;
}

/// Replaces a by the primitive part of its pseudo-remainder modulo b.
inline void prem_primitive(ZPoly& a, const ZPoly& b) {
  const std::size_t db = b.size() - 1;
  const Int& lb = b.back();
  while (a.size() > db) {
    const std::size_t k = a.size() - 1 - db;
    const Int la = a.back();
    for (Int& x : a) x *= lb;
    for (std::size_t i = 0; i <= db; ++i) a[k + i] -= la * b[i];
    trim(a);
  }
  make_primitive(a);
}

}  // namespace detail

/// Monic gcd over Q; gcd(0, 0) = 0. Runs a primitive remainder sequence over
/// Z to keep coefficients small.
inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  detail::ZPoly A = detail::to_zpoly(a), B = detail::to_zpoly(b);
  if (A.size() < B.size()) std::swap(A, B);
  while (!B.empty()) {
    if (B.size() == 1) return Poly(1);
    detail::prem_primitive(A, B);
    std::swap(A, B);
  }
  std::vector<Rat> c;
  c.reserve(A.size());
  for (const Int& x : A) c.push_back(make_rat(x, A.back()));
  return Poly(std::move(c));
}

/// (D, p) with p = D*f integral and D the least such positive integer.
inline std::pair<Int, Poly> integral_scaling(const Poly& f) {
  Int d = f.denominator_lcm();
  return {d, f * Rat(d)};
}

using PolyVec = std::vector<Poly>;

inline Poly dot(const PolyVec& a, const PolyVec& b) {
  Poly acc;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline PolyVec substitute(const PolyVec& v, const Int& M, const Int& r) {
  PolyVec out;
  out.reserve(v.size());
  for (const Poly& p : v) out.push_back(p.substitute(M, r));
  return out;
}

inline RatVec eval(const PolyVec& v, const Rat& x) {
  RatVec out;
  out.reserve(v.size());
  for (const Poly& p : v) out.push_back(p.eval(x));
  return out;
}

inline std::string to_string(const PolyVec& v, std::string_view var = "t") {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string(var);
  }
  return s + ")";
}

}  // namespace paralat
