#pragma once

// Rational functions Q(t) in canonical form: numerator and denominator
// coprime, denominator monic. Equality is therefore structural.

#include <string>
#include <utility>
#include <vector>

#include "paralat/poly.hpp"

namespace paralat {

class RatFunc {
 public:
  RatFunc() : den_(Rat(1)) {}
  RatFunc(const Poly& p) : num_(p), den_(Rat(1)) {}  // NOLINT
  RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}   // NOLINT
  RatFunc(long c) : num_(c), den_(Rat(1)) {}         // NOLINT
  RatFunc(int c) : num_(c), den_(Rat(1)) {}          // NOLINT
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivByZero("rational function with zero denominator");
    canonicalize();
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  /// deg(num) - deg(den); kNegInf for zero.
  int degree() const { return num_.is_zero() ? kNegInf : num_.degree() - den_.degree(); }

  Rat eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d == 0) throw DivByZero("rational function evaluated at a pole");
    return num_.eval(x) / d;
  }

  RatFunc compose_affine(const Rat& a, const Rat& b) const {
    return RatFunc(num_.compose_affine(a, b), den_.compose_affine(a, b));
  }
  RatFunc substitute(const Int& M, const Int& r) const { return compose_affine(Rat(M), Rat(r)); }

  RatFunc operator-() const {
    RatFunc f = *this;
    f.num_ = -f.num_;
    return f;
  }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivByZero("division by the zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::string to_string(std::string_view var = "t") const {
    if (is_polynomial()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
  }

 private:
  void canonicalize() {
    if (num_.is_zero()) {
      den_ = Poly(Rat(1));
      return;
    }
    if (den_.degree() > 0) {
      Poly g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
      }
    }
    Rat c = den_.lead();
    if (c != 1) {
      Rat inv = Rat(1) / c;
      num_ *= inv;
      den_ *= inv;
    }
  }

  Poly num_;
  Poly den_;
};

using RatFuncVec = std::vector<RatFunc>;

inline RatFuncVec to_ratfuncs(const PolyVec& v) { return RatFuncVec(v.begin(), v.end()); }

inline RatFunc dot(const RatFuncVec& a, const RatFuncVec& b) {
  RatFunc acc;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline RatFuncVec substitute(const RatFuncVec& v, const Int& M, const Int& r) {
  RatFuncVec out;
  out.reserve(v.size());
  for (const RatFunc& f : v) out.push_back(f.substitute(M, r));
  return out;
}

inline std::string to_string(const RatFuncVec& v, std::string_view var = "t") {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string(var);
  }
  return s + ")";
}

inline RatVec eval(const RatFuncVec& v, const Rat& x) {
  RatVec out;
  out.reserve(v.size());
  for (const RatFunc& f : v) out.push_back(f.eval(x));
  return out;
}

}  // namespace paralat
