#pragma once

// Arbitrary-precision integers and rationals (GMP) plus the few helpers the
// rest of the library needs: exact floor / nearest-integer rounding, lcm of
// machine moduli, and lossless "p/q" string conversion.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "paralat/errors.hpp"

namespace paralat {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using IntMatrix = std::vector<IntVec>;  // row-major; rows are vectors

/// Largest modulus of an EQP function. Pieces are stored densely, one per
/// residue, so this also caps memory.
inline constexpr std::int64_t kMaxModulus = std::int64_t{1} << 20;
/// Largest modulus of a single branch-tree leaf. Leaves are stored sparsely,
/// so only machine-integer overflow matters here.
inline constexpr std::int64_t kMaxLeafModulus = std::int64_t{1} << 62;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw DivByZero("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline Int ceil_rat(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

/// Closest integer with ties rounded up: floor(x + 1/2).
inline Int nearest_rat(const Rat& x) { return floor_rat(x + Rat(1, 2)); }

inline int sign(const Rat& x) { return sgn(x); }
inline int sign(const Int& x) { return sgn(x); }

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Non-negative remainder of a modulo m (m > 0).
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline std::int64_t to_i64(const Int& x) {
  if (!x.fits_slong_p()) throw ModulusOverflow("value " + x.get_str() + " exceeds machine range");
  return x.get_si();
}

inline std::int64_t checked_lcm(std::int64_t a, std::int64_t b, std::int64_t limit = kMaxModulus) {
  Int l;
  mpz_lcm(l.get_mpz_t(), Int(static_cast<long>(a)).get_mpz_t(), Int(static_cast<long>(b)).get_mpz_t());
  if (l > limit) throw ModulusOverflow("modulus lcm(" + std::to_string(a) + ", " + std::to_string(b) + ") too large");
  return l.get_si();
}

inline std::string to_string(const Rat& x) { return x.get_str(); }
inline std::string to_string(const Int& x) { return x.get_str(); }

/// Parses "p", "-p" or "p/q" with arbitrary-precision p, q.
inline Rat parse_rat(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& v) {
    std::size_t i = (!v.empty() && (v[0] == '-' || v[0] == '+')) ? 1 : 0;
    if (i >= v.size()) return false;
    for (; i < v.size(); ++i)
      if (v[i] < '0' || v[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw ParseError("malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Int n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  return make_rat(n, d);
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
  Rat r(1);
  for (unsigned long i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace paralat
