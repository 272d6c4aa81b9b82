#pragma once

// Seeded random parametric instances for fuzzing and property suites.

#include <random>

#include "paralat/param_basis.hpp"

namespace paralat {

struct InstanceShape {
  std::size_t min_rank = 1, max_rank = 3;
  std::size_t max_dim = 4;  // ambient dimension is drawn from [rank, max_dim]
  int max_degree = 2;
  long coeff = 9;  // coefficients in [-coeff, coeff]
};

inline long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Each entry gets a uniform degree in [0, max_degree] and uniform
/// coefficients; draws repeat until the rows are independent over Q(t).
inline ParamBasis random_basis(std::mt19937_64& rng, const InstanceShape& s) {
  const auto n = static_cast<std::size_t>(uniform(rng, static_cast<long>(s.min_rank), static_cast<long>(s.max_rank)));
  const auto m = static_cast<std::size_t>(uniform(rng, static_cast<long>(n), static_cast<long>(std::max(n, s.max_dim))));
  for (;;) {
    ParamBasis b(n, ParamVector(m));
    for (auto& v : b)
      for (auto& p : v) {
        const long d = uniform(rng, 0, s.max_degree);
        std::vector<Rat> c;
        for (long k = 0; k <= d; ++k) c.emplace_back(uniform(rng, -s.coeff, s.coeff));
        p = Poly(std::move(c));
      }
    try {
      param_gram_schmidt(b);
      return b;
    } catch (const DependentInput&) {
    }
  }
}

/// Entries (a + b t) / c or (a + b t) / (t + c) with c in [1, 4], so the
/// target is finite at every t >= 0.
inline RatFuncVec random_target(std::mt19937_64& rng, std::size_t m, long coeff = 5) {
  RatFuncVec x;
  for (std::size_t k = 0; k < m; ++k) {
    Poly num{uniform(rng, -coeff, coeff), uniform(rng, -coeff, coeff)};
    const long c = uniform(rng, 1, 4);
    x.push_back(RatFunc(num, uniform(rng, 0, 1) ? Poly{c, 1} : Poly(c)));
  }
  return x;
}

}  // namespace paralat
