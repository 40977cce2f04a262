#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gacalc/multivector.hpp"

namespace gacalc::testing {

// Deterministic generator shared by the randomized tests.
inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(0x6761u);
  return engine;
}

inline int rand_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline double rand_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Rational rand_rational(int span = 9, int max_den = 5) { return Rational(rand_int(-span, span), rand_int(1, max_den)); }

inline MultivectorQ rand_mv_q(const AlgebraPtr& alg, double density = 1.0) {
  std::vector<Rational> c(alg->size());
  for (auto& x : c)
    if (rand_real(0, 1) < density) x = rand_rational();
  return MultivectorQ(alg, std::move(c));
}

inline MultivectorF rand_mv_f(const AlgebraPtr& alg, double lo = -1.0, double hi = 1.0) {
  std::vector<double> c(alg->size());
  for (auto& x : c) x = rand_real(lo, hi);
  return MultivectorF(alg, std::move(c));
}

template <class S>
Multivector<S> rand_vector(const AlgebraPtr& alg) {
  Multivector<S> out(alg);
  for (std::size_t p : alg->grade_positions(1)) {
    if constexpr (std::is_same_v<S, double>)
      out[p] = rand_real(-2, 2);
    else
      out[p] = S(rand_rational());
  }
  return out;
}

inline double max_abs_diff(const MultivectorF& a, const MultivectorF& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace gacalc::testing
