#pragma once

#include <random>

#include "metlie/matrix.hpp"
#include "metlie/rational.hpp"

namespace metlie::testing {

inline Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Small rational with numerator in [-lim, lim] and denominator in [1, den].
inline Rational small_rational(std::mt19937_64& rng, int lim = 3, int den = 3) {
  std::uniform_int_distribution<int> num(-lim, lim), d(1, den);
  return q(num(rng), d(rng));
}

inline Vec<Rational> random_vector(std::mt19937_64& rng, std::size_t n, int lim = 3, int den = 3) {
  Vec<Rational> v(n);
  for (auto& x : v) x = small_rational(rng, lim, den);
  return v;
}

inline Matrix<Rational> random_invertible(std::mt19937_64& rng, std::size_t n) {
  while (true) {
    Matrix<Rational> p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = small_rational(rng);
    if (!is_zero(determinant(p))) return p;
  }
}

inline Vec<Rational> e(std::size_t n, std::size_t i) { return unit_vector<Rational>(n, i); }

}  // namespace metlie::testing
