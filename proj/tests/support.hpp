#pragma once

// Shared test helpers: seeded generators for random exact inputs.

#include <random>
#include <vector>

#include "knotconc/matrix.hpp"
#include "knotconc/rational.hpp"

namespace knotconc::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240117);
  return gen;
}

inline long random_int(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng());
}

inline Rational random_rational(long num_range, long den_max) {
  Rational q(random_int(-num_range, num_range), random_int(1, den_max));
  q.canonicalize();
  return q;
}

// Random integer Seifert matrix of genus g: W + N with W symmetric and
// N the standard upper block [[0,1],[0,0]] per handle, so V - V^T is the
// standard symplectic form and det(V - V^T) = 1.
inline RationalMatrix random_seifert_entries(int genus, long range) {
  const size_t n = 2 * static_cast<size_t>(genus);
  RationalMatrix v(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      Rational x(random_int(-range, range));
      v(i, j) = x;
      v(j, i) = x;
    }
  }
  for (size_t h = 0; h < n; h += 2) v(h, h + 1) += 1;
  return v;
}

}  // namespace knotconc::testing
