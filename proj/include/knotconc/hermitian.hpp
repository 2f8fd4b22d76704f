#pragma once

#include "knotconc/matrix.hpp"

namespace knotconc {

struct Inertia {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;

  int signature() const { return n_plus - n_minus; }
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

bool is_hermitian(const GaussMatrix& b);

// Exact inertia of a Hermitian matrix over Q(i) by symmetric pivoting
// (LDL*): 1x1 pivots on nonzero diagonal entries, 2x2 pivots
// [[0, b], [conj(b), 0]] when the remaining diagonal vanishes.
// Throws NotHermitian.
Inertia hermitian_signature(const GaussMatrix& b);

}  // namespace knotconc
