#pragma once

#include <vector>

#include "knotconc/upoly.hpp"

namespace knotconc {

struct Factor {
  UPoly poly;  // monic, irreducible over Q
  int multiplicity = 0;

  friend bool operator==(const Factor&, const Factor&) = default;
};

// Complete factorization over Q into monic irreducibles (Zassenhaus:
// square-free decomposition, Cantor-Zassenhaus modulo a small prime,
// Hensel lifting, subset recombination).  Factors are returned in
// canonical_less order.  The leading coefficient is dropped; constants
// factor as the empty list.
std::vector<Factor> factor(const UPoly& p);

}  // namespace knotconc
