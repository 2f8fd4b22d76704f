#pragma once

#include "knotconc/seifert.hpp"

namespace knotconc::knots {

SeifertMatrix unknot();
// [[-1, 1], [0, -1]]; the right-handed trefoil, rho0 = -4/3.
SeifertMatrix trefoil();
// [[1, 1], [0, -1]]; amphichiral.
SeifertMatrix figure_eight();
// [[0, 2], [1, 0]]; ribbon, Alexander polynomial (2t - 1)(t - 2).
SeifertMatrix nine_46();

}  // namespace knotconc::knots
