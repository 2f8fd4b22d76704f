#include "knotconc/knots.hpp"

namespace knotconc::knots {

namespace {

SeifertMatrix two_by_two(long a, long b, long c, long d, const char* name) {
  return SeifertMatrix(RationalMatrix{{Rational(a), Rational(b)}, {Rational(c), Rational(d)}}, name);
}

}  // namespace

SeifertMatrix unknot() { return SeifertMatrix(RationalMatrix(), "unknot"); }
SeifertMatrix trefoil() { return two_by_two(-1, 1, 0, -1, "trefoil"); }
SeifertMatrix figure_eight() { return two_by_two(1, 1, 0, -1, "figure_eight"); }
SeifertMatrix nine_46() { return two_by_two(0, 2, 1, 0, "9_46"); }

}  // namespace knotconc::knots
