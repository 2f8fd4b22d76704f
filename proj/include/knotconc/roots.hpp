#pragma once

#include <vector>

#include "knotconc/rational.hpp"
#include "knotconc/upoly.hpp"

namespace knotconc {

// Open interval (lo, hi) holding exactly one root of `poly`.  `poly` is the
// square-free part of the polynomial that was isolated, and the endpoints
// are never roots, so the sign witnesses satisfy sign_lo = -sign_hi.
struct IsolatingInterval {
  Rational lo;
  Rational hi;
  int sign_lo = 0;
  int sign_hi = 0;
  UPoly poly;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo < x && x < hi; }
};

// Canonical Sturm chain p, p', -rem(p, p'), ...
std::vector<UPoly> sturm_chain(const UPoly& p);

// Sign variations of the chain at x (zeros skipped).
int sign_variations(const std::vector<UPoly>& chain, const Rational& x);

// Number of distinct real roots in the half-open interval (a, b].
int count_roots(const std::vector<UPoly>& chain, const Rational& a, const Rational& b);

// Isolates every distinct real root of p inside the open interval (lo, hi).
// Intervals are disjoint and returned in increasing order.  Requires p != 0.
std::vector<IsolatingInterval> sturm_isolate(const UPoly& p, const Rational& lo, const Rational& hi);

// Bisects until hi - lo <= width.  Intervals that are already narrow enough
// are returned unchanged.
IsolatingInterval refine(const IsolatingInterval& interval, const Rational& width);

}  // namespace knotconc
