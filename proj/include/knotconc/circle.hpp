#pragma once

#include <optional>

#include "knotconc/laurent.hpp"
#include "knotconc/rational.hpp"
#include "knotconc/upoly.hpp"

namespace knotconc {

// Point of the unit circle in tangent-half-angle coordinates:
// s = tan(theta / 2), with s = infinity standing for omega = -1.
class CirclePoint {
 public:
  static CirclePoint at(Rational s) { return CirclePoint(std::move(s)); }
  static CirclePoint infinity() { return CirclePoint(); }

  bool is_infinity() const { return !s_.has_value(); }
  // Precondition: !is_infinity().
  const Rational& parameter() const { return *s_; }

  // Complex conjugate point (s -> -s).
  CirclePoint conjugate() const { return s_ ? CirclePoint(Rational(-*s_)) : CirclePoint(); }
  // cos(theta) = (1 - s^2) / (1 + s^2)
  Rational cosine() const;

 private:
  CirclePoint() = default;
  explicit CirclePoint(Rational s) : s_(std::move(s)) {}
  std::optional<Rational> s_;
};

// omega = ((1 - s^2) + 2 s i) / (1 + s^2); exact, |omega| = 1.
GaussRational circle_value(const CirclePoint& p);

// A circle point whose cosine lies strictly inside (lo, hi), with
// -1 <= lo < hi <= 1.  The parameter s is >= 0 (upper semicircle).
CirclePoint circle_point_with_cosine_in(const Rational& lo, const Rational& hi);

// For symmetric D(t) = c_0 + sum_k c_k (t^k + t^-k), returns P with
// P(cos theta) = D(e^{i theta}), i.e. P = c_0 + sum_k 2 c_k T_k(x).
// Throws NonSymmetricInput when D(t) != D(1/t).
UPoly chebyshev_reduce(const LaurentPoly& delta);

}  // namespace knotconc
