#include "knotconc/circle.hpp"

#include <stdexcept>

#include "knotconc/errors.hpp"

namespace knotconc {

Rational CirclePoint::cosine() const {
  if (!s_) return Rational(-1);
  Rational s2 = *s_ * *s_;
  return (1 - s2) / (1 + s2);
}

GaussRational circle_value(const CirclePoint& p) {
  if (p.is_infinity()) return GaussRational(Rational(-1));
  const Rational& s = p.parameter();
  Rational s2 = s * s;
  Rational den = 1 + s2;
  return {(1 - s2) / den, (2 * s) / den};
}

CirclePoint circle_point_with_cosine_in(const Rational& lo, const Rational& hi) {
  if (!(lo < hi) || lo < -1 || hi > 1) {
    throw std::invalid_argument("circle_point_with_cosine_in: need -1 <= lo < hi <= 1");
  }
  // cos is decreasing in s >= 0: s = 0 gives 1, s -> infinity gives -1.
  Rational s_small(0);
  Rational s_big(1);
  for (;;) {
    Rational c = CirclePoint::at(s_big).cosine();
    if (c > lo && c < hi) return CirclePoint::at(s_big);
    if (c <= lo) break;
    s_small = s_big;
    s_big *= 2;
  }
  for (;;) {
    Rational mid = (s_small + s_big) / 2;
    Rational c = CirclePoint::at(mid).cosine();
    if (c >= hi) s_small = mid;
    else if (c <= lo) s_big = mid;
    else return CirclePoint::at(mid);
  }
}

UPoly chebyshev_reduce(const LaurentPoly& delta) {
  if (!delta.is_symmetric()) {
    throw NonSymmetricInput("chebyshev_reduce: " + to_string(delta) + " is not symmetric under t -> 1/t");
  }
  UPoly prev(1);          // T_0
  UPoly cur = UPoly::x(); // T_1
  UPoly out(delta.coeff(0));
  const UPoly two_x = UPoly::monomial(Rational(2), 1);
  for (int k = 1; k <= delta.max_exponent(); ++k) {
    out += cur * Rational(2 * delta.coeff(k));
    UPoly next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

}  // namespace knotconc
