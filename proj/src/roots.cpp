#include "knotconc/roots.hpp"

#include <stdexcept>

namespace knotconc {

std::vector<UPoly> sturm_chain(const UPoly& p) {
  std::vector<UPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  UPoly d = p.derivative();
  while (!d.is_zero()) {
    chain.push_back(d);
    UPoly r = -(chain[chain.size() - 2] % d);
    d = std::move(r);
  }
  return chain;
}

int sign_variations(const std::vector<UPoly>& chain, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const UPoly& q : chain) {
    int s = sign(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

int count_roots(const std::vector<UPoly>& chain, const Rational& a, const Rational& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

namespace {

// A point strictly inside (a, b) that is not a root of p.
Rational split_point(const UPoly& p, const Rational& a, const Rational& b) {
  Rational mid = (a + b) / 2;
  if (sign(p(mid)) != 0) return mid;
  // p has finitely many roots; walk dyadic offsets toward a.
  Rational step = (b - a) / 4;
  for (;;) {
    Rational c = mid - step;
    if (sign(p(c)) != 0) return c;
    c = mid + step;
    if (sign(p(c)) != 0) return c;
    step /= 3;
  }
}

void bisect(const UPoly& sqf, const std::vector<UPoly>& chain, const Rational& a, const Rational& b,
            int count, std::vector<IsolatingInterval>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.push_back({a, b, sign(sqf(a)), sign(sqf(b)), sqf});
    return;
  }
  Rational m = split_point(sqf, a, b);
  int left = count_roots(chain, a, m);
  bisect(sqf, chain, a, m, left, out);
  bisect(sqf, chain, m, b, count - left, out);
}

}  // namespace

std::vector<IsolatingInterval> sturm_isolate(const UPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw std::invalid_argument("sturm_isolate: zero polynomial");
  if (!(lo < hi)) throw std::invalid_argument("sturm_isolate: empty range");
  std::vector<IsolatingInterval> out;
  if (p.degree() == 0) return out;
  UPoly sqf = squarefree_part(p);
  std::vector<UPoly> chain = sturm_chain(sqf);

  // Move endpoints that are roots inward; roots at the endpoints are not in
  // the open range.
  Rational a = lo;
  Rational b = hi;
  int interior = count_roots(chain, lo, hi) - (sign(sqf(hi)) == 0 ? 1 : 0);
  if (sign(sqf(a)) == 0 || sign(sqf(b)) == 0) {
    Rational gap = (hi - lo) / 2;
    for (;;) {
      Rational na = sign(sqf(lo)) == 0 ? Rational(lo + gap) : lo;
      Rational nb = sign(sqf(hi)) == 0 ? Rational(hi - gap) : hi;
      if (na < nb && sign(sqf(na)) != 0 && sign(sqf(nb)) != 0 &&
          count_roots(chain, na, nb) == interior) {
        a = na;
        b = nb;
        break;
      }
      gap /= 2;
    }
  }
  bisect(sqf, chain, a, b, interior, out);
  return out;
}

IsolatingInterval refine(const IsolatingInterval& interval, const Rational& width) {
  if (sgn(width) <= 0) throw std::invalid_argument("refine: width must be positive");
  IsolatingInterval cur = interval;
  while (cur.width() > width) {
    Rational mid = (cur.lo + cur.hi) / 2;
    int s = sign(cur.poly(mid));
    if (s == 0) {
      // The root is exactly mid; shrink symmetrically around it.
      Rational half = width / 4;
      if (half > cur.width() / 4) half = cur.width() / 4;
      cur.lo = mid - half;
      cur.hi = mid + half;
      cur.sign_lo = sign(cur.poly(cur.lo));
      cur.sign_hi = sign(cur.poly(cur.hi));
      break;
    }
    if (s == cur.sign_lo) {
      cur.lo = mid;
    } else {
      cur.hi = mid;
    }
  }
  return cur;
}

}  // namespace knotconc
