#include <doctest.h>

#include <algorithm>
#include <Eigen/Dense>
#include <complex>

#include "knotconc/circle.hpp"
#include "knotconc/errors.hpp"
#include "knotconc/factor.hpp"
#include "knotconc/hermitian.hpp"
#include "knotconc/laurent.hpp"
#include "knotconc/matrix.hpp"
#include "knotconc/rational.hpp"
#include "knotconc/roots.hpp"
#include "knotconc/upoly.hpp"
#include "support.hpp"

using namespace knotconc;
using knotconc::testing::random_int;
using knotconc::testing::random_rational;

namespace {

UPoly poly(std::initializer_list<long> low_to_high) {
  std::vector<Rational> c;
  for (long v : low_to_high) c.emplace_back(v);
  return UPoly(std::move(c));
}

UPoly linear(const Rational& root) { return UPoly::x() - UPoly(root); }

GaussMatrix random_hermitian(size_t n) {
  GaussMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) {
    m(i, i) = GaussRational(random_rational(6, 3));
    for (size_t j = i + 1; j < n; ++j) {
      // Sparse entries make singular and zero-diagonal cases common.
      if (random_int(0, 2) == 0) continue;
      GaussRational z(random_rational(5, 2), random_rational(5, 2));
      m(i, j) = z;
      m(j, i) = z.conj();
    }
  }
  if (random_int(0, 3) == 0) {
    for (size_t i = 0; i < n; ++i) m(i, i) = GaussRational();
  }
  return m;
}

// Floating-point inertia from Eigen's self-adjoint solver.
Inertia float_inertia(const GaussMatrix& m) {
  const Eigen::Index n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& z = m(static_cast<size_t>(i), static_cast<size_t>(j));
      a(i, j) = {z.re.get_d(), z.im.get_d()};
    }
  }
  Inertia out;
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
  for (double ev : es.eigenvalues()) {
    if (ev > 1e-9) ++out.n_plus;
    else if (ev < -1e-9) ++out.n_minus;
    else ++out.n_zero;
  }
  return out;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("1e-6") == Rational(1, 1000000));
  CHECK(parse_rational("2.5E3") == Rational(2500));
  CHECK(parse_rational("\xE2\x88\x92" "3/6") == Rational(-1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(to_decimal(Rational(-4, 3), 6) == "-1.333333");
  CHECK(to_decimal(Rational(1, 8), 2) == "0.12");
}

TEST_CASE("circle points") {
  CHECK(circle_value(CirclePoint::at(Rational(0))) == GaussRational(1));
  CHECK(circle_value(CirclePoint::infinity()) == GaussRational(-1));
  CHECK(circle_value(CirclePoint::at(Rational(1))) == GaussRational(Rational(0), Rational(1)));
  for (int k = 0; k < 100; ++k) {
    CirclePoint p = CirclePoint::at(random_rational(50, 17));
    CHECK(circle_value(p).norm2() == 1);
    CHECK(circle_value(p).re == p.cosine());
    CHECK(circle_value(p.conjugate()) == circle_value(p).conj());
  }
  for (int k = 0; k < 50; ++k) {
    Rational a = random_rational(99, 100);
    Rational b = a + Rational(1, random_int(1, 100000));
    if (a < -1 || b > 1) continue;
    CirclePoint p = circle_point_with_cosine_in(a, b);
    CHECK(p.cosine() > a);
    CHECK(p.cosine() < b);
  }
}

TEST_CASE("chebyshev reduction") {
  CHECK(chebyshev_reduce(parse_laurent("t - 1 + t^-1")) == poly({-1, 2}));
  CHECK(chebyshev_reduce(parse_laurent("1")) == poly({1}));
  CHECK(chebyshev_reduce(parse_laurent("t - 3 + t^-1")) == poly({-3, 2}));
  CHECK_THROWS_AS(chebyshev_reduce(parse_laurent("t - 1")), NonSymmetricInput);

  // P(cos theta) = D(omega), both sides evaluated exactly.
  for (int k = 0; k < 100; ++k) {
    LaurentPoly d(random_rational(9, 4));
    int deg = static_cast<int>(random_int(0, 5));
    for (int e = 1; e <= deg; ++e) {
      Rational c = random_rational(9, 4);
      d += LaurentPoly::monomial(c, e) + LaurentPoly::monomial(c, -e);
    }
    UPoly p = chebyshev_reduce(d);
    CHECK(p.degree() == (d.is_zero() ? -1 : d.max_exponent()));
    CirclePoint pt = CirclePoint::at(random_rational(30, 11));
    GaussRational lhs(p(pt.cosine()));
    CHECK(lhs == d(circle_value(pt)));
  }
}

TEST_CASE("polynomial arithmetic") {
  UPoly a = poly({1, 0, 1});      // x^2 + 1
  UPoly b = poly({-1, 1});        // x - 1
  auto [q, r] = divmod(a * b + poly({3}), b);
  CHECK(q == a);
  CHECK(r == poly({3}));
  CHECK(gcd(a * b, b * b) == b);
  ExtendedGcd eg = extended_gcd(a, b);
  CHECK(eg.g == poly({1}));
  CHECK(eg.s * a + eg.t * b == eg.g);
  CHECK((inverse_mod(b, a) * b) % a == poly({1}));
  CHECK(squarefree_part(b * b * a) == (a * b).monic());
  CHECK(!is_squarefree(b * b));
  CHECK(poly({1, 2, 3}).reciprocal() == poly({3, 2, 1}));
}

TEST_CASE("laurent polynomials") {
  LaurentPoly p = parse_laurent("2t - 5 + 2t^-1");
  CHECK(p.is_symmetric());
  CHECK(p(Rational(1)) == -1);
  CHECK(to_string(p) == "2t - 5 + 2t^-1");
  CHECK(parse_laurent("t^(-2) - 1/2*t") == LaurentPoly::monomial(Rational(1), -2) -
                                                 LaurentPoly::monomial(Rational(1, 2), 1));
  CHECK_THROWS_AS(parse_laurent("2t +"), std::invalid_argument);
  // t^-1 mod (t - 2) is 1/2.
  CHECK(laurent_mod(LaurentPoly::monomial(Rational(1), -1), poly({-2, 1})) ==
        UPoly(Rational(1, 2)));
  for (int k = 0; k < 50; ++k) {
    LaurentPoly x;
    for (int e = -3; e <= 3; ++e) x += LaurentPoly::monomial(random_rational(5, 3), e);
    UPoly m = poly({random_int(1, 5), random_int(-4, 4), 1});
    UPoly r = laurent_mod(x, m);
    // x - r is divisible by m after clearing t-powers.
    auto [shift, body] = (x - LaurentPoly(r, 0)).split();
    (void)shift;
    CHECK((body % m).is_zero());
  }
}

TEST_CASE("factorization over Q") {
  CHECK(factor(poly({5})).empty());
  auto f1 = factor(poly({1, 0, 0, 0, 1}));  // x^4 + 1, irreducible over Q
  REQUIRE(f1.size() == 1);
  CHECK(f1[0].multiplicity == 1);
  CHECK(f1[0].poly == poly({1, 0, 0, 0, 1}));
  auto f2 = factor(poly({1, 0, -10, 0, 1}));  // irreducible, reducible mod every p
  REQUIRE(f2.size() == 1);
  auto f3 = factor(poly({2, -5, 2}));  // (2x - 1)(x - 2)
  REQUIRE(f3.size() == 2);
  CHECK(f3[0].poly == linear(Rational(2)));
  CHECK(f3[1].poly == linear(Rational(1, 2)));

  // Products of factors known to be irreducible (linear; quadratics with
  // non-square discriminant; x^3 + c with c not a cube) are recovered.
  for (int k = 0; k < 100; ++k) {
    UPoly p(Rational(random_int(1, 5)));
    std::vector<Factor> expected;
    int count = static_cast<int>(random_int(1, 4));
    for (int i = 0; i < count; ++i) {
      UPoly q;
      switch (random_int(0, 2)) {
        case 0: q = linear(random_rational(6, 4)); break;
        case 1: {
          long a = random_int(-9, 9), b = random_int(-3, 3);
          long disc = b * b - 4 * a;
          long r = 0;
          while (r * r < disc) ++r;
          if (disc >= 0 && r * r == disc) continue;
          q = poly({a, b, 1});
          break;
        }
        default: {
          long c = random_int(2, 7);
          q = poly({c, 0, 0, 1});
          break;
        }
      }
      int mult = static_cast<int>(random_int(1, 2));
      for (int j = 0; j < mult; ++j) p *= q;
      auto it = std::find_if(expected.begin(), expected.end(),
                             [&](const Factor& f) { return f.poly == q; });
      if (it == expected.end()) expected.push_back({q, mult});
      else it->multiplicity += mult;
    }
    std::sort(expected.begin(), expected.end(),
              [](const Factor& a, const Factor& b) { return canonical_less(a.poly, b.poly); });
    CHECK(factor(p) == expected);
  }
}

TEST_CASE("sturm isolation examples") {
  Rational lo(-1), hi(1);
  auto r1 = sturm_isolate(poly({-1, 2}), lo, hi);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].contains(Rational(1, 2)));
  CHECK(sturm_isolate(poly({-3, 2}), lo, hi).empty());
  auto r3 = sturm_isolate(UPoly(std::vector<Rational>{Rational(-1, 2), 0, 1}), lo, hi);
  REQUIRE(r3.size() == 2);
  CHECK(r3[0].hi <= 0);
  CHECK(r3[1].lo >= 0);

  IsolatingInterval unit{Rational(0), Rational(1), -1, 1, poly({-1, 2})};
  IsolatingInterval tight = refine(unit, Rational(1, 8));
  CHECK(tight.width() <= Rational(1, 8));
  CHECK(tight.contains(Rational(1, 2)));
  IsolatingInterval same = refine(tight, Rational(1));
  CHECK(same.width() <= tight.width());

  IsolatingInterval s = refine(r3[1], Rational(1, 1000000));
  CHECK(s.width() <= Rational(1, 1000000));
  CHECK(s.lo.get_d() < 0.70710678118654752);
  CHECK(s.hi.get_d() > 0.70710678118654752);
  // Exact root at a bisection midpoint.
  auto dbl = sturm_isolate(poly({-1, 2}) * poly({-1, 2}) * poly({1, 0, 1}), lo, hi);
  REQUIRE(dbl.size() == 1);
  CHECK(refine(dbl[0], Rational(1, 1024)).contains(Rational(1, 2)));
}

TEST_CASE("sturm isolation against grid scanning") {
  // Roots on the lattice k/8; sign scan at odd multiples of 1/16 counts the
  // odd-multiplicity roots, and the known root list counts distinct roots.
  for (int k = 0; k < 150; ++k) {
    UPoly p(Rational(random_int(1, 3) * (random_int(0, 1) ? 1 : -1)));
    std::vector<Rational> roots;
    std::vector<int> mults;
    int deg = 0;
    int target = static_cast<int>(random_int(1, 6));
    while (deg < target) {
      if (target - deg >= 2 && random_int(0, 3) == 0) {
        p *= poly({random_int(1, 4), 0, 1});
        deg += 2;
        continue;
      }
      Rational r(random_int(-12, 12), 8);
      r.canonicalize();
      p *= linear(r);
      ++deg;
      auto it = std::find(roots.begin(), roots.end(), r);
      if (it == roots.end()) {
        roots.push_back(r);
        mults.push_back(1);
      } else {
        ++mults[static_cast<size_t>(it - roots.begin())];
      }
    }
    Rational lo(-1, 1), hi(1, 1);
    // Keep the lattice endpoints off the roots by shifting the window.
    lo -= Rational(1, 32);
    hi += Rational(1, 32);
    auto iv = sturm_isolate(p, lo, hi);
    int distinct = 0, odd = 0;
    for (size_t i = 0; i < roots.size(); ++i) {
      if (roots[i] > lo && roots[i] < hi) {
        ++distinct;
        if (mults[i] % 2 == 1) ++odd;
      }
    }
    CHECK(static_cast<int>(iv.size()) == distinct);
    auto chain = sturm_chain(squarefree_part(p));
    CHECK(count_roots(chain, lo, hi) == distinct);

    int changes = 0;
    int prev = sgn(p(lo));
    for (int j = -17; j <= 17; j += 2) {
      Rational x(j, 16);
      if (x <= lo || x >= hi) continue;
      int s = sgn(p(x));
      if (s != prev) ++changes;
      prev = s;
    }
    if (sgn(p(hi)) != prev) ++changes;
    CHECK(changes == odd);

    for (size_t i = 0; i < iv.size(); ++i) {
      CHECK(iv[i].lo < iv[i].hi);
      CHECK(iv[i].sign_lo == -iv[i].sign_hi);
      if (i > 0) CHECK(iv[i - 1].hi <= iv[i].lo);
      int hits = 0;
      for (const auto& r : roots) hits += iv[i].contains(r) ? 1 : 0;
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("hermitian signature examples") {
  GaussMatrix a{{GaussRational(2), GaussRational(0)}, {GaussRational(0), GaussRational(-2)}};
  CHECK(hermitian_signature(a) == Inertia{1, 1, 0});
  GaussMatrix b{{GaussRational(0), GaussRational(3)}, {GaussRational(3), GaussRational(0)}};
  CHECK(hermitian_signature(b) == Inertia{1, 1, 0});
  GaussMatrix c{{GaussRational(-2), GaussRational(1)}, {GaussRational(1), GaussRational(-2)}};
  CHECK(hermitian_signature(c) == Inertia{0, 2, 0});
  CHECK(hermitian_signature(GaussMatrix()) == Inertia{0, 0, 0});
  GaussMatrix bad{{GaussRational(0), GaussRational(1, 1)},
                  {GaussRational(Rational(0), Rational(1)), GaussRational(0)}};
  CHECK_THROWS_AS(hermitian_signature(bad), NotHermitian);
}

TEST_CASE("hermitian signature against eigenvalues") {
  int mismatches = 0;
  for (int k = 0; k < 150; ++k) {
    GaussMatrix m = random_hermitian(static_cast<size_t>(random_int(1, 8)));
    Inertia exact = hermitian_signature(m);
    CHECK(exact.n_plus + exact.n_minus + exact.n_zero == static_cast<int>(m.rows()));
    if (!(exact == float_inertia(m))) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("matrix determinants") {
  RationalMatrix m{{Rational(2), Rational(1)}, {Rational(4), Rational(3)}};
  CHECK(determinant(m) == 2);
  CHECK(rank(RationalMatrix{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}) == 1);
  PolyMatrix p{{poly({0, 1}), poly({1})}, {poly({-1}), poly({0, 1})}};
  CHECK(determinant(p) == poly({1, 0, 1}));
  PolyMatrix adj = adjugate(p);
  PolyMatrix prod = adj * p;
  CHECK(prod(0, 0) == poly({1, 0, 1}));
  CHECK(prod(0, 1).is_zero());
}
