#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knotconc/rational.hpp"

namespace knotconc {

// Dense univariate polynomial over Q.  Coefficients are stored low to high
// with no trailing zeros; the zero polynomial has no coefficients.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  UPoly(long c);  // NOLINT(google-explicit-constructor)
  explicit UPoly(const Rational& c);

  static UPoly monomial(const Rational& c, int k);
  static UPoly x() { return monomial(Rational(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& coeff(int k) const;
  const Rational& leading() const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational operator()(const Rational& x) const;
  GaussRational operator()(const GaussRational& z) const;

  UPoly derivative() const;
  UPoly monic() const;
  // x^deg p(1/x).
  UPoly reciprocal() const;
  // Lowest k with a nonzero coefficient of x^k (0 for the zero polynomial).
  int valuation() const;
  // p / x^valuation().
  UPoly strip_x() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o);
  UPoly& operator*=(const Rational& c);

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const Rational& c) { return a *= c; }
  friend UPoly operator*(const Rational& c, UPoly a) { return a *= c; }
  friend UPoly operator-(UPoly a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

  // Total order used for deterministic sorting: by degree, then coefficients
  // from the top down.
  friend bool canonical_less(const UPoly& a, const UPoly& b);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

bool canonical_less(const UPoly& a, const UPoly& b);

// Returns (q, r) with a = q b + r and deg r < deg b.  Throws on b = 0.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly operator/(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);

// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);

struct ExtendedGcd {
  UPoly g;  // monic
  UPoly s;
  UPoly t;  // s a + t b = g
};
ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b);

// Inverse of a modulo m; throws std::domain_error if gcd(a, m) != 1.
UPoly inverse_mod(const UPoly& a, const UPoly& m);

UPoly squarefree_part(const UPoly& p);
bool is_squarefree(const UPoly& p);

// a^e mod m.
UPoly pow_mod(const UPoly& a, unsigned long e, const UPoly& m);

std::string to_string(const UPoly& p, std::string_view var = "x");

}  // namespace knotconc
