#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "knotconc/rational.hpp"
#include "knotconc/upoly.hpp"

namespace knotconc {

// Element of Q[t, t^-1].  Only nonzero coefficients are stored; the empty
// map is the zero polynomial.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT(google-explicit-constructor)
  explicit LaurentPoly(const Rational& c);
  // t^shift * p
  LaurentPoly(const UPoly& p, int shift);

  static LaurentPoly monomial(const Rational& c, int k);
  static LaurentPoly t() { return monomial(Rational(1), 1); }

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, Rational>& terms() const { return terms_; }
  const Rational& coeff(int k) const;
  // Exponent range; both 0 for the zero polynomial.
  int min_exponent() const;
  int max_exponent() const;

  // t -> t^-1
  LaurentPoly conjugate() const;
  bool is_symmetric() const { return *this == conjugate(); }
  LaurentPoly shifted(int k) const;

  Rational operator()(const Rational& t) const;
  GaussRational operator()(const GaussRational& t) const;

  // (shift, p) with *this = t^shift p(t) and p(0) != 0.
  std::pair<int, UPoly> split() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
  friend LaurentPoly operator-(LaurentPoly a);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(int k, const Rational& c);
  std::map<int, Rational> terms_;
};

// Accepts sums of terms like "2t - 5 + 2t^-1", "-1/2*t^3", "t^(-2)", "7".
// Throws std::invalid_argument with a character offset in the message.
LaurentPoly parse_laurent(std::string_view text, std::string_view var = "t");

std::string to_string(const LaurentPoly& p, std::string_view var = "t");

// Residue of a Laurent polynomial in Q[t]/(m), with m(0) != 0 so that t is
// invertible.  Returns the representative of degree < deg m.
UPoly laurent_mod(const LaurentPoly& p, const UPoly& m);

}  // namespace knotconc
