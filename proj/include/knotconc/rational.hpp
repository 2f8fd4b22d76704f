#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace knotconc {

using Integer = mpz_class;
using Rational = mpq_class;

// Exact parse of "3", "-1/2", "0.125", "1e-6", "2.5E3".  A leading U+2212
// minus sign is accepted as well as ASCII '-'.  Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

// Fixed-point decimal rendering with `digits` fractional digits, rounded
// toward zero.  Used for reports only; never parsed back.
std::string to_decimal(const Rational& q, int digits = 12);

inline int sign(const Rational& q) { return sgn(q); }

Rational abs_value(const Rational& q);

// Complex number with rational real and imaginary parts.
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussRational(long r) : re(r) {}  // NOLINT(google-explicit-constructor)

  GaussRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

std::string to_string(const GaussRational& z);

}  // namespace knotconc
