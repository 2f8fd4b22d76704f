#include "knotconc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace knotconc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (s.substr(0, 3) == "\xE2\x88\x92") {  // U+2212
    negative = true;
    s.remove_prefix(3);
  } else if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  s = trim(s);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = trim(s.substr(slash + 1));
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
    }
    Integer d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    out = Rational(Integer(std::string(num), 10), d);
    out.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view ex = s.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex) || ex.size() > 6) {
        throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
      }
      exponent = std::stol(std::string(ex));
      if (eneg) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string_view whole = s;
    std::string_view frac;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      whole = s.substr(0, dot);
      frac = s.substr(dot + 1);
    }
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }
    Integer mant(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    exponent -= static_cast<long>(frac.size());
    if (exponent >= 0) {
      out = Rational(mant * pow10(static_cast<unsigned long>(exponent)));
    } else {
      out = Rational(mant, pow10(static_cast<unsigned long>(-exponent)));
      out.canonicalize();
    }
  }
  if (negative) out = -out;
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_decimal(const Rational& q, int digits) {
  Integer scale = pow10(static_cast<unsigned long>(digits));
  Integer num = q.get_num() * scale;
  Integer scaled;
  mpz_tdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  bool negative = sgn(q) < 0;
  Integer mag = abs(scaled);
  std::string body = mag.get_str();
  if (static_cast<int>(body.size()) <= digits) {
    body.insert(0, static_cast<size_t>(digits + 1 - static_cast<int>(body.size())), '0');
  }
  std::string out = body.substr(0, body.size() - static_cast<size_t>(digits));
  if (digits > 0) out += "." + body.substr(body.size() - static_cast<size_t>(digits));
  return negative ? "-" + out : out;
}

Rational abs_value(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  Rational n = o.norm2();
  if (sgn(n) == 0) throw std::domain_error("division by zero Gaussian rational");
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

std::string to_string(const GaussRational& z) {
  if (sgn(z.im) == 0) return to_string(z.re);
  std::string out;
  if (sgn(z.re) != 0) out = to_string(z.re) + (sgn(z.im) > 0 ? " + " : " - ");
  else if (sgn(z.im) < 0) out = "-";
  Rational m = abs_value(z.im);
  if (m != 1) out += to_string(m) + "*";
  return out + "i";
}

}  // namespace knotconc
