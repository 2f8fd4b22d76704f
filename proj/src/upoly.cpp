#include "knotconc/upoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace knotconc {

namespace {
const Rational kZero(0);
}

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly::UPoly(long c) {
  if (c != 0) coeffs_.emplace_back(c);
}

UPoly::UPoly(const Rational& c) {
  if (sgn(c) != 0) coeffs_.push_back(c);
}

UPoly UPoly::monomial(const Rational& c, int k) {
  if (k < 0) throw std::invalid_argument("negative exponent in UPoly::monomial");
  std::vector<Rational> v(static_cast<size_t>(k) + 1);
  v.back() = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

const Rational& UPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return kZero;
  return coeffs_[static_cast<size_t>(k)];
}

const Rational& UPoly::leading() const { return is_zero() ? kZero : coeffs_.back(); }

Rational UPoly::operator()(const Rational& x) const {
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

GaussRational UPoly::operator()(const GaussRational& z) const {
  GaussRational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= z;
    acc.re += *it;
  }
  return acc;
}

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = coeffs_[k] * static_cast<long>(k);
  return UPoly(std::move(v));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / leading();
  return *this * inv;
}

UPoly UPoly::reciprocal() const {
  std::vector<Rational> v(coeffs_.rbegin(), coeffs_.rend());
  return UPoly(std::move(v));
}

int UPoly::valuation() const {
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) != 0) return static_cast<int>(k);
  }
  return 0;
}

UPoly UPoly::strip_x() const {
  int v = valuation();
  return UPoly(std::vector<Rational>(coeffs_.begin() + v, coeffs_.end()));
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UPoly(std::move(v));
}

UPoly& UPoly::operator*=(const UPoly& o) { return *this = *this * o; }

UPoly& UPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

UPoly operator-(UPoly a) {
  for (auto& x : a.coeffs_) x = -x;
  return a;
}

bool canonical_less(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int k = a.degree(); k >= 0; --k) {
    const Rational& x = a.coeff(k);
    const Rational& y = b.coeff(k);
    if (x != y) return x < y;
  }
  return false;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  std::vector<Rational> quo(static_cast<size_t>(a.degree() - db) + 1);
  Rational inv_lead = 1 / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational c = rem[static_cast<size_t>(k)] * inv_lead;
    if (sgn(c) == 0) continue;
    quo[static_cast<size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(k - db + j)] -= c * b.coeff(j);
  }
  rem.resize(static_cast<size_t>(db));
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }
UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a;
  UPoly y = b;
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0(1), s1;
  UPoly t0, t1(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {UPoly(), UPoly(), UPoly()};
  Rational inv = 1 / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

UPoly inverse_mod(const UPoly& a, const UPoly& m) {
  ExtendedGcd e = extended_gcd(a % m, m);
  if (e.g != UPoly(1)) throw std::domain_error("polynomial not invertible modulo " + to_string(m));
  return e.s % m;
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.is_zero() ? p : UPoly(1);
  return (p / gcd(p, p.derivative())).monic();
}

bool is_squarefree(const UPoly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

UPoly pow_mod(const UPoly& a, unsigned long e, const UPoly& m) {
  UPoly result = UPoly(1) % m;
  UPoly base = a % m;
  while (e > 0) {
    if (e & 1UL) result = (result * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return result;
}

std::string to_string(const UPoly& p, std::string_view var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational& c = p.coeff(k);
    if (sgn(c) == 0) continue;
    Rational mag = abs_value(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (k == 0 || mag != 1) out += to_string(mag);
    if (k > 0) {
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace knotconc
