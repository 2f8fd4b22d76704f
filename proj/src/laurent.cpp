#include "knotconc/laurent.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace knotconc {

namespace {
const Rational kZero(0);
}

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) terms_.emplace(0, Rational(c));
}

LaurentPoly::LaurentPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(0, c);
}

LaurentPoly::LaurentPoly(const UPoly& p, int shift) {
  for (int k = 0; k <= p.degree(); ++k) add_term(k + shift, p.coeff(k));
}

LaurentPoly LaurentPoly::monomial(const Rational& c, int k) {
  LaurentPoly p;
  p.add_term(k, c);
  return p;
}

void LaurentPoly::add_term(int k, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

const Rational& LaurentPoly::coeff(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? kZero : it->second;
}

int LaurentPoly::min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int LaurentPoly::max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

LaurentPoly LaurentPoly::conjugate() const {
  LaurentPoly out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(-k, c);
  return out;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
  return out;
}

Rational LaurentPoly::operator()(const Rational& t) const {
  auto [shift, p] = split();
  Rational v = p(t);
  if (shift == 0 || sgn(v) == 0) return v;
  if (sgn(t) == 0) throw std::domain_error("Laurent polynomial evaluated at t = 0");
  Rational tp(1);
  for (int i = 0; i < std::abs(shift); ++i) tp *= t;
  return shift > 0 ? Rational(v * tp) : Rational(v / tp);
}

GaussRational LaurentPoly::operator()(const GaussRational& t) const {
  auto [shift, p] = split();
  GaussRational v = p(t);
  if (shift == 0 || v.is_zero()) return v;
  if (t.is_zero()) throw std::domain_error("Laurent polynomial evaluated at t = 0");
  GaussRational tp(1);
  for (int i = 0; i < std::abs(shift); ++i) tp *= t;
  return shift > 0 ? v * tp : v / tp;
}

std::pair<int, UPoly> LaurentPoly::split() const {
  if (terms_.empty()) return {0, UPoly()};
  int lo = min_exponent();
  std::vector<Rational> v(static_cast<size_t>(max_exponent() - lo) + 1);
  for (const auto& [k, c] : terms_) v[static_cast<size_t>(k - lo)] = c;
  return {lo, UPoly(std::move(v))};
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [i, x] : a.terms_) {
    for (const auto& [j, y] : b.terms_) out.add_term(i + j, x * y);
  }
  return out;
}

LaurentPoly operator-(LaurentPoly a) {
  for (auto& [k, v] : a.terms_) v = -v;
  return a;
}

namespace {

class LaurentParser {
 public:
  LaurentParser(std::string_view text, std::string_view var) : s_(text), var_(var) {}

  LaurentPoly parse() {
    LaurentPoly out;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (eat_minus()) sign = -1;
      else if (peek() == '+') ++pos_;
      else if (!first) fail("expected '+' or '-'");
      skip_ws();
      auto [coeff, exp] = term();
      out += LaurentPoly::monomial(sign * coeff, exp);
      first = false;
      skip_ws();
    }
    return out;
  }

 private:
  std::pair<Rational, int> term() {
    Rational coeff(1);
    bool have_coeff = false;
    size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' ||
                         peek() == '/')) {
      ++pos_;
    }
    if (pos_ > start) {
      try {
        coeff = parse_rational(s_.substr(start, pos_ - start));
      } catch (const std::invalid_argument&) {
        pos_ = start;
        fail("malformed coefficient");
      }
      have_coeff = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (!starts_var()) fail("expected variable after '*'");
      }
    }
    if (!starts_var()) {
      if (!have_coeff) fail("expected a term");
      return {coeff, 0};
    }
    pos_ += var_.size();
    skip_ws();
    int exp = 1;
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_ws();
      bool paren = !at_end() && peek() == '(';
      if (paren) ++pos_;
      int sign = 1;
      if (eat_minus()) sign = -1;
      else if (!at_end() && peek() == '+') ++pos_;
      size_t ds = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (pos_ == ds || pos_ - ds > 6) fail("malformed exponent");
      exp = sign * std::stoi(std::string(s_.substr(ds, pos_ - ds)));
      if (paren) {
        if (at_end() || peek() != ')') fail("expected ')'");
        ++pos_;
      }
    }
    return {coeff, exp};
  }

  bool starts_var() const { return s_.substr(pos_, var_.size()) == var_; }
  bool eat_minus() {
    if (!at_end() && peek() == '-') {
      ++pos_;
      return true;
    }
    if (s_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument(msg + " at offset " + std::to_string(pos_) + " in '" +
                                std::string(s_) + "'");
  }

  std::string_view s_;
  std::string_view var_;
  size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text, std::string_view var) {
  return LaurentParser(text, var).parse();
}

std::string to_string(const LaurentPoly& p, std::string_view var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [k, c] = *it;
    Rational mag = abs_value(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (k == 0 || mag != 1) {
      out += to_string(mag);
      if (k != 0 && mag.get_den() != 1) out += "*";
    }
    if (k != 0) {
      out += var;
      if (k != 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

UPoly laurent_mod(const LaurentPoly& p, const UPoly& m) {
  if (m.is_zero() || sgn(m.coeff(0)) == 0) {
    throw std::domain_error("laurent_mod needs a modulus with nonzero constant term");
  }
  if (p.is_zero()) return {};
  auto [shift, body] = p.split();
  UPoly r = body % m;
  if (shift == 0 || m.degree() == 0) return m.degree() == 0 ? UPoly() : r;
  UPoly step = shift > 0 ? UPoly::x() % m : inverse_mod(UPoly::x(), m);
  return (r * pow_mod(step, static_cast<unsigned long>(std::abs(shift)), m)) % m;
}

}  // namespace knotconc
