#include "knotconc/ledger.hpp"

#include <cctype>
#include <stdexcept>

namespace knotconc {

namespace {

constexpr std::string_view kRho = "\xCF\x81";           // ρ
constexpr std::string_view kSubZero = "\xE2\x82\x80";   // ₀
constexpr std::string_view kSupOne = "\xC2\xB9";        // ¹
constexpr std::string_view kMinus = "\xE2\x88\x92";     // −

std::string coefficient_prefix(const Rational& mag) {
  if (mag == 1) return "";
  if (mag.get_den() == 1) return to_string(mag);
  return "(" + to_string(mag) + ")";
}

}  // namespace

std::string to_string(const RhoAtom& a) {
  switch (a.kind) {
    case RhoAtom::Kind::Rho0: return std::string(kRho) + std::string(kSubZero) + "(" + a.knot + ")";
    case RhoAtom::Kind::Rho1: return std::string(kRho) + std::string(kSupOne) + "(" + a.knot + ")";
    case RhoAtom::Kind::RhoP: return std::string(kRho) + "(" + a.knot + ", " + a.submodule + ")";
  }
  return {};
}

std::string to_ascii(const RhoAtom& a) {
  switch (a.kind) {
    case RhoAtom::Kind::Rho0: return "rho0(" + a.knot + ")";
    case RhoAtom::Kind::Rho1: return "rho1(" + a.knot + ")";
    case RhoAtom::Kind::RhoP: return "rho(" + a.knot + ", " + a.submodule + ")";
  }
  return {};
}

RhoLedger RhoLedger::atom(const RhoAtom& a, const Rational& coeff) {
  RhoLedger l;
  l.add(a, coeff);
  return l;
}

Rational RhoLedger::coefficient(const RhoAtom& a) const {
  auto it = atoms_.find(a);
  return it == atoms_.end() ? Rational(0) : it->second;
}

void RhoLedger::add(const RhoAtom& a, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = atoms_.try_emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) atoms_.erase(it);
  }
}

RhoLedger& RhoLedger::operator+=(const RhoLedger& o) {
  constant_ += o.constant_;
  for (const auto& [a, c] : o.atoms_) add(a, c);
  return *this;
}

RhoLedger& RhoLedger::operator-=(const RhoLedger& o) {
  constant_ -= o.constant_;
  for (const auto& [a, c] : o.atoms_) add(a, Rational(-c));
  return *this;
}

RhoLedger& RhoLedger::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    constant_ = 0;
    atoms_.clear();
    return *this;
  }
  constant_ *= c;
  for (auto& [a, v] : atoms_) v *= c;
  return *this;
}

std::string to_string(const RhoLedger& l, bool ascii) {
  std::string out;
  auto emit = [&](const Rational& c, const std::string& body) {
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    out += body;
  };
  for (const auto& [a, c] : l.atoms()) emit(c, coefficient_prefix(abs_value(c)) + (ascii ? to_ascii(a) : to_string(a)));
  if (sgn(l.constant()) != 0 || out.empty()) {
    if (out.empty()) return to_string(l.constant());
    emit(l.constant(), to_string(abs_value(l.constant())));
  }
  return out;
}

namespace {

class LedgerParser {
 public:
  explicit LedgerParser(std::string_view s) : s_(s) {}

  RhoLedger ledger() {
    RhoLedger out;
    skip_ws();
    if (at_end()) fail("empty ledger");
    bool first = true;
    while (!at_end()) {
      Rational sign(1);
      if (eat_minus()) sign = -1;
      else if (eat("+")) {}
      else if (!first) fail("expected '+' or '-'");
      skip_ws();
      out += sign * term();
      first = false;
      skip_ws();
    }
    return out;
  }

  RhoAtom single_atom() {
    skip_ws();
    auto a = atom();
    if (!a) fail("expected an atom");
    skip_ws();
    if (!at_end()) fail("trailing characters");
    return *a;
  }

 private:
  RhoLedger term() {
    Rational coeff(1);
    bool have_coeff = false;
    if (eat("(")) {
      coeff = number();
      skip_ws();
      if (!eat(")")) fail("expected ')'");
      have_coeff = true;
    } else if (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
      coeff = number();
      have_coeff = true;
    }
    skip_ws();
    if (have_coeff && eat("*")) skip_ws();
    auto a = atom();
    if (!a) {
      if (!have_coeff) fail("expected a number or an atom");
      return RhoLedger(coeff);
    }
    return RhoLedger::atom(*a, coeff);
  }

  std::optional<RhoAtom> atom() {
    RhoAtom::Kind kind;
    if (eat("rho0") || eat(std::string(kRho) + std::string(kSubZero))) kind = RhoAtom::Kind::Rho0;
    else if (eat("rho1") || eat(std::string(kRho) + std::string(kSupOne))) kind = RhoAtom::Kind::Rho1;
    else if (eat("rho") || eat(kRho)) kind = RhoAtom::Kind::RhoP;
    else return std::nullopt;
    skip_ws();
    if (!eat("(")) fail("expected '('");
    std::string knot = trim(until(kind == RhoAtom::Kind::RhoP ? ",)" : ")"));
    if (knot.empty()) fail("empty knot name");
    std::string sub;
    if (kind == RhoAtom::Kind::RhoP) {
      if (!eat(",")) fail("expected ',' in rho(knot, P)");
      sub = trim(until(")"));
      if (sub.empty()) fail("empty submodule name");
    }
    if (!eat(")")) fail("expected ')'");
    return RhoAtom{kind, knot, sub};
  }

  // Reads up to the first stop character outside brackets.
  std::string until(std::string_view stops) {
    size_t start = pos_;
    int depth = 0;
    while (!at_end()) {
      char c = peek();
      if (depth == 0 && stops.find(c) != std::string_view::npos) break;
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  Rational number() {
    size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/' || peek() == '.')) ++pos_;
    try {
      return parse_rational(s_.substr(start, pos_ - start));
    } catch (const std::invalid_argument&) {
      pos_ = start;
      fail("malformed number");
    }
  }

  static std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
  }

  bool eat(std::string_view tok) {
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  bool eat_minus() { return eat("-") || eat(kMinus); }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

RhoLedger parse_ledger(std::string_view text) { return LedgerParser(text).ledger(); }
RhoAtom parse_atom(std::string_view text) { return LedgerParser(text).single_atom(); }

Interval Interval::make(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("interval with lo > hi");
  return {lo, hi};
}

Rational Interval::abs_lower() const {
  if (sgn(lo) > 0) return lo;
  if (sgn(hi) < 0) return -hi;
  return Rational(0);
}

Rational Interval::abs_upper() const { return std::max(abs_value(lo), abs_value(hi)); }

Interval operator*(const Rational& c, const Interval& a) {
  if (sgn(c) >= 0) return {c * a.lo, c * a.hi};
  return {c * a.hi, c * a.lo};
}

std::string to_string(const Interval& i) {
  if (i.is_point()) return to_string(i.lo);
  // Short endpoints stay exact; long ones print as decimals.
  auto end = [](const Rational& q) { return q.get_den() <= 1000000 ? to_string(q) : to_decimal(q); };
  return "[" + end(i.lo) + ", " + end(i.hi) + "]";
}

std::string canonical_constant(std::string_view name) {
  if (name == "C'" || name == "Cprime" || name == "C\xE2\x80\xB2") return "Cprime";
  return std::string(name);
}

void Assignment::set_constant(const std::string& name, const Interval& v) { constants_[canonical_constant(name)] = v; }

std::optional<Interval> Assignment::get(const RhoAtom& a) const {
  auto it = atoms_.find(a);
  if (it == atoms_.end()) return std::nullopt;
  return it->second;
}

std::optional<Interval> Assignment::constant(const std::string& name) const {
  auto it = constants_.find(canonical_constant(name));
  if (it == constants_.end()) return std::nullopt;
  return it->second;
}

void Assignment::merge(const Assignment& o) {
  for (const auto& [a, v] : o.atoms_) atoms_.try_emplace(a, v);
  for (const auto& [n, v] : o.constants_) constants_.try_emplace(n, v);
}

Evaluation evaluate(const RhoLedger& l, const Assignment& a) {
  Evaluation out{Interval::point(l.constant()), RhoLedger()};
  for (const auto& [atom, c] : l.atoms()) {
    if (auto v = a.get(atom)) out.numeric = out.numeric + c * *v;
    else out.residual += RhoLedger::atom(atom, c);
  }
  return out;
}

std::string to_string(const Evaluation& e) {
  if (e.numeric.is_point()) return to_string(e.residual + RhoLedger(e.numeric.lo));
  if (e.residual.is_zero()) return to_string(e.numeric);
  return to_string(e.residual) + " + " + to_string(e.numeric);
}

}  // namespace knotconc
