#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "knotconc/rational.hpp"

namespace knotconc {

// Symbolic rho-invariant: rho1(knot), rho(knot, P), or rho0(knot).
struct RhoAtom {
  enum class Kind { Rho1, RhoP, Rho0 };
  Kind kind = Kind::Rho0;
  std::string knot;
  std::string submodule;  // RhoP only

  static RhoAtom rho0(std::string knot) { return {Kind::Rho0, std::move(knot), ""}; }
  static RhoAtom rho1(std::string knot) { return {Kind::Rho1, std::move(knot), ""}; }
  static RhoAtom rho(std::string knot, std::string p) { return {Kind::RhoP, std::move(knot), std::move(p)}; }

  friend auto operator<=>(const RhoAtom&, const RhoAtom&) = default;
};

// "ρ₀(trefoil)", "ρ¹(9_46)", "ρ(9_46, P[t - 2])"
std::string to_string(const RhoAtom& a);
// "rho0(trefoil)", "rho1(9_46)", "rho(9_46, P[t - 2])"
std::string to_ascii(const RhoAtom& a);

// Exact Q-linear combination of atoms plus a rational constant.
class RhoLedger {
 public:
  RhoLedger() = default;
  explicit RhoLedger(const Rational& c) : constant_(c) {}
  static RhoLedger atom(const RhoAtom& a, const Rational& coeff = Rational(1));

  const Rational& constant() const { return constant_; }
  const std::map<RhoAtom, Rational>& atoms() const { return atoms_; }
  Rational coefficient(const RhoAtom& a) const;
  bool is_zero() const { return sgn(constant_) == 0 && atoms_.empty(); }
  bool is_constant() const { return atoms_.empty(); }

  RhoLedger& operator+=(const RhoLedger& o);
  RhoLedger& operator-=(const RhoLedger& o);
  RhoLedger& operator*=(const Rational& c);

  friend RhoLedger operator+(RhoLedger a, const RhoLedger& b) { return a += b; }
  friend RhoLedger operator-(RhoLedger a, const RhoLedger& b) { return a -= b; }
  friend RhoLedger operator-(RhoLedger a) { return a *= Rational(-1); }
  friend RhoLedger operator*(const Rational& c, RhoLedger a) { return a *= c; }
  friend bool operator==(const RhoLedger& a, const RhoLedger& b) {
    return a.constant_ == b.constant_ && a.atoms_ == b.atoms_;
  }

 private:
  void add(const RhoAtom& a, const Rational& c);
  Rational constant_;
  std::map<RhoAtom, Rational> atoms_;
};

// "ρ¹(9_46) + 2ρ₀(trefoil) - 8/3"; ascii = true spells atoms as rho0(...).
std::string to_string(const RhoLedger& l, bool ascii = false);

// Inverse of to_string in either spelling; also accepts "2*rho0(K)".
// Throws std::invalid_argument with an offset.
RhoLedger parse_ledger(std::string_view text);
RhoAtom parse_atom(std::string_view text);

// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;

  static Interval point(const Rational& q) { return {q, q}; }
  // Throws std::invalid_argument when lo > hi.
  static Interval make(const Rational& lo, const Rational& hi);
  static Interval around(const Rational& mid, const Rational& radius) { return make(mid - radius, mid + radius); }

  bool is_point() const { return lo == hi; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool excludes_zero() const { return sgn(lo) > 0 || sgn(hi) < 0; }
  Rational width() const { return hi - lo; }
  // min and max of |x| over the interval.
  Rational abs_lower() const;
  Rational abs_upper() const;

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend Interval operator*(const Rational& c, const Interval& a);
  friend bool operator==(const Interval&, const Interval&) = default;
};

// "-8/3" for points, "[lo, hi]" otherwise.
std::string to_string(const Interval& i);

// Values for atoms and for the named constants C, C' (spelled Cprime) and D.
// Nothing is ever defaulted: unassigned atoms stay symbolic.
class Assignment {
 public:
  void set(const RhoAtom& a, const Interval& v) { atoms_[a] = v; }
  void set_constant(const std::string& name, const Interval& v);
  std::optional<Interval> get(const RhoAtom& a) const;
  std::optional<Interval> constant(const std::string& name) const;

  const std::map<RhoAtom, Interval>& atoms() const { return atoms_; }
  const std::map<std::string, Interval>& constants() const { return constants_; }
  // Entries of `o` are added; existing entries win.
  void merge(const Assignment& o);

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::map<RhoAtom, Interval> atoms_;
  std::map<std::string, Interval> constants_;
};

// Canonical constant name: "C'" and "Cprime" are the same constant.
std::string canonical_constant(std::string_view name);

// Numeric interval of the assigned part plus the symbolic residue of the
// unassigned atoms.
struct Evaluation {
  Interval numeric;
  RhoLedger residual;

  bool is_numeric() const { return residual.is_constant(); }
};

Evaluation evaluate(const RhoLedger& l, const Assignment& a);

// Residual plus numeric part as one form, e.g. "ρ¹(9_46) - 8/3"; interval
// numerics print as "ρ¹(9_46) + [a, b]".
std::string to_string(const Evaluation& e);

}  // namespace knotconc
