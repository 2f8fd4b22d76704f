#pragma once

#include <string>
#include <vector>

#include "knotconc/laurent.hpp"
#include "knotconc/matrix.hpp"
#include "knotconc/seifert.hpp"
#include "knotconc/upoly.hpp"

namespace knotconc {

// Row vector over Q[t, 1/t] representing a class in the Alexander module.
using ModuleElement = std::vector<LaurentPoly>;

// Smith form over Q[t]: a * w = u^-1 * diag(d) for some unimodular u, with
// d monic and d[i] | d[i + 1].  w_inv is the inverse of w.
struct SmithForm {
  std::vector<UPoly> diagonal;
  PolyMatrix w;
  PolyMatrix w_inv;
};
SmithForm smith_normal_form(const PolyMatrix& a);

// Element of Q(t) / Q[t, 1/t] in canonical form num / den: den monic with
// den(0) != 0, deg num < deg den, gcd(num, den) = 1.  Zero is 0 / 1.
class BlanchfieldValue {
 public:
  BlanchfieldValue() : den_(1) {}
  // Reduces num / den modulo Q[t, 1/t].  Throws on den = 0.
  static BlanchfieldValue from_fraction(const LaurentPoly& num, const LaurentPoly& den);

  const UPoly& numerator() const { return num_; }
  const UPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // t -> 1/t
  BlanchfieldValue conjugate() const;

  friend BlanchfieldValue operator+(const BlanchfieldValue& a, const BlanchfieldValue& b);
  friend BlanchfieldValue operator-(const BlanchfieldValue& a);
  friend BlanchfieldValue operator-(const BlanchfieldValue& a, const BlanchfieldValue& b) { return a + (-b); }
  friend BlanchfieldValue operator*(const LaurentPoly& q, const BlanchfieldValue& a);
  friend bool operator==(const BlanchfieldValue& a, const BlanchfieldValue& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  UPoly num_;
  UPoly den_;
};

std::string to_string(const BlanchfieldValue& v);

// Rational Alexander module Q[t, 1/t]^{2g} / (row space of tV - V^T).
class AlexanderModule {
 public:
  explicit AlexanderModule(const SeifertMatrix& v);

  const SeifertMatrix& seifert() const { return v_; }
  const LaurentMatrix& presentation() const { return presentation_; }
  size_t rank() const { return v_.dimension(); }
  // Monic order with nonzero constant term; 1 for the trivial module.
  const UPoly& order() const { return order_; }
  // Nonunit invariant factors, monic, with nonzero constant terms.
  std::vector<UPoly> invariant_factors() const;
  bool is_trivial() const { return order_.degree() == 0; }
  bool is_cyclic() const { return nonunit_.size() <= 1; }
  bool is_squarefree() const { return knotconc::is_squarefree(order_); }

  // Coordinates of x in the decomposition, one residue per invariant factor.
  std::vector<UPoly> coordinates(const ModuleElement& x) const;
  bool is_zero(const ModuleElement& x) const;
  bool equal(const ModuleElement& x, const ModuleElement& y) const;

  // Cyclic case only (NotCyclic otherwise): x = c(x) * generator() with c
  // reduced modulo order().
  ModuleElement generator() const;
  UPoly cyclic_coordinate(const ModuleElement& x) const;
  ModuleElement from_cyclic_coordinate(const UPoly& c) const;

  // The classes of the standard basis vectors.
  ModuleElement basis(size_t i) const;

  BlanchfieldValue pair(const ModuleElement& x, const ModuleElement& y) const;

 private:
  void require_cyclic(const char* what) const;
  void check_length(const ModuleElement& x) const;

  SeifertMatrix v_;
  LaurentMatrix presentation_;
  PolyMatrix adjugate_;
  UPoly det_;
  UPoly order_;
  SmithForm smith_;
  std::vector<UPoly> reduced_;   // diagonal stripped of t-powers, monic
  std::vector<size_t> nonunit_;  // indices with deg reduced_ > 0
};

// (1 - t) x (tV - V^T)^-1 conj(y)^T in Q(t) / Q[t, 1/t].
BlanchfieldValue blanchfield_pair(const AlexanderModule& m, const ModuleElement& x, const ModuleElement& y);
BlanchfieldValue blanchfield_pair(const SeifertMatrix& v, const ModuleElement& x, const ModuleElement& y);

// Submodule of a cyclic module Q[t, 1/t] / (D), tagged by its order d (a
// monic divisor of D).  It is generated by (D / d) times the module
// generator.
struct Submodule {
  UPoly divisor;
  ModuleElement generator;

  friend bool operator==(const Submodule& a, const Submodule& b) { return a.divisor == b.divisor; }
};

std::string to_string(const Submodule& p);

// Every submodule of a module with square-free order, one per monic divisor
// of the order, ordered by canonical_less on the divisor.  Throws
// NotSquareFree, then NotCyclic.
std::vector<Submodule> submodule_lattice(const AlexanderModule& m);

// The submodule generated by the given elements (cyclic case).
Submodule submodule_generated_by(const AlexanderModule& m, const std::vector<ModuleElement>& xs);

bool contains(const AlexanderModule& m, const Submodule& p, const ModuleElement& x);
bool is_subset(const Submodule& p, const Submodule& q);

// P-perp, found by testing every member of the lattice against the
// generator of P.  Requires square-free order.
Submodule orthogonal(const AlexanderModule& m, const Submodule& p);
bool is_isotropic(const AlexanderModule& m, const Submodule& p);
bool is_metabolizer(const AlexanderModule& m, const Submodule& p);

// True iff the class of x in M / P is nonzero.
bool class_in_quotient(const AlexanderModule& m, const ModuleElement& x, const Submodule& p);

}  // namespace knotconc
