#pragma once

#include <string>
#include <vector>

#include "knotconc/circle.hpp"
#include "knotconc/laurent.hpp"
#include "knotconc/matrix.hpp"
#include "knotconc/rational.hpp"
#include "knotconc/roots.hpp"

namespace knotconc {

// Seifert matrix of a knot: a 2g x 2g rational matrix V with
// det(V - V^T) = +-1.  The 0 x 0 matrix is the unknot.
class SeifertMatrix {
 public:
  SeifertMatrix() = default;
  // Throws InvalidSeifertMatrix.
  explicit SeifertMatrix(RationalMatrix entries, std::string name = "");

  const RationalMatrix& entries() const { return v_; }
  size_t dimension() const { return v_.rows(); }
  int genus() const { return static_cast<int>(v_.rows() / 2); }
  const std::string& name() const { return name_; }
  SeifertMatrix renamed(std::string name) const;

  friend bool operator==(const SeifertMatrix& a, const SeifertMatrix& b) { return a.v_ == b.v_; }

 private:
  RationalMatrix v_;
  std::string name_;
};

// det(V - t V^T) normalized so that D(t) = D(1/t) and D(1) = 1.
LaurentPoly alexander_polynomial(const SeifertMatrix& v);

// 0 iff |D(-1)| = +-1 mod 8.  Requires D(-1) to be an odd integer, which
// holds for every integral Seifert matrix; throws InvalidSeifertMatrix
// otherwise.
int arf(const SeifertMatrix& v);

// Signature of (1 - w) V + (1 - conj w) V^T at w = circle_value(p).
// Throws AtOne at w = 1 and AtRootOfAlexander where D(w) = 0.
int lt_signature(const SeifertMatrix& v, const CirclePoint& p);

// One open arc of the upper semicircle between consecutive jumps.
// (cos_lo, cos_hi) is a root-free window inside the arc in the x = cos
// coordinate; any point with cosine in that window lies on the arc.
struct SignatureArc {
  Rational cos_lo;
  Rational cos_hi;
  int value = 0;
  CirclePoint sample = CirclePoint::infinity();
};

// Signature function on the upper semicircle, ordered from w = 1 toward
// w = -1.  jumps[k] isolates the cosine of the k-th jump (decreasing x);
// arcs[k] lies between jumps[k - 1] and jumps[k].
struct SignatureProfile {
  std::vector<IsolatingInterval> jumps;
  std::vector<SignatureArc> arcs;
  int value_at_minus_one = 0;
};

SignatureProfile signature_profile(const SeifertMatrix& v);

struct Rho0Result {
  Rational value;
  Rational error_bound;
  SignatureProfile profile;
};

// Average of the signature function over the circle, certified:
// |rho0 - value| <= error_bound <= tol.  Requires tol > 0.
Rho0Result rho0(const SeifertMatrix& v, const Rational& tol);

SeifertMatrix connected_sum(const SeifertMatrix& a, const SeifertMatrix& b);

// -V^T
SeifertMatrix mirror(const SeifertMatrix& v);

// True iff delta = f(t) f(1/t) up to units of Q[t, 1/t].
bool fox_milnor_test(const LaurentPoly& delta);

}  // namespace knotconc
