#pragma once

#include <optional>
#include <string>
#include <vector>

#include "knotconc/infection.hpp"
#include "knotconc/ledger.hpp"

namespace knotconc {

enum class VerdictStatus { Obstructed, Consistent, Conditional };

// "OBSTRUCTED", "CONSISTENT", "CONDITIONAL"
std::string to_string(VerdictStatus s);

// One machine-checkable step.  replay() re-evaluates it against the
// verdict's assignment and compares with `expected`.
struct CertificateStep {
  enum class Kind {
    ExcludesZero,  // the ledger evaluates to an interval missing 0
    IsZero,        // the ledger evaluates to exactly 0
    AbsGreater,    // |ledger| > bound everywhere
    AbsAtMost,     // |ledger| <= bound everywhere
    OddProduct,    // multiple * value is odd (Arf of a multiple)
  };
  Kind kind = Kind::ExcludesZero;
  RhoLedger ledger;
  Interval bound;       // AbsGreater, AbsAtMost
  Integer multiple;     // OddProduct
  Integer value;        // OddProduct
  bool expected = true;
  std::string description;
};

std::string to_string(CertificateStep::Kind k);
// Throws std::invalid_argument on an unknown name.
CertificateStep::Kind parse_step_kind(std::string_view name);

struct Verdict {
  VerdictStatus status = VerdictStatus::Conditional;
  std::string theorem;  // fos, j2, main, main3, torsion
  std::string conclusion;
  // Equations one of which must hold for sliceness (fos), or the missing
  // inequality (main, main3).
  std::vector<std::string> conditions;
  std::vector<std::string> notes;
  Assignment assignment;
  std::vector<CertificateStep> certificate;
};

// Evaluates one step; nullopt when its ledger leaves unassigned atoms.
std::optional<bool> evaluate_step(const CertificateStep& s, const Assignment& a);
// True iff every step evaluates to its expected result.
bool replay(const Verdict& v);

// Entries of fos(e) under `a` merged with certified ρ₀ values of the
// inputs (entries of `a` win).  OBSTRUCTED iff every entry excludes 0.
Verdict check_fos(const ExprPtr& e, const Assignment& a, const Rational& tol);

// Slice J2(K) forces ρ₀(K) ∈ {0, -½ρ¹(base)}.  The value of ρ¹(base) comes
// from `a`, or from the constant D = -½ρ¹(base).
Verdict check_j2(const std::string& knot, const Interval& knot_rho0, const std::string& base, const Assignment& a);
// e must be t(t(K)); K's ρ₀ is taken from `a` or computed.
// Throws HypothesisFailed("shape").
Verdict check_j2(const ExprPtr& e, const Assignment& a, const Rational& tol);

// |ρ₀(K)| > C for the constant C of the family.
Verdict check_main(const std::string& knot, const Interval& knot_rho0, std::optional<int> knot_arf,
                   const Assignment& a);
// e is t^n(K) for n >= 0.
Verdict check_main(const ExprPtr& e, const Assignment& a, const Rational& tol);

// (m^n - 1) / (m - 1) * c, or n * c when m = 1.  Requires n >= 1, m >= 1.
Rational main3_constant(int n, int m, const Rational& c);
Interval main3_constant(int n, int m, const Interval& c);
Rational main3_constant(const std::vector<TemplatePtr>& templates, const Rational& c);

// Throws HypothesisFailed("arf" | "slice" | "blanchfield" | "shape").
// The bound is main3_constant(templates, C') with C' from `a`.
Verdict check_main3(const std::vector<TemplatePtr>& templates, const ExprPtr& seed, const Assignment& a,
                    const Rational& tol);
Verdict check_main3(const ExprPtr& e, const Assignment& a, const Rational& tol);

// #^k of a template: block-summed base, sites of copy i renamed "<site>_<i>".
// Slice when the result passes the slice checks; throws ValidationError
// otherwise (slice = true requested).
TemplatePtr template_power(const TemplatePtr& t, int k, bool slice);

// multiple * K with K = outer(J) and J = R^{n-1}(J0).  Odd multiples of an
// Arf-one K are obstructed directly; even multiples go through check_main3
// with the outer template replaced by its connected-sum power.  A constant
// D in `a` is used as the bound directly; otherwise C' gives
// main3_constant.
Verdict check_torsion(const ExprPtr& e, int multiple, const Assignment& a, const Rational& tol);

struct IndependenceResult {
  size_t rank = 0;
  // Some combination of the ledgers is a nonzero multiple of the target.
  bool hits_target = false;
};

// Exact rank over the atom basis plus a constant coordinate.
IndependenceResult independence_check(const std::vector<RhoLedger>& ledgers, const RhoLedger& target);

}  // namespace knotconc
