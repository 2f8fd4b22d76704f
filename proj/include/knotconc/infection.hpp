#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knotconc/blanchfield.hpp"
#include "knotconc/ledger.hpp"
#include "knotconc/seifert.hpp"

namespace knotconc {

// Infection curve of a template: a class in the Alexander module of the base.
struct Site {
  std::string name;
  ModuleElement cls;
  // The curve misses a Seifert surface of the base.
  bool seifert_disjoint = true;
};

// Generalized doubling operator R_eta: a base knot with infection sites.
class Template {
 public:
  // ribbon_divisors are orders of submodules that extend over a ribbon-disk
  // exterior; each must be a metabolizer.  Throws ValidationError.
  Template(std::string name, SeifertMatrix base, std::vector<Site> sites, bool slice,
           std::vector<UPoly> ribbon_divisors = {}, bool amphichiral = false);

  const std::string& name() const { return name_; }
  const SeifertMatrix& base() const { return base_; }
  const AlexanderModule& module() const { return *module_; }
  const std::vector<Site>& sites() const { return sites_; }
  const Site* site(const std::string& name) const;
  bool is_slice() const { return slice_; }
  bool is_amphichiral() const { return amphichiral_; }
  const std::vector<UPoly>& ribbon_divisors() const { return ribbon_; }
  bool is_ribbon_metabolizer(const Submodule& p) const;

 private:
  std::string name_;
  SeifertMatrix base_;
  std::shared_ptr<const AlexanderModule> module_;
  std::vector<Site> sites_;
  bool slice_;
  std::vector<UPoly> ribbon_;
  bool amphichiral_;
};

using TemplatePtr = std::shared_ptr<const Template>;

class KnotExpr;
using ExprPtr = std::shared_ptr<const KnotExpr>;

// Immutable expression tree: Atom | Sum | Infect.  Nodes may be shared.
class KnotExpr {
 public:
  enum class Kind { Atom, Sum, Infect };
  using Inputs = std::vector<std::pair<std::string, ExprPtr>>;

  // Flags are checked against the invariants (ValidationError): a slice
  // atom needs Arf 0, a Fox-Milnor Alexander polynomial and zero signature
  // function; an amphichiral atom needs zero signature function.
  static ExprPtr atom(SeifertMatrix v, bool slice = false, bool amphichiral = false);
  static ExprPtr sum(ExprPtr a, ExprPtr b);
  // Throws UnknownSite, then MissingSite.
  static ExprPtr infect(TemplatePtr t, const std::map<std::string, ExprPtr>& inputs);

  Kind kind() const { return kind_; }
  // Atom
  const SeifertMatrix& matrix() const { return matrix_; }
  bool slice_flag() const { return slice_; }
  bool amphichiral_flag() const { return amphichiral_; }
  // Sum
  const ExprPtr& left() const { return left_; }
  const ExprPtr& right() const { return right_; }
  // Infect; inputs are in template site order.
  const TemplatePtr& templ() const { return templ_; }
  const Inputs& inputs() const { return inputs_; }
  // The unique input node when every site carries the same node.
  ExprPtr common_input() const;

  // Catalog name; empty when unnamed.
  const std::string& label() const { return label_; }
  ExprPtr with_label(std::string label) const;

  // Structural FNV-1a hash; equal trees hash equally.
  std::uint64_t hash() const { return hash_; }

 private:
  KnotExpr() = default;

  Kind kind_ = Kind::Atom;
  SeifertMatrix matrix_;
  bool slice_ = false;
  bool amphichiral_ = false;
  ExprPtr left_, right_;
  TemplatePtr templ_;
  Inputs inputs_;
  std::string label_;
  std::uint64_t hash_ = 0;
};

ExprPtr infect(const TemplatePtr& t, const std::map<std::string, ExprPtr>& inputs);
// n = 0 returns the seed; otherwise every site gets iterate_operator(t, n - 1, seed).
ExprPtr iterate_operator(const TemplatePtr& t, int n, const ExprPtr& seed);

// Label if present, else structure, e.g. "R946_op(R946_op(trefoil))".
std::string to_string(const KnotExpr& e);
// Name used for atoms of e: the label, an atom's matrix name, or "expr:<hex>".
std::string expr_id(const KnotExpr& e);

// Throws SiteNotSeifertDisjoint.
SeifertMatrix seifert_of(const KnotExpr& e);
Rho0Result rho0_of(const KnotExpr& e, const Rational& tol);
int arf_of(const KnotExpr& e);

// none < 0 < 0.5 < 1 < 1.5 < ... < slice
class Solvability {
 public:
  static Solvability none() { return Solvability(kNone); }
  static Solvability slice() { return Solvability(kSlice); }
  static Solvability level(int n) { return Solvability(2 * n); }
  static Solvability half_above(int n) { return Solvability(2 * n + 1); }

  bool is_none() const { return twice_ == kNone; }
  bool is_slice() const { return twice_ == kSlice; }
  // Twice the level; meaningful unless none or slice.
  int twice() const { return twice_; }
  // Largest integer n with level >= n; requires a finite, non-none level.
  int floor() const { return twice_ / 2; }

  friend auto operator<=>(const Solvability&, const Solvability&) = default;

 private:
  static constexpr int kNone = -1;
  static constexpr int kSlice = 1 << 30;
  explicit Solvability(int twice) : twice_(twice) {}
  int twice_;
};

// "none", "0", "0.5", "3", "slice"
std::string to_string(const Solvability& s);

Solvability solvability_lower_bound(const KnotExpr& e);

// Product of site counts along the deepest chain of infections.
Integer cphi_bound(const KnotExpr& e);

struct FosEntry {
  Submodule submodule;
  // "0", "<alpha>" when P is generated by a site class, else "P[...]".
  std::string label;
  RhoLedger ledger;
};

struct FirstOrderSignatureSet {
  std::string knot;
  std::vector<FosEntry> entries;
  // ρ₀ atoms appearing in entries, with the expression each one names.
  std::map<RhoAtom, ExprPtr> rho0_sources;
};

// Throws UnsupportedGenus, NotSquareFree, NotCyclic.
FirstOrderSignatureSet fos(const ExprPtr& e);

// Certified intervals for every ρ₀ atom of the set whose source has a
// computable Seifert matrix.
Assignment auto_assign_rho0(const FirstOrderSignatureSet& s, const Rational& tol);

// Peels infections whose inputs are one shared node: e = t_k(...t_1(seed)).
// templates are returned innermost first.
struct IteratedDecomposition {
  std::vector<TemplatePtr> templates;
  ExprPtr seed;
};
IteratedDecomposition decompose_iterated(const ExprPtr& e);

namespace builtins {

ExprPtr unknot();
ExprPtr trefoil();
ExprPtr figure_eight();
ExprPtr nine_46();
// 9_46 with sites alpha = (1, 0) and beta = (0, 1) and both metabolizers
// ribbon.
TemplatePtr r946_operator();
// Figure-eight with sites alpha = (1, 0) and beta = (0, 1), amphichiral.
TemplatePtr figure_eight_operator();

}  // namespace builtins

}  // namespace knotconc
