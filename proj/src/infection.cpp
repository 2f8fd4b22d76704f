#include "knotconc/infection.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "knotconc/errors.hpp"
#include "knotconc/knots.hpp"

namespace knotconc {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  h ^= 0xff;  // field separator
  h *= kFnvPrime;
}

void fnv_mix(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

bool signature_vanishes(const SeifertMatrix& v) {
  const SignatureProfile prof = signature_profile(v);
  if (prof.value_at_minus_one != 0) return false;
  return std::all_of(prof.arcs.begin(), prof.arcs.end(), [](const SignatureArc& a) { return a.value == 0; });
}

void check_slice_invariants(const std::string& name, const SeifertMatrix& v) {
  if (arf(v) != 0) throw ValidationError(name, "flagged slice but the Arf invariant is 1");
  if (!fox_milnor_test(alexander_polynomial(v))) {
    throw ValidationError(name, "flagged slice but the Alexander polynomial fails Fox-Milnor");
  }
  if (!signature_vanishes(v)) throw ValidationError(name, "flagged slice but the signature function is nonzero");
}

}  // namespace

Template::Template(std::string name, SeifertMatrix base, std::vector<Site> sites, bool slice,
                   std::vector<UPoly> ribbon_divisors, bool amphichiral)
    : name_(std::move(name)),
      base_(std::move(base)),
      sites_(std::move(sites)),
      slice_(slice),
      amphichiral_(amphichiral) {
  if (name_.empty()) throw ValidationError("<template>", "empty template name");
  module_ = std::make_shared<const AlexanderModule>(base_);
  std::set<std::string> seen;
  for (const auto& s : sites_) {
    if (s.name.empty()) throw ValidationError(name_, "empty site name");
    if (!seen.insert(s.name).second) throw ValidationError(name_, "duplicate site '" + s.name + "'");
    if (s.cls.size() != base_.dimension()) {
      throw ValidationError(name_, "site '" + s.name + "' has " + std::to_string(s.cls.size()) +
                                       " coordinates, expected " + std::to_string(base_.dimension()));
    }
  }
  if (slice_) check_slice_invariants(name_, base_);
  if (amphichiral_ && !signature_vanishes(base_)) {
    throw ValidationError(name_, "flagged amphichiral but the signature function is nonzero");
  }
  if (!ribbon_divisors.empty()) {
    if (!slice_) throw ValidationError(name_, "ribbon metabolizers given for a template not flagged slice");
    if (!module_->is_cyclic() || !module_->is_squarefree()) {
      throw ValidationError(name_, "ribbon metabolizers need a cyclic module with square-free order");
    }
    const auto lattice = submodule_lattice(*module_);
    for (const auto& d : ribbon_divisors) {
      if (d.is_zero()) throw ValidationError(name_, "zero ribbon divisor");
      const UPoly key = d.monic();
      auto it = std::find_if(lattice.begin(), lattice.end(), [&](const Submodule& p) { return p.divisor == key; });
      if (it == lattice.end()) {
        throw ValidationError(name_, "ribbon divisor " + to_string(key, "t") + " does not divide the order");
      }
      if (!is_metabolizer(*module_, *it)) {
        throw ValidationError(name_, "ribbon divisor " + to_string(key, "t") + " is not a metabolizer");
      }
      if (std::find(ribbon_.begin(), ribbon_.end(), key) == ribbon_.end()) ribbon_.push_back(key);
    }
    std::sort(ribbon_.begin(), ribbon_.end(), canonical_less);
  }
}

const Site* Template::site(const std::string& name) const {
  for (const auto& s : sites_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

bool Template::is_ribbon_metabolizer(const Submodule& p) const {
  return std::find(ribbon_.begin(), ribbon_.end(), p.divisor) != ribbon_.end();
}

ExprPtr KnotExpr::atom(SeifertMatrix v, bool slice, bool amphichiral) {
  const std::string name = v.name().empty() ? "<atom>" : v.name();
  if (slice) check_slice_invariants(name, v);
  if (amphichiral && !signature_vanishes(v)) {
    throw ValidationError(name, "flagged amphichiral but the signature function is nonzero");
  }
  auto e = std::shared_ptr<KnotExpr>(new KnotExpr());
  e->kind_ = Kind::Atom;
  e->slice_ = slice;
  e->amphichiral_ = amphichiral;
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, "atom");
  fnv_mix(h, std::to_string(v.dimension()));
  for (size_t i = 0; i < v.dimension(); ++i) {
    for (size_t j = 0; j < v.dimension(); ++j) fnv_mix(h, to_string(v.entries()(i, j)));
  }
  e->hash_ = h;
  e->matrix_ = std::move(v);
  return e;
}

ExprPtr KnotExpr::sum(ExprPtr a, ExprPtr b) {
  if (!a || !b) throw std::invalid_argument("sum: null operand");
  auto e = std::shared_ptr<KnotExpr>(new KnotExpr());
  e->kind_ = Kind::Sum;
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, "sum");
  fnv_mix(h, a->hash());
  fnv_mix(h, b->hash());
  e->hash_ = h;
  e->left_ = std::move(a);
  e->right_ = std::move(b);
  return e;
}

ExprPtr KnotExpr::infect(TemplatePtr t, const std::map<std::string, ExprPtr>& inputs) {
  if (!t) throw std::invalid_argument("infect: null template");
  for (const auto& [name, input] : inputs) {
    if (t->site(name) == nullptr) throw UnknownSite("template " + t->name() + " has no site '" + name + "'");
    if (!input) throw std::invalid_argument("infect: null input at site '" + name + "'");
  }
  auto e = std::shared_ptr<KnotExpr>(new KnotExpr());
  e->kind_ = Kind::Infect;
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, "infect");
  fnv_mix(h, t->name());
  for (const auto& s : t->sites()) {
    auto it = inputs.find(s.name);
    if (it == inputs.end()) throw MissingSite("template " + t->name() + ": site '" + s.name + "' is not assigned");
    e->inputs_.emplace_back(s.name, it->second);
    fnv_mix(h, s.name);
    fnv_mix(h, it->second->hash());
  }
  e->hash_ = h;
  e->templ_ = std::move(t);
  return e;
}

ExprPtr KnotExpr::common_input() const {
  if (kind_ != Kind::Infect || inputs_.empty()) return nullptr;
  const ExprPtr& first = inputs_.front().second;
  for (const auto& [name, input] : inputs_) {
    if (input != first) return nullptr;
  }
  return first;
}

ExprPtr KnotExpr::with_label(std::string label) const {
  auto e = std::shared_ptr<KnotExpr>(new KnotExpr(*this));
  e->label_ = std::move(label);
  return e;
}

ExprPtr infect(const TemplatePtr& t, const std::map<std::string, ExprPtr>& inputs) {
  return KnotExpr::infect(t, inputs);
}

ExprPtr iterate_operator(const TemplatePtr& t, int n, const ExprPtr& seed) {
  if (n < 0) throw std::invalid_argument("iterate_operator: negative count");
  ExprPtr cur = seed;
  for (int i = 0; i < n; ++i) {
    std::map<std::string, ExprPtr> inputs;
    for (const auto& s : t->sites()) inputs.emplace(s.name, cur);
    cur = KnotExpr::infect(t, inputs);
  }
  return cur;
}

std::string to_string(const KnotExpr& e) {
  if (!e.label().empty()) return e.label();
  switch (e.kind()) {
    case KnotExpr::Kind::Atom:
      return e.matrix().name().empty() ? "atom:" + hex(e.hash()) : e.matrix().name();
    case KnotExpr::Kind::Sum:
      return "(" + to_string(*e.left()) + " # " + to_string(*e.right()) + ")";
    case KnotExpr::Kind::Infect: {
      if (auto c = e.common_input()) return e.templ()->name() + "(" + to_string(*c) + ")";
      std::string out = e.templ()->name() + "(";
      for (size_t i = 0; i < e.inputs().size(); ++i) {
        if (i > 0) out += ", ";
        out += e.inputs()[i].first + "=" + to_string(*e.inputs()[i].second);
      }
      return out + ")";
    }
  }
  return {};
}

std::string expr_id(const KnotExpr& e) {
  if (!e.label().empty()) return e.label();
  if (e.kind() == KnotExpr::Kind::Atom && !e.matrix().name().empty()) return e.matrix().name();
  return "expr:" + hex(e.hash());
}

SeifertMatrix seifert_of(const KnotExpr& e) {
  switch (e.kind()) {
    case KnotExpr::Kind::Atom:
      return e.matrix();
    case KnotExpr::Kind::Sum:
      return connected_sum(seifert_of(*e.left()), seifert_of(*e.right()));
    case KnotExpr::Kind::Infect:
      for (const auto& s : e.templ()->sites()) {
        if (!s.seifert_disjoint) {
          throw SiteNotSeifertDisjoint("template " + e.templ()->name() + ": site '" + s.name +
                                       "' meets the Seifert surface");
        }
      }
      return e.templ()->base();
  }
  throw std::logic_error("seifert_of: bad node");
}

Rho0Result rho0_of(const KnotExpr& e, const Rational& tol) { return rho0(seifert_of(e), tol); }

int arf_of(const KnotExpr& e) { return arf(seifert_of(e)); }

std::string to_string(const Solvability& s) {
  if (s.is_none()) return "none";
  if (s.is_slice()) return "slice";
  std::string out = std::to_string(s.twice() / 2);
  if (s.twice() % 2 != 0) out += ".5";
  return out;
}

namespace {

class SolvabilitySolver {
 public:
  Solvability operator()(const KnotExpr& e) {
    auto it = memo_.find(&e);
    if (it != memo_.end()) return it->second;
    Solvability s = compute(e);
    if (s.is_none()) {
      // F_0 is exactly the Arf-zero knots.
      try {
        if (arf_of(e) == 0) s = Solvability::level(0);
      } catch (const SiteNotSeifertDisjoint&) {
      }
    }
    memo_.emplace(&e, s);
    return s;
  }

 private:
  Solvability compute(const KnotExpr& e) {
    switch (e.kind()) {
      case KnotExpr::Kind::Atom:
        if (e.slice_flag()) return Solvability::slice();
        return arf(e.matrix()) == 0 ? Solvability::level(0) : Solvability::none();
      case KnotExpr::Kind::Sum:
        return std::min((*this)(*e.left()), (*this)(*e.right()));
      case KnotExpr::Kind::Infect: {
        const Template& t = *e.templ();
        if (!t.is_slice()) return Solvability::none();
        Solvability lowest = Solvability::slice();
        for (const auto& [name, input] : e.inputs()) lowest = std::min(lowest, (*this)(*input));
        if (lowest.is_slice()) return lowest;
        if (lowest.is_none()) {
          // Same Seifert matrix as a slice knot: algebraically slice.
          const bool disjoint = std::all_of(t.sites().begin(), t.sites().end(),
                                            [](const Site& s) { return s.seifert_disjoint; });
          return disjoint ? Solvability::half_above(0) : Solvability::none();
        }
        return Solvability::level(lowest.floor() + 1);
      }
    }
    return Solvability::none();
  }

  std::unordered_map<const KnotExpr*, Solvability> memo_;
};

class CphiSolver {
 public:
  Integer operator()(const KnotExpr& e) {
    auto it = memo_.find(&e);
    if (it != memo_.end()) return it->second;
    Integer out(1);
    switch (e.kind()) {
      case KnotExpr::Kind::Atom:
        break;
      case KnotExpr::Kind::Sum:
        out = std::max((*this)(*e.left()), (*this)(*e.right()));
        break;
      case KnotExpr::Kind::Infect: {
        Integer deepest(1);
        for (const auto& [name, input] : e.inputs()) deepest = std::max(deepest, (*this)(*input));
        out = Integer(static_cast<unsigned long>(e.inputs().size())) * deepest;
        break;
      }
    }
    memo_.emplace(&e, out);
    return out;
  }

 private:
  std::unordered_map<const KnotExpr*, Integer> memo_;
};

}  // namespace

Solvability solvability_lower_bound(const KnotExpr& e) { return SolvabilitySolver()(e); }

Integer cphi_bound(const KnotExpr& e) { return CphiSolver()(e); }

namespace {

class FosBuilder {
 public:
  explicit FosBuilder(FirstOrderSignatureSet& out) : out_(out) {}

  // ρ₀ of an infecting knot: 0 once (0.5)-solvable, additive over sums,
  // otherwise a named atom.
  RhoLedger input_ledger(const ExprPtr& e) {
    if (solvable_(*e) >= Solvability::half_above(0)) return RhoLedger();
    if (e->kind() == KnotExpr::Kind::Sum) return input_ledger(e->left()) + input_ledger(e->right());
    RhoAtom a = RhoAtom::rho0(expr_id(*e));
    out_.rho0_sources.try_emplace(a, e);
    return RhoLedger::atom(a);
  }

 private:
  FirstOrderSignatureSet& out_;
  SolvabilitySolver solvable_;
};

std::string entry_label(const AlexanderModule& m, const Submodule& p, const std::vector<Site>& sites) {
  if (p.divisor.degree() == 0) return "0";
  for (const auto& s : sites) {
    if (submodule_generated_by(m, {s.cls}) == p) return "<" + s.name + ">";
  }
  return to_string(p);
}

std::vector<Submodule> isotropic_proper(const AlexanderModule& m) {
  std::vector<Submodule> out;
  for (const auto& p : submodule_lattice(m)) {
    if (p.divisor == m.order()) continue;
    if (is_isotropic(m, p)) out.push_back(p);
  }
  return out;
}

}  // namespace

FirstOrderSignatureSet fos(const ExprPtr& e) {
  FirstOrderSignatureSet out;
  out.knot = to_string(*e);
  switch (e->kind()) {
    case KnotExpr::Kind::Sum:
      throw UnsupportedGenus("fos: connected sums are not supported");
    case KnotExpr::Kind::Atom: {
      const AlexanderModule m(e->matrix());
      const std::string name = expr_id(*e);
      for (const auto& p : isotropic_proper(m)) {
        RhoLedger l;
        if (p.divisor.degree() == 0) {
          if (!e->amphichiral_flag()) l = RhoLedger::atom(RhoAtom::rho1(name));
        } else {
          l = RhoLedger::atom(RhoAtom::rho(name, to_string(p)));
        }
        out.entries.push_back({p, entry_label(m, p, {}), l});
      }
      return out;
    }
    case KnotExpr::Kind::Infect: {
      const Template& t = *e->templ();
      if (t.base().genus() != 1) {
        throw UnsupportedGenus("fos: template " + t.name() + " has genus " + std::to_string(t.base().genus()));
      }
      const AlexanderModule& m = t.module();
      if (!m.is_squarefree()) throw NotSquareFree("fos: template " + t.name() + " has non-square-free order");
      const std::string base = t.base().name().empty() ? t.name() : t.base().name();
      FosBuilder builder(out);
      for (const auto& p : isotropic_proper(m)) {
        RhoLedger l;
        if (t.is_ribbon_metabolizer(p)) {
          // extends over the ribbon-disk exterior
        } else if (p.divisor.degree() == 0) {
          if (!t.is_amphichiral()) l = RhoLedger::atom(RhoAtom::rho1(base));
        } else {
          l = RhoLedger::atom(RhoAtom::rho(base, to_string(p)));
        }
        for (size_t i = 0; i < t.sites().size(); ++i) {
          if (class_in_quotient(m, t.sites()[i].cls, p)) l += builder.input_ledger(e->inputs()[i].second);
        }
        out.entries.push_back({p, entry_label(m, p, t.sites()), l});
      }
      return out;
    }
  }
  return out;
}

Assignment auto_assign_rho0(const FirstOrderSignatureSet& s, const Rational& tol) {
  Assignment a;
  for (const auto& [atom, src] : s.rho0_sources) {
    try {
      const Rho0Result r = rho0_of(*src, tol);
      a.set(atom, Interval::around(r.value, r.error_bound));
    } catch (const SiteNotSeifertDisjoint&) {
    }
  }
  return a;
}

IteratedDecomposition decompose_iterated(const ExprPtr& e) {
  IteratedDecomposition out;
  ExprPtr cur = e;
  while (cur->kind() == KnotExpr::Kind::Infect) {
    ExprPtr next = cur->common_input();
    if (!next) break;
    out.templates.push_back(cur->templ());
    cur = next;
  }
  std::reverse(out.templates.begin(), out.templates.end());
  out.seed = cur;
  return out;
}

namespace builtins {

namespace {

ModuleElement vec(long a, long b) { return {LaurentPoly(UPoly(a), 0), LaurentPoly(UPoly(b), 0)}; }

}  // namespace

ExprPtr unknot() {
  static const ExprPtr e = KnotExpr::atom(knots::unknot(), true, true);
  return e;
}

ExprPtr trefoil() {
  static const ExprPtr e = KnotExpr::atom(knots::trefoil());
  return e;
}

ExprPtr figure_eight() {
  static const ExprPtr e = KnotExpr::atom(knots::figure_eight(), false, true);
  return e;
}

ExprPtr nine_46() {
  static const ExprPtr e = KnotExpr::atom(knots::nine_46(), true);
  return e;
}

TemplatePtr r946_operator() {
  static const TemplatePtr t = std::make_shared<const Template>(
      "R946_op", knots::nine_46(), std::vector<Site>{{"alpha", vec(1, 0), true}, {"beta", vec(0, 1), true}}, true,
      std::vector<UPoly>{UPoly({Rational(-2), Rational(1)}), UPoly({Rational(-1, 2), Rational(1)})});
  return t;
}

TemplatePtr figure_eight_operator() {
  static const TemplatePtr t = std::make_shared<const Template>(
      "fig8_op", knots::figure_eight(), std::vector<Site>{{"alpha", vec(1, 0), true}, {"beta", vec(0, 1), true}},
      false, std::vector<UPoly>{}, true);
  return t;
}

}  // namespace builtins

}  // namespace knotconc
