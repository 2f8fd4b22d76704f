#include "knotconc/obstruction.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "knotconc/errors.hpp"
#include "knotconc/matrix.hpp"

namespace knotconc {

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Obstructed: return "OBSTRUCTED";
    case VerdictStatus::Consistent: return "CONSISTENT";
    case VerdictStatus::Conditional: return "CONDITIONAL";
  }
  return {};
}

std::string to_string(CertificateStep::Kind k) {
  switch (k) {
    case CertificateStep::Kind::ExcludesZero: return "excludes_zero";
    case CertificateStep::Kind::IsZero: return "is_zero";
    case CertificateStep::Kind::AbsGreater: return "abs_greater";
    case CertificateStep::Kind::AbsAtMost: return "abs_at_most";
    case CertificateStep::Kind::OddProduct: return "odd_product";
  }
  return {};
}

CertificateStep::Kind parse_step_kind(std::string_view name) {
  for (auto k : {CertificateStep::Kind::ExcludesZero, CertificateStep::Kind::IsZero, CertificateStep::Kind::AbsGreater,
                 CertificateStep::Kind::AbsAtMost, CertificateStep::Kind::OddProduct}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown certificate step '" + std::string(name) + "'");
}

std::optional<bool> evaluate_step(const CertificateStep& s, const Assignment& a) {
  if (s.kind == CertificateStep::Kind::OddProduct) {
    const Integer p = s.multiple * s.value;
    return mpz_odd_p(p.get_mpz_t()) != 0;
  }
  const Evaluation ev = evaluate(s.ledger, a);
  if (!ev.is_numeric()) return std::nullopt;
  const Interval& v = ev.numeric;
  switch (s.kind) {
    case CertificateStep::Kind::ExcludesZero: return v.excludes_zero();
    case CertificateStep::Kind::IsZero: return v == Interval::point(Rational(0));
    case CertificateStep::Kind::AbsGreater: return v.abs_lower() > s.bound.hi;
    case CertificateStep::Kind::AbsAtMost: return v.abs_upper() <= s.bound.lo;
    case CertificateStep::Kind::OddProduct: break;
  }
  return std::nullopt;
}

bool replay(const Verdict& v) {
  return std::all_of(v.certificate.begin(), v.certificate.end(), [&](const CertificateStep& s) {
    const auto r = evaluate_step(s, v.assignment);
    return r.has_value() && *r == s.expected;
  });
}

namespace {

bool is_exact_zero(const Evaluation& ev) { return ev.is_numeric() && ev.numeric == Interval::point(Rational(0)); }

bool certified_nonzero(const Evaluation& ev) { return ev.is_numeric() && ev.numeric.excludes_zero(); }

// The equation ledger = 0 under the assignment, solved for a lone atom.
std::string zero_condition(const RhoLedger& l, const Evaluation& ev) {
  if (ev.residual.atoms().size() == 1) {
    const auto& [atom, c] = *ev.residual.atoms().begin();
    const Interval value = Rational(-1) / c * ev.numeric;
    if (value.is_point()) return to_string(atom) + " = " + to_string(value.lo);
    return to_string(atom) + " ∈ " + to_string(value);
  }
  if (ev.is_numeric()) return to_string(l) + " = 0 (value " + to_string(ev.numeric) + ")";
  return to_string(ev) + " = 0";
}

CertificateStep step(CertificateStep::Kind kind, RhoLedger l, std::string description, bool expected = true) {
  CertificateStep s;
  s.kind = kind;
  s.ledger = std::move(l);
  s.expected = expected;
  s.description = std::move(description);
  return s;
}

CertificateStep abs_step(CertificateStep::Kind kind, RhoLedger l, const Interval& bound, std::string description) {
  CertificateStep s = step(kind, std::move(l), std::move(description));
  s.bound = bound;
  return s;
}

int max_sites(const std::vector<TemplatePtr>& templates) {
  size_t m = 1;
  for (const auto& t : templates) m = std::max(m, t->sites().size());
  return static_cast<int>(m);
}

Interval computed_rho0(const KnotExpr& e, const Rational& tol) {
  const Rho0Result r = rho0_of(e, tol);
  return Interval::around(r.value, r.error_bound);
}

// ρ₀ of the seed: the assigned value when present, else computed.
RhoAtom seed_atom(const ExprPtr& seed, Assignment& snapshot, const Rational& tol) {
  RhoAtom atom = RhoAtom::rho0(expr_id(*seed));
  if (!snapshot.get(atom)) snapshot.set(atom, computed_rho0(*seed, tol));
  return atom;
}

}  // namespace

Verdict check_fos(const ExprPtr& e, const Assignment& a, const Rational& tol) {
  const FirstOrderSignatureSet set = fos(e);
  Verdict v;
  v.theorem = "fos";
  v.assignment = a;
  v.assignment.merge(auto_assign_rho0(set, tol));
  const std::string name = to_string(*e);

  if (set.entries.empty()) {
    v.status = VerdictStatus::Consistent;
    v.conclusion = "no first-order signatures: the Alexander module has no proper submodules";
    return v;
  }
  std::vector<Evaluation> evs;
  for (const auto& entry : set.entries) evs.push_back(evaluate(entry.ledger, v.assignment));

  for (size_t i = 0; i < evs.size(); ++i) {
    if (is_exact_zero(evs[i])) {
      v.status = VerdictStatus::Consistent;
      v.conclusion = "the first-order signature at " + set.entries[i].label + " vanishes; no obstruction for " + name;
      v.certificate.push_back(
          step(CertificateStep::Kind::IsZero, set.entries[i].ledger, "signature at " + set.entries[i].label + " is 0"));
      return v;
    }
  }
  bool all_nonzero = true;
  for (size_t i = 0; i < evs.size(); ++i) {
    const auto& entry = set.entries[i];
    if (certified_nonzero(evs[i])) {
      v.certificate.push_back(step(CertificateStep::Kind::ExcludesZero, entry.ledger,
                                   "signature at " + entry.label + " lies in " + to_string(evs[i].numeric)));
    } else {
      all_nonzero = false;
      v.conditions.push_back(zero_condition(entry.ledger, evs[i]));
    }
  }
  if (all_nonzero) {
    v.status = VerdictStatus::Obstructed;
    v.conclusion = name + " is not slice in a rational homology ball and is not rationally (1.5)-solvable";
  } else {
    v.status = VerdictStatus::Conditional;
    v.conclusion = name + " can be slice only if one of the conditions holds";
  }
  return v;
}

Verdict check_j2(const std::string& knot, const Interval& knot_rho0, const std::string& base, const Assignment& a) {
  Verdict v;
  v.theorem = "j2";
  v.assignment = a;
  const RhoAtom r0 = RhoAtom::rho0(knot);
  const RhoAtom r1 = RhoAtom::rho1(base);
  v.assignment.set(r0, knot_rho0);
  if (!v.assignment.get(r1)) {
    if (auto d = v.assignment.constant("D")) {
      v.assignment.set(r1, Rational(-2) * *d);
      v.notes.push_back(to_string(r1) + " set to -2D from the constant D");
    }
  }
  v.notes.push_back("D := -½" + to_string(r1) + "; sliceness needs " + to_string(r0) + " ∈ {0, D}");

  const RhoLedger l1 = RhoLedger::atom(r0);
  const RhoLedger l2 = l1 + RhoLedger::atom(r1, Rational(1, 2));
  const Evaluation e1 = evaluate(l1, v.assignment);
  const Evaluation e2 = evaluate(l2, v.assignment);

  // Mirrored sign convention for ρ₀.
  {
    Assignment flipped = v.assignment;
    flipped.set(r0, Rational(-1) * knot_rho0);
    v.notes.push_back("with the opposite sign convention for ρ₀: " + to_string(r0) + " = " +
                      to_string(Rational(-1) * knot_rho0) + ", and the second alternative reads " +
                      zero_condition(l2, evaluate(l2, flipped)));
  }

  const std::string subject = "J2(" + knot + ")";
  if (is_exact_zero(e1) || is_exact_zero(e2)) {
    const bool first = is_exact_zero(e1);
    v.status = VerdictStatus::Consistent;
    v.conclusion = first ? to_string(r0) + " = 0; no obstruction for " + subject
                         : to_string(r0) + " = D; no obstruction for " + subject;
    v.certificate.push_back(step(CertificateStep::Kind::IsZero, first ? l1 : l2,
                                 first ? to_string(r0) + " is 0" : to_string(r0) + " - D is 0"));
    return v;
  }
  bool all_nonzero = true;
  for (const auto& [l, ev] : {std::pair{l1, e1}, std::pair{l2, e2}}) {
    if (certified_nonzero(ev)) {
      v.certificate.push_back(step(CertificateStep::Kind::ExcludesZero, l, to_string(l) + " lies in " +
                                                                              to_string(ev.numeric)));
    } else {
      all_nonzero = false;
      v.conditions.push_back(zero_condition(l, ev));
    }
  }
  if (all_nonzero) {
    v.status = VerdictStatus::Obstructed;
    v.conclusion = subject + " is not slice";
  } else {
    v.status = VerdictStatus::Conditional;
    v.conclusion = subject + " can be slice only if one of the conditions holds";
  }
  return v;
}

Verdict check_j2(const ExprPtr& e, const Assignment& a, const Rational& tol) {
  const IteratedDecomposition d = decompose_iterated(e);
  if (d.templates.size() < 2) throw HypothesisFailed("shape", "j2 needs an expression of the form t(t(K))");
  // Peel exactly two levels; anything deeper belongs to K.
  const TemplatePtr t = d.templates.back();
  if (d.templates[d.templates.size() - 2] != t) {
    throw HypothesisFailed("shape", "j2 needs the same template at both levels");
  }
  if (!t->is_slice()) throw HypothesisFailed("slice", "template " + t->name() + " is not flagged slice");
  ExprPtr k = e->common_input()->common_input();
  Assignment snapshot = a;
  const RhoAtom atom = seed_atom(k, snapshot, tol);
  const std::string base = t->base().name().empty() ? t->name() : t->base().name();
  Verdict v = check_j2(atom.knot, *snapshot.get(atom), base, snapshot);
  const std::string subject = to_string(*e);
  const std::string generic = "J2(" + atom.knot + ")";
  if (auto pos = v.conclusion.find(generic); pos != std::string::npos) v.conclusion.replace(pos, generic.size(), subject);
  return v;
}

Verdict check_main(const std::string& knot, const Interval& knot_rho0, std::optional<int> knot_arf,
                   const Assignment& a) {
  Verdict v;
  v.theorem = "main";
  v.assignment = a;
  const RhoAtom r0 = RhoAtom::rho0(knot);
  v.assignment.set(r0, knot_rho0);
  const RhoLedger l = RhoLedger::atom(r0);
  const auto c = v.assignment.constant("C");
  std::string conclusion = "J_n(" + knot + ") has infinite order in the topological concordance group, hence in "
                                           "the smooth one, for every n >= 0";
  if (knot_arf == 0) {
    conclusion += ", and J_n(" + knot + ") has infinite order in F_n/F_{n.5}";
  } else if (knot_arf == 1) {
    v.notes.push_back("Arf(" + knot + ") = 1, so the filtration statement does not apply");
  }
  if (!c) {
    v.status = VerdictStatus::Conditional;
    v.conditions.push_back("|" + to_string(r0) + "| > C");
    v.notes.push_back("C is the Cheeger-Gromov constant of the zero surgery on the template base; supply it as C");
    v.conclusion = conclusion + ", provided the condition holds";
    return v;
  }
  if (knot_rho0.abs_lower() > c->hi) {
    v.status = VerdictStatus::Obstructed;
    v.conclusion = conclusion;
    v.certificate.push_back(abs_step(CertificateStep::Kind::AbsGreater, l, *c,
                                     "|" + to_string(r0) + "| >= " + to_string(knot_rho0.abs_lower()) + " > C"));
  } else if (knot_rho0.abs_upper() <= c->lo) {
    v.status = VerdictStatus::Consistent;
    v.conclusion = "|" + to_string(r0) + "| <= C; no conclusion";
    v.certificate.push_back(abs_step(CertificateStep::Kind::AbsAtMost, l, *c, "|" + to_string(r0) + "| <= C"));
  } else {
    v.status = VerdictStatus::Conditional;
    v.conditions.push_back("|" + to_string(r0) + "| > C");
    v.conclusion = conclusion + ", provided the condition holds";
  }
  return v;
}

Verdict check_main(const ExprPtr& e, const Assignment& a, const Rational& tol) {
  const IteratedDecomposition d = decompose_iterated(e);
  for (const auto& t : d.templates) {
    if (t != d.templates.front()) throw HypothesisFailed("shape", "main needs one template at every level");
    if (!t->is_slice()) throw HypothesisFailed("slice", "template " + t->name() + " is not flagged slice");
  }
  Assignment snapshot = a;
  const RhoAtom atom = seed_atom(d.seed, snapshot, tol);
  std::optional<int> arf_k;
  try {
    arf_k = arf_of(*d.seed);
  } catch (const SiteNotSeifertDisjoint&) {
  }
  return check_main(atom.knot, *snapshot.get(atom), arf_k, snapshot);
}

Rational main3_constant(int n, int m, const Rational& c) {
  if (n < 1 || m < 1) throw std::invalid_argument("main3_constant: needs n >= 1 and m >= 1");
  if (m == 1) return Rational(n) * c;
  Integer mn;
  mpz_ui_pow_ui(mn.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(n));
  Rational factor(mn - 1, m - 1);
  factor.canonicalize();
  return factor * c;
}

Interval main3_constant(int n, int m, const Interval& c) {
  const Rational factor = main3_constant(n, m, Rational(1));
  return factor * c;
}

Rational main3_constant(const std::vector<TemplatePtr>& templates, const Rational& c) {
  return main3_constant(static_cast<int>(templates.size()), max_sites(templates), c);
}

namespace {

// Hypotheses of the iterated-operator theorem, recorded as notes.
void check_main3_hypotheses(const std::vector<TemplatePtr>& templates, const ExprPtr& seed, Verdict& v) {
  if (templates.empty()) throw HypothesisFailed("shape", "no infection levels");
  if (arf_of(*seed) != 0) throw HypothesisFailed("arf", "seed " + to_string(*seed) + " has Arf invariant 1");
  v.notes.push_back("Arf(" + to_string(*seed) + ") = 0");
  for (const auto& t : templates) {
    if (!t->is_slice()) throw HypothesisFailed("slice", "template " + t->name() + " is not flagged slice");
  }
  std::map<std::string, bool> checked;
  for (const auto& t : templates) {
    if (checked.count(t->name())) continue;
    checked[t->name()] = true;
    const auto& sites = t->sites();
    bool found = false;
    for (size_t j = 0; j < sites.size() && !found; ++j) {
      for (size_t k = j; k < sites.size() && !found; ++k) {
        const BlanchfieldValue b = t->module().pair(sites[j].cls, sites[k].cls);
        if (!b.is_zero()) {
          found = true;
          v.notes.push_back(t->name() + ": Bl(" + sites[j].name + ", " + sites[k].name + ") = " + to_string(b));
        }
      }
    }
    if (!found) {
      throw HypothesisFailed("blanchfield", "template " + t->name() + " has no pair of sites with nonzero pairing");
    }
  }
}

Verdict main3_verdict(const std::vector<TemplatePtr>& templates, const ExprPtr& seed, Assignment snapshot,
                      const Rational& tol, std::optional<Interval> bound, const std::string& bound_name,
                      const std::string& subject, Verdict v) {
  check_main3_hypotheses(templates, seed, v);
  const RhoAtom atom = seed_atom(seed, snapshot, tol);
  v.assignment = snapshot;
  const Interval value = *snapshot.get(atom);
  const RhoLedger l = RhoLedger::atom(atom);
  const int n = static_cast<int>(templates.size());
  const std::string conclusion = subject + " has infinite order in the topological and smooth concordance groups and in "
                                           "F_" + std::to_string(n) + "/F_{" + std::to_string(n) + ".5}";
  if (!bound) {
    v.status = VerdictStatus::Conditional;
    v.conditions.push_back("|" + to_string(atom) + "| > " + bound_name);
    v.conclusion = conclusion + ", provided the condition holds";
    return v;
  }
  v.notes.push_back(bound_name + " = " + to_string(*bound));
  if (value.abs_lower() > bound->hi) {
    v.status = VerdictStatus::Obstructed;
    v.conclusion = conclusion;
    v.certificate.push_back(abs_step(CertificateStep::Kind::AbsGreater, l, *bound,
                                     "|" + to_string(atom) + "| > " + bound_name));
  } else if (value.abs_upper() <= bound->lo) {
    v.status = VerdictStatus::Consistent;
    v.conclusion = "|" + to_string(atom) + "| <= " + bound_name + "; no conclusion";
    v.certificate.push_back(abs_step(CertificateStep::Kind::AbsAtMost, l, *bound,
                                     "|" + to_string(atom) + "| <= " + bound_name));
  } else {
    v.status = VerdictStatus::Conditional;
    v.conditions.push_back("|" + to_string(atom) + "| > " + bound_name);
    v.conclusion = conclusion + ", provided the condition holds";
  }
  return v;
}

std::string main3_bound_name(int n, int m) {
  return "(m^n - 1)/(m - 1) C' = " + to_string(main3_constant(n, m, Rational(1))) + "C'";
}

}  // namespace

Verdict check_main3(const std::vector<TemplatePtr>& templates, const ExprPtr& seed, const Assignment& a,
                    const Rational& tol) {
  Verdict v;
  v.theorem = "main3";
  const int n = static_cast<int>(templates.size());
  const int m = max_sites(templates);
  std::optional<Interval> bound;
  if (n >= 1) {
    if (auto cp = a.constant("Cprime")) bound = main3_constant(n, m, *cp);
  }
  std::string subject;
  for (const auto& t : templates) subject = t->name() + "∘" + subject;
  subject += "(" + to_string(*seed) + ")";
  return main3_verdict(templates, seed, a, tol, bound, n >= 1 ? main3_bound_name(n, m) : "C", subject, v);
}

Verdict check_main3(const ExprPtr& e, const Assignment& a, const Rational& tol) {
  const IteratedDecomposition d = decompose_iterated(e);
  Verdict v = check_main3(d.templates, d.seed, a, tol);
  return v;
}

TemplatePtr template_power(const TemplatePtr& t, int k, bool slice) {
  if (k < 1) throw std::invalid_argument("template_power: k must be positive");
  SeifertMatrix base = t->base();
  for (int i = 1; i < k; ++i) base = connected_sum(base, t->base());
  const std::string name = "#" + std::to_string(k) + "(" + t->name() + ")";
  base = base.renamed(t->base().name().empty() ? "" : "#" + std::to_string(k) + "(" + t->base().name() + ")");
  const size_t dim = t->base().dimension();
  std::vector<Site> sites;
  for (int i = 0; i < k; ++i) {
    for (const auto& s : t->sites()) {
      ModuleElement cls(dim * static_cast<size_t>(k));
      for (size_t j = 0; j < dim; ++j) cls[static_cast<size_t>(i) * dim + j] = s.cls[j];
      sites.push_back({s.name + "_" + std::to_string(i + 1), cls, s.seifert_disjoint});
    }
  }
  return std::make_shared<const Template>(name, base, sites, slice, std::vector<UPoly>{}, t->is_amphichiral());
}

Verdict check_torsion(const ExprPtr& e, int multiple, const Assignment& a, const Rational& tol) {
  const int k = std::abs(multiple);
  Verdict v;
  v.theorem = "torsion";
  v.assignment = a;
  const std::string subject = std::to_string(k) + "·" + to_string(*e);
  if (k == 0) {
    v.status = VerdictStatus::Consistent;
    v.conclusion = "0·" + to_string(*e) + " is the unknot";
    return v;
  }
  const IteratedDecomposition d = decompose_iterated(e);
  if (d.templates.empty()) throw HypothesisFailed("shape", "torsion needs an infection outer(J)");
  const int arf_k = arf_of(*e);
  if (k % 2 == 1 && arf_k == 1) {
    CertificateStep s;
    s.kind = CertificateStep::Kind::OddProduct;
    s.multiple = k;
    s.value = arf_k;
    s.description = "Arf(" + subject + ") = " + std::to_string(k) + "·Arf(" + to_string(*e) + ") mod 2 = 1";
    v.certificate.push_back(s);
    v.status = VerdictStatus::Obstructed;
    v.conclusion = subject + " has Arf invariant one and is not slice";
    return v;
  }
  TemplatePtr power;
  try {
    power = template_power(d.templates.back(), k, true);
  } catch (const ValidationError& err) {
    throw HypothesisFailed("slice", std::string("the connected-sum power of the outer template is not slice: ") +
                                        err.what());
  }
  std::vector<TemplatePtr> templates(d.templates.begin(), d.templates.end() - 1);
  templates.push_back(power);
  v.notes.push_back(subject + " = " + power->name() + " applied to the inner levels");
  const int n = static_cast<int>(templates.size());
  const int m = max_sites(templates);
  std::optional<Interval> bound;
  std::string bound_name;
  if (auto dconst = a.constant("D")) {
    bound = *dconst;
    bound_name = "D";
    if (arf_k == 1) {
      v.notes.push_back("D does not depend on the multiple and odd multiples have Arf one, so an obstruction here "
                        "for every even multiple gives infinite order of " + to_string(*e));
    }
  } else {
    bound_name = main3_bound_name(n, m);
    if (auto cp = a.constant("Cprime")) bound = main3_constant(n, m, *cp);
  }
  Verdict out = main3_verdict(templates, d.seed, a, tol, bound, bound_name, subject, v);
  if (out.status == VerdictStatus::Obstructed) out.conclusion = subject + " is not slice; " + out.conclusion;
  return out;
}

IndependenceResult independence_check(const std::vector<RhoLedger>& ledgers, const RhoLedger& target) {
  std::map<RhoAtom, size_t> index;
  auto collect = [&](const RhoLedger& l) {
    for (const auto& [atom, c] : l.atoms()) index.try_emplace(atom, 0);
  };
  for (const auto& l : ledgers) collect(l);
  collect(target);
  size_t col = 1;
  for (auto& [atom, i] : index) i = col++;
  auto row = [&](RationalMatrix& m, size_t r, const RhoLedger& l) {
    m(r, 0) = l.constant();
    for (const auto& [atom, c] : l.atoms()) m(r, index.at(atom)) = c;
  };
  RationalMatrix fam(ledgers.size(), col);
  RationalMatrix ext(ledgers.size() + 1, col);
  for (size_t r = 0; r < ledgers.size(); ++r) {
    row(fam, r, ledgers[r]);
    row(ext, r, ledgers[r]);
  }
  row(ext, ledgers.size(), target);
  IndependenceResult out;
  out.rank = ledgers.empty() ? 0 : rank(fam);
  out.hits_target = !target.is_zero() && rank(ext) == out.rank;
  return out;
}

}  // namespace knotconc
