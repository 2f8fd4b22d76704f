#include <doctest.h>

#include <algorithm>

#include "knotconc/errors.hpp"
#include "knotconc/infection.hpp"
#include "knotconc/knots.hpp"
#include "support.hpp"

using namespace knotconc;
using knotconc::testing::random_int;
using knotconc::testing::random_rational;
using knotconc::testing::random_seifert_entries;

namespace {

ModuleElement vec(long a, long b) { return {LaurentPoly(UPoly(a), 0), LaurentPoly(UPoly(b), 0)}; }

ExprPtr both(const TemplatePtr& t, const ExprPtr& k) { return infect(t, {{"alpha", k}, {"beta", k}}); }

std::vector<std::string> ledger_strings(const FirstOrderSignatureSet& s) {
  std::vector<std::string> out;
  for (const auto& e : s.entries) out.push_back(to_string(e.ledger));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> sorted(std::vector<RhoLedger> ls) {
  std::vector<std::string> out;
  for (const auto& l : ls) out.push_back(to_string(l));
  std::sort(out.begin(), out.end());
  return out;
}

RhoLedger r0(const std::string& k) { return RhoLedger::atom(RhoAtom::rho0(k)); }
RhoLedger r1(const std::string& k) { return RhoLedger::atom(RhoAtom::rho1(k)); }

ExprPtr named_atom(const std::string& name, RationalMatrix m) { return KnotExpr::atom(SeifertMatrix(std::move(m), name)); }

// Arf-zero genus-one knot that is not flagged slice.
// Alexander polynomial 2t - 3 + 2/t.
ExprPtr arf_zero_knot() { return named_atom("K", RationalMatrix{{1, 1}, {0, 2}}); }

ExprPtr random_atom(int i) {
  return named_atom("K" + std::to_string(i), random_seifert_entries(static_cast<int>(random_int(1, 2)), 3));
}

ExprPtr random_tree(int depth, int& counter) {
  if (depth == 0 || random_int(0, 3) == 0) return random_atom(counter++);
  const TemplatePtr t = random_int(0, 1) ? builtins::r946_operator() : builtins::figure_eight_operator();
  return infect(t, {{"alpha", random_tree(depth - 1, counter)}, {"beta", random_tree(depth - 1, counter)}});
}

}  // namespace

TEST_CASE("infect checks sites") {
  const auto t = builtins::r946_operator();
  CHECK_THROWS_AS(infect(t, {{"alpha", builtins::trefoil()}}), MissingSite);
  CHECK_THROWS_AS(infect(t, {{"alpha", builtins::trefoil()}, {"beta", builtins::trefoil()}, {"gamma", builtins::trefoil()}}),
                  UnknownSite);
  const auto j1 = both(t, builtins::trefoil());
  CHECK(j1->kind() == KnotExpr::Kind::Infect);
  CHECK(j1->inputs().size() == 2);
  CHECK(j1->common_input() == builtins::trefoil());
  CHECK(to_string(*j1) == "R946_op(trefoil)");
  const auto mixed = infect(t, {{"alpha", builtins::trefoil()}, {"beta", builtins::unknot()}});
  CHECK(to_string(*mixed) == "R946_op(alpha=trefoil, beta=unknot)");
}

TEST_CASE("iterate_operator") {
  const auto t = builtins::r946_operator();
  CHECK(iterate_operator(t, 0, builtins::trefoil()) == builtins::trefoil());
  const auto j3 = iterate_operator(t, 3, builtins::unknot());
  CHECK(to_string(*j3) == "R946_op(R946_op(R946_op(unknot)))");
  CHECK(solvability_lower_bound(*j3).is_slice());
  const auto d = decompose_iterated(j3);
  CHECK(d.templates.size() == 3);
  CHECK(d.seed == builtins::unknot());
  CHECK(iterate_operator(t, 2, builtins::trefoil())->hash() == both(t, both(t, builtins::trefoil()))->hash());
  CHECK_THROWS(iterate_operator(t, -1, builtins::trefoil()));
}

TEST_CASE("structural hashing names equal trees alike") {
  const auto t = builtins::r946_operator();
  const auto a = infect(t, {{"alpha", builtins::trefoil()}, {"beta", builtins::figure_eight()}});
  const auto b = infect(t, {{"beta", builtins::figure_eight()}, {"alpha", builtins::trefoil()}});
  CHECK(a != b);
  CHECK(a->hash() == b->hash());
  CHECK(expr_id(*a) == expr_id(*b));
  CHECK(expr_id(*a).rfind("expr:", 0) == 0);
  const auto c = infect(t, {{"alpha", builtins::figure_eight()}, {"beta", builtins::trefoil()}});
  CHECK(c->hash() != a->hash());
  CHECK(expr_id(*a->with_label("Q")) == "Q");
}

TEST_CASE("seifert_of") {
  const auto t = builtins::r946_operator();
  for (int n = 1; n <= 4; ++n) CHECK(seifert_of(*iterate_operator(t, n, builtins::trefoil())) == knots::nine_46());
  const auto s = seifert_of(*KnotExpr::sum(builtins::trefoil(), builtins::trefoil()));
  CHECK(s.dimension() == 4);
  CHECK(s.entries() == block_sum(knots::trefoil().entries(), knots::trefoil().entries()));
  CHECK(seifert_of(*builtins::figure_eight()) == knots::figure_eight());

  const auto nd = std::make_shared<const Template>("nd", knots::nine_46(),
                                                   std::vector<Site>{{"alpha", vec(1, 0), false}}, true);
  const auto e = infect(nd, {{"alpha", builtins::trefoil()}});
  CHECK_THROWS_AS(seifert_of(*e), SiteNotSeifertDisjoint);
  CHECK_THROWS_AS(arf_of(*e), SiteNotSeifertDisjoint);
}

TEST_CASE("zero-order invariants of infected knots") {
  const auto t = builtins::r946_operator();
  const Rational tol(1, 1000000000);
  for (int n = 1; n <= 3; ++n) {
    const auto r = rho0_of(*iterate_operator(t, n, builtins::trefoil()), tol);
    CHECK(r.value == 0);
    CHECK(r.error_bound == 0);
  }
  const auto j1 = iterate_operator(t, 1, builtins::trefoil());
  const auto kn = both(builtins::figure_eight_operator(), j1);
  CHECK(arf_of(*kn) == 1);
  CHECK(arf_of(*KnotExpr::sum(kn, kn)) == 0);
  CHECK(arf_of(*KnotExpr::sum(KnotExpr::sum(kn, kn), kn)) == 1);
}

TEST_CASE("infection preserves every zero-order invariant (property)") {
  const Rational tol(1, 1000000);
  int counter = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const TemplatePtr t = trial % 2 ? builtins::r946_operator() : builtins::figure_eight_operator();
    const auto e = infect(t, {{"alpha", random_tree(2, counter)}, {"beta", random_tree(2, counter)}});
    const SeifertMatrix v = seifert_of(*e);
    REQUIRE(v == t->base());
    CHECK(alexander_polynomial(v) == alexander_polynomial(t->base()));
    CHECK(arf_of(*e) == arf(t->base()));
    const auto pe = signature_profile(v);
    const auto pb = signature_profile(t->base());
    REQUIRE(pe.arcs.size() == pb.arcs.size());
    for (size_t k = 0; k < pe.arcs.size(); ++k) CHECK(pe.arcs[k].value == pb.arcs[k].value);
    CHECK(rho0_of(*e, tol).value == rho0(t->base(), tol).value);
  }
}

TEST_CASE("fos of J1(K)") {
  const auto t = builtins::r946_operator();
  for (const ExprPtr& k : {builtins::trefoil(), arf_zero_knot(), builtins::figure_eight()}) {
    const std::string name = expr_id(*k);
    const auto s = fos(both(t, k));
    REQUIRE(s.entries.size() == 3);
    CHECK(ledger_strings(s) == sorted({r0(name), r0(name), r1("9_46") + Rational(2) * r0(name)}));
    CHECK(s.entries[0].label == "0");
    CHECK(s.entries[0].ledger == r1("9_46") + Rational(2) * r0(name));
    CHECK(s.rho0_sources.count(RhoAtom::rho0(name)) == 1);
  }
  const auto s = fos(both(t, builtins::trefoil()));
  // <alpha> = P[t - 2] kills the alpha input and leaves beta.
  for (const auto& e : s.entries) {
    if (e.label == "<alpha>") CHECK(e.submodule.divisor == UPoly({Rational(-2), Rational(1)}));
    if (e.label == "<beta>") CHECK(e.submodule.divisor == UPoly({Rational(-1, 2), Rational(1)}));
  }
}

TEST_CASE("fos of J_n(K) for n >= 2") {
  const auto t = builtins::r946_operator();
  for (int n = 2; n <= 5; ++n) {
    for (const ExprPtr& k : {builtins::trefoil(), arf_zero_knot(), builtins::unknot()}) {
      const auto s = fos(iterate_operator(t, n, k));
      CHECK(ledger_strings(s) == sorted({RhoLedger(), RhoLedger(), r1("9_46")}));
      CHECK(s.rho0_sources.empty());
    }
  }
  CHECK(ledger_strings(fos(both(t, builtins::unknot()))) == sorted({RhoLedger(), RhoLedger(), r1("9_46")}));
}

TEST_CASE("fos of the figure-eight template") {
  const auto f = builtins::figure_eight_operator();
  for (const ExprPtr& k : {builtins::trefoil(), arf_zero_knot()}) {
    const auto s = fos(both(f, k));
    REQUIRE(s.entries.size() == 1);
    CHECK(s.entries[0].label == "0");
    CHECK(s.entries[0].ledger == Rational(2) * r0(expr_id(*k)));
  }
}

TEST_CASE("fos input ledgers") {
  const auto t = builtins::r946_operator();
  const auto tt = KnotExpr::sum(builtins::trefoil(), builtins::trefoil());
  const auto s = fos(both(t, tt));
  CHECK(s.entries[0].ledger == r1("9_46") + Rational(4) * r0("trefoil"));
  // An infection over a non-slice template stays opaque.
  const auto inner = both(builtins::figure_eight_operator(), builtins::trefoil());
  CHECK(solvability_lower_bound(*inner).is_none());
  const auto s2 = fos(both(t, inner));
  const std::string id = expr_id(*inner);
  CHECK(s2.entries[0].ledger == r1("9_46") + Rational(2) * r0(id));
  const Assignment a = auto_assign_rho0(s2, Rational(1, 1000000));
  REQUIRE(a.get(RhoAtom::rho0(id)).has_value());
  CHECK(*a.get(RhoAtom::rho0(id)) == Interval::point(Rational(0)));
}

TEST_CASE("fos of atoms and unsupported shapes") {
  const auto s = fos(builtins::nine_46());
  CHECK(s.entries.size() == 3);
  CHECK(s.entries[0].ledger == r1("9_46"));
  CHECK(to_string(s.entries[1].ledger) == "ρ(9_46, P[t - 2])");
  CHECK(fos(builtins::figure_eight()).entries.size() == 1);
  CHECK(fos(builtins::figure_eight()).entries[0].ledger.is_zero());
  CHECK(fos(builtins::trefoil()).entries.size() == 1);
  CHECK(fos(builtins::trefoil()).entries[0].ledger == r1("trefoil"));
  CHECK(fos(builtins::unknot()).entries.empty());
  CHECK_THROWS_AS(fos(KnotExpr::sum(builtins::trefoil(), builtins::trefoil())), UnsupportedGenus);
  CHECK_THROWS_AS(fos(named_atom("T2", block_sum(knots::trefoil().entries(), knots::trefoil().entries()))), NotSquareFree);

  const auto g2 = std::make_shared<const Template>(
      "g2", connected_sum(knots::nine_46(), knots::nine_46()),
      std::vector<Site>{{"a", ModuleElement(4, LaurentPoly(UPoly(1), 0)), true}}, true);
  CHECK_THROWS_AS(fos(infect(g2, {{"a", builtins::trefoil()}})), UnsupportedGenus);
}

TEST_CASE("epsilon logic: inputs at sites inside P do not affect the P entry (property)") {
  const auto t = builtins::r946_operator();
  int counter = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto a1 = random_atom(counter++);
    const auto b1 = random_atom(counter++);
    const auto a2 = random_atom(counter++);
    const auto base = fos(infect(t, {{"alpha", a1}, {"beta", b1}}));
    const auto swapped = fos(infect(t, {{"alpha", a2}, {"beta", b1}}));
    REQUIRE(base.entries.size() == swapped.entries.size());
    for (size_t i = 0; i < base.entries.size(); ++i) {
      if (base.entries[i].label == "<alpha>") CHECK(base.entries[i].ledger == swapped.entries[i].ledger);
      if (base.entries[i].label != "<alpha>") CHECK(!(base.entries[i].ledger == swapped.entries[i].ledger));
    }
  }
}

TEST_CASE("solvability levels") {
  const auto t = builtins::r946_operator();
  const auto k = arf_zero_knot();
  CHECK(to_string(solvability_lower_bound(*k)) == "0");
  CHECK(to_string(solvability_lower_bound(*builtins::trefoil())) == "none");
  CHECK(to_string(solvability_lower_bound(*builtins::nine_46())) == "slice");
  for (int n = 0; n <= 10; ++n) {
    CHECK(solvability_lower_bound(*iterate_operator(t, n, k)) == Solvability::level(n));
    CHECK(solvability_lower_bound(*iterate_operator(t, n, builtins::unknot())).is_slice());
  }
  CHECK(to_string(solvability_lower_bound(*both(t, builtins::trefoil()))) == "0.5");
  CHECK(to_string(solvability_lower_bound(*iterate_operator(t, 3, builtins::trefoil()))) == "2");
  CHECK(solvability_lower_bound(*KnotExpr::sum(k, builtins::nine_46())) == Solvability::level(0));
  CHECK(solvability_lower_bound(*KnotExpr::sum(builtins::unknot(), builtins::nine_46())).is_slice());
  // Two Arf-one summands: Arf zero again.
  CHECK(solvability_lower_bound(*KnotExpr::sum(builtins::trefoil(), builtins::trefoil())) == Solvability::level(0));
  CHECK(solvability_lower_bound(*both(builtins::figure_eight_operator(), k)).is_none());
}

TEST_CASE("solvability of iterates adds n (property)") {
  const auto t = builtins::r946_operator();
  for (int trial = 0; trial < 100; ++trial) {
    const auto seed = random_atom(trial);
    const int n = static_cast<int>(random_int(0, 6));
    const Solvability s0 = solvability_lower_bound(*seed);
    const Solvability sn = solvability_lower_bound(*iterate_operator(t, n, seed));
    if (s0.is_none()) {
      // Algebraically slice after one level, then one more per level.
      if (n == 0) CHECK(sn.is_none());
      if (n == 1) CHECK(sn == Solvability::half_above(0));
      if (n >= 2) CHECK(sn == Solvability::level(n - 1));
    } else {
      CHECK(sn == Solvability::level(s0.floor() + n));
    }
  }
}

TEST_CASE("cphi_bound") {
  const auto t = builtins::r946_operator();
  for (int n = 0; n <= 10; ++n) CHECK(cphi_bound(*iterate_operator(t, n, builtins::trefoil())) == Integer(Integer(1) << n));
  const auto three = std::make_shared<const Template>(
      "three", knots::nine_46(), std::vector<Site>{{"a", vec(1, 0)}, {"b", vec(0, 1)}, {"c", vec(1, 1)}}, true);
  CHECK(cphi_bound(*infect(three, {{"a", builtins::trefoil()}, {"b", builtins::trefoil()}, {"c", builtins::trefoil()}})) ==
        3);
  CHECK(cphi_bound(*builtins::trefoil()) == 1);
}

TEST_CASE("template validation") {
  const auto v = knots::nine_46();
  CHECK_THROWS_AS(Template("x", v, {{"a", vec(1, 0)}, {"a", vec(0, 1)}}, true), ValidationError);
  CHECK_THROWS_AS(Template("x", v, {{"a", ModuleElement{LaurentPoly(UPoly(1), 0)}}}, true), ValidationError);
  CHECK_THROWS_AS(Template("x", knots::trefoil(), {{"a", vec(1, 0)}}, true), ValidationError);
  CHECK_THROWS_AS(Template("x", knots::trefoil(), {{"a", vec(1, 0)}}, false, {}, true), ValidationError);
  // P = 0 is not a metabolizer.
  CHECK_THROWS_AS(Template("x", v, {{"a", vec(1, 0)}}, true, {UPoly(1)}), ValidationError);
  CHECK_THROWS_AS(Template("x", v, {{"a", vec(1, 0)}}, false, {UPoly({Rational(-2), Rational(1)})}), ValidationError);
  CHECK_THROWS_AS(Template("x", v, {{"a", vec(1, 0)}}, true, {UPoly({Rational(-3), Rational(1)})}), ValidationError);
  CHECK_NOTHROW(Template("x", v, {{"a", vec(1, 0)}}, true, {UPoly({Rational(-4), Rational(2)})}));
  CHECK_THROWS_AS(KnotExpr::atom(knots::trefoil(), true), ValidationError);
  CHECK_THROWS_AS(KnotExpr::atom(knots::trefoil(), false, true), ValidationError);
  CHECK_NOTHROW(KnotExpr::atom(knots::figure_eight(), false, true));
  // Figure-eight: Arf one, so not slice.
  CHECK_THROWS_AS(KnotExpr::atom(knots::figure_eight(), true), ValidationError);
}

TEST_CASE("ledger arithmetic and evaluation") {
  const RhoLedger a = r0("A");
  CHECK(a + a == Rational(2) * a);
  CHECK(to_string(a + a) == "2ρ₀(A)");
  CHECK(evaluate(RhoLedger(), Assignment()).numeric == Interval::point(Rational(0)));
  Assignment asg;
  asg.set(RhoAtom::rho0("trefoil"), Interval::point(Rational(-4, 3)));
  const auto ev = evaluate(r1("9_46") + Rational(2) * r0("trefoil"), asg);
  CHECK(!ev.is_numeric());
  CHECK(to_string(ev) == "ρ¹(9_46) - 8/3");
  CHECK(to_string(r1("9_46") + Rational(2) * r0("trefoil"), true) == "rho1(9_46) + 2rho0(trefoil)");
  CHECK(to_string(Rational(1, 2) * r1("9_46") - RhoLedger(Rational(3))) == "(1/2)ρ¹(9_46) - 3");
  CHECK((a - a).is_zero());
  CHECK(asg.constant("C'") == std::nullopt);
  asg.set_constant("C'", Interval::point(Rational(1)));
  CHECK(asg.constant("Cprime").has_value());
}

TEST_CASE("ledger parsing") {
  const RhoLedger l = r1("9_46") + Rational(2) * r0("trefoil") - RhoLedger(Rational(8, 3)) +
                      RhoLedger::atom(RhoAtom::rho("9_46", "P[t - 2]"), Rational(-1, 2));
  CHECK(parse_ledger(to_string(l)) == l);
  CHECK(parse_ledger(to_string(l, true)) == l);
  CHECK(parse_ledger("2*rho0(K) - rho1(9_46) + 1/2") ==
        Rational(2) * r0("K") - r1("9_46") + RhoLedger(Rational(1, 2)));
  CHECK(parse_ledger("0") == RhoLedger());
  CHECK(parse_ledger("−ρ₀(K)") == -r0("K"));
  CHECK(parse_atom("rho(9_46, P[t - 1/2])") == RhoAtom::rho("9_46", "P[t - 1/2]"));
  CHECK_THROWS(parse_ledger(""));
  CHECK_THROWS(parse_ledger("rho0(K"));
  CHECK_THROWS(parse_ledger("2 3"));
}

TEST_CASE("ledger linearity (property)") {
  const std::vector<RhoAtom> atoms{RhoAtom::rho0("A"), RhoAtom::rho0("B"), RhoAtom::rho1("R"),
                                   RhoAtom::rho("R", "P[t - 2]")};
  auto random_ledger = [&] {
    RhoLedger l(random_rational(5, 4));
    for (const auto& a : atoms) {
      if (random_int(0, 1)) l += RhoLedger::atom(a, random_rational(5, 4));
    }
    return l;
  };
  auto random_assignment = [&] {
    Assignment asg;
    for (const auto& a : atoms) {
      if (random_int(0, 2)) asg.set(a, Interval::point(random_rational(5, 4)));
    }
    return asg;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const RhoLedger x = random_ledger();
    const RhoLedger y = random_ledger();
    const RhoLedger z = random_ledger();
    const Rational p = random_rational(5, 4);
    const Rational q = random_rational(5, 4);
    CHECK(x + y == y + x);
    CHECK((x + y) + z == x + (y + z));
    CHECK(p * (x + y) == p * x + p * y);
    CHECK((p + q) * x == p * x + q * x);
    CHECK((p * q) * x == p * (q * x));
    CHECK((x - x).is_zero());
    CHECK(parse_ledger(to_string(x)) == x);
    const Assignment asg = random_assignment();
    const Evaluation ex = evaluate(x, asg);
    const Evaluation ey = evaluate(y, asg);
    const Evaluation exy = evaluate(p * x + q * y, asg);
    CHECK(exy.numeric == p * ex.numeric + q * ey.numeric);
    CHECK(exy.residual == p * ex.residual + q * ey.residual);
  }
}

TEST_CASE("intervals") {
  const Interval i = Interval::make(Rational(-1), Rational(2));
  CHECK(!i.excludes_zero());
  CHECK(i.abs_lower() == 0);
  CHECK(i.abs_upper() == 2);
  CHECK(Rational(-2) * i == Interval::make(Rational(-4), Rational(2)));
  CHECK(Interval::make(Rational(-3), Rational(-1)).abs_lower() == 1);
  CHECK_THROWS(Interval::make(Rational(1), Rational(0)));
  CHECK(to_string(Interval::point(Rational(-8, 3))) == "-8/3");
}
