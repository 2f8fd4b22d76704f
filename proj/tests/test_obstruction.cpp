#include <doctest.h>

#include <algorithm>

#include "knotconc/errors.hpp"
#include "knotconc/knots.hpp"
#include "knotconc/obstruction.hpp"
#include "support.hpp"

using namespace knotconc;
using knotconc::testing::random_int;
using knotconc::testing::random_rational;

namespace {

const Rational kTol(1, 1000000000);

ExprPtr both(const TemplatePtr& t, const ExprPtr& k) { return infect(t, {{"alpha", k}, {"beta", k}}); }

ModuleElement vec(long a, long b) { return {LaurentPoly(UPoly(a), 0), LaurentPoly(UPoly(b), 0)}; }

Interval pt(const Rational& q) { return Interval::point(q); }

ExprPtr trefoil_pair() { return KnotExpr::sum(builtins::trefoil(), builtins::trefoil())->with_label("TT"); }

Assignment with_constant(const std::string& name, const Interval& v) {
  Assignment a;
  a.set_constant(name, v);
  return a;
}

}  // namespace

TEST_CASE("check_fos on the figure-eight template") {
  const auto k = both(builtins::figure_eight_operator(), builtins::trefoil());
  const Verdict v = check_fos(k, Assignment(), kTol);
  CHECK(v.status == VerdictStatus::Obstructed);
  REQUIRE(v.certificate.size() == 1);
  CHECK(v.certificate[0].kind == CertificateStep::Kind::ExcludesZero);
  CHECK(evaluate(v.certificate[0].ledger, v.assignment).numeric == pt(Rational(-8, 3)));
  CHECK(replay(v));
  CHECK(v.conclusion.find("rational homology ball") != std::string::npos);
}

TEST_CASE("check_fos on J1") {
  const auto t = builtins::r946_operator();
  CHECK(check_fos(both(t, builtins::unknot()), Assignment(), kTol).status == VerdictStatus::Consistent);

  const auto j1 = both(t, builtins::trefoil());
  const Verdict v = check_fos(j1, Assignment(), kTol);
  CHECK(v.status == VerdictStatus::Conditional);
  REQUIRE(v.conditions.size() == 1);
  CHECK(v.conditions[0] == "ρ¹(9_46) = 8/3");
  CHECK(v.certificate.size() == 2);
  CHECK(replay(v));

  Assignment zero;
  zero.set(RhoAtom::rho1("9_46"), pt(Rational(0)));
  const Verdict ob = check_fos(j1, zero, kTol);
  CHECK(ob.status == VerdictStatus::Obstructed);
  CHECK(ob.certificate.size() == 3);
  CHECK(replay(ob));

  Assignment hit;
  hit.set(RhoAtom::rho1("9_46"), pt(Rational(8, 3)));
  const Verdict ok = check_fos(j1, hit, kTol);
  CHECK(ok.status == VerdictStatus::Consistent);
  CHECK(replay(ok));

  // An interval that still contains zero never certifies.
  Assignment wide;
  wide.set(RhoAtom::rho1("9_46"), Interval::make(Rational(2), Rational(3)));
  const Verdict cw = check_fos(j1, wide, kTol);
  CHECK(cw.status == VerdictStatus::Conditional);
  CHECK(cw.conditions[0] == "ρ¹(9_46) + 2ρ₀(trefoil) = 0 (value [-2/3, 1/3])");
}

TEST_CASE("check_fos assignments override computed values") {
  const auto k = both(builtins::figure_eight_operator(), builtins::trefoil());
  Assignment a;
  a.set(RhoAtom::rho0("trefoil"), pt(Rational(0)));
  CHECK(check_fos(k, a, kTol).status == VerdictStatus::Consistent);
}

TEST_CASE("check_fos is sound on slice expressions (property)") {
  const auto t = builtins::r946_operator();
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(random_int(1, 6));
    const auto e = iterate_operator(t, n, builtins::unknot());
    REQUIRE(solvability_lower_bound(*e).is_slice());
    Assignment a;
    if (random_int(0, 1)) a.set(RhoAtom::rho1("9_46"), pt(random_rational(10, 7)));
    const Verdict v = check_fos(e, a, kTol);
    CHECK(v.status != VerdictStatus::Obstructed);
  }
}

TEST_CASE("check_j2") {
  Assignment none;
  Verdict zero = check_j2("K", pt(Rational(0)), "9_46", none);
  CHECK(zero.status == VerdictStatus::Consistent);
  CHECK(replay(zero));

  Verdict cond = check_j2("trefoil", pt(Rational(-4, 3)), "9_46", none);
  CHECK(cond.status == VerdictStatus::Conditional);
  REQUIRE(cond.conditions.size() == 1);
  CHECK(cond.conditions[0] == "ρ¹(9_46) = 8/3");
  const bool mirrored = std::any_of(cond.notes.begin(), cond.notes.end(), [](const std::string& s) {
    return s.find("ρ¹(9_46) = -8/3") != std::string::npos;
  });
  CHECK(mirrored);
  const bool names_d = std::any_of(cond.notes.begin(), cond.notes.end(),
                                   [](const std::string& s) { return s.find("D := -½ρ¹(9_46)") != std::string::npos; });
  CHECK(names_d);

  Assignment r1zero;
  r1zero.set(RhoAtom::rho1("9_46"), pt(Rational(0)));
  Verdict ob = check_j2("trefoil", pt(Rational(-4, 3)), "9_46", r1zero);
  CHECK(ob.status == VerdictStatus::Obstructed);
  CHECK(ob.certificate.size() == 2);
  CHECK(replay(ob));

  Verdict viad = check_j2("trefoil", pt(Rational(-4, 3)), "9_46", with_constant("D", pt(Rational(-4, 3))));
  CHECK(viad.status == VerdictStatus::Consistent);
  Verdict vias = check_j2("trefoil", pt(Rational(-4, 3)), "9_46", with_constant("D", pt(Rational(1))));
  CHECK(vias.status == VerdictStatus::Obstructed);
  CHECK(replay(vias));
}

TEST_CASE("check_j2 on expressions") {
  const auto t = builtins::r946_operator();
  const auto j2 = iterate_operator(t, 2, builtins::trefoil())->with_label("J2_trefoil");
  const Verdict v = check_j2(j2, Assignment(), kTol);
  CHECK(v.status == VerdictStatus::Conditional);
  CHECK(v.conditions == std::vector<std::string>{"ρ¹(9_46) = 8/3"});
  CHECK(v.conclusion.find("J2_trefoil") != std::string::npos);
  CHECK_THROWS_AS(check_j2(both(t, builtins::trefoil()), Assignment(), kTol), HypothesisFailed);
  const auto mixed = both(t, both(builtins::figure_eight_operator(), builtins::trefoil()));
  CHECK_THROWS_AS(check_j2(mixed, Assignment(), kTol), HypothesisFailed);
}

TEST_CASE("check_main") {
  const Verdict ob = check_main("trefoil", pt(Rational(-4, 3)), 1, with_constant("C", pt(Rational(1))));
  CHECK(ob.status == VerdictStatus::Obstructed);
  CHECK(replay(ob));
  CHECK(ob.conclusion.find("F_n") == std::string::npos);
  const Verdict ob0 = check_main("K", pt(Rational(-4, 3)), 0, with_constant("C", pt(Rational(1))));
  CHECK(ob0.conclusion.find("F_n/F_{n.5}") != std::string::npos);
  for (const Rational c : {Rational(0), Rational(1), Rational(5)}) {
    const Verdict v = check_main("U", pt(Rational(0)), 0, with_constant("C", pt(c)));
    CHECK(v.status == VerdictStatus::Consistent);
    CHECK(replay(v));
  }
  const Verdict missing = check_main("trefoil", pt(Rational(-4, 3)), 1, Assignment());
  CHECK(missing.status == VerdictStatus::Conditional);
  CHECK(missing.conditions == std::vector<std::string>{"|ρ₀(trefoil)| > C"});
  const Verdict at = check_main("trefoil", pt(Rational(-4, 3)), 1, with_constant("C", pt(Rational(4, 3))));
  CHECK(at.status == VerdictStatus::Consistent);
  const Verdict straddle =
      check_main("trefoil", pt(Rational(-4, 3)), 1, with_constant("C", Interval::make(Rational(1), Rational(2))));
  CHECK(straddle.status == VerdictStatus::Conditional);

  const auto j3 = iterate_operator(builtins::r946_operator(), 3, builtins::trefoil());
  CHECK(check_main(j3, with_constant("C", pt(Rational(1))), kTol).status == VerdictStatus::Obstructed);
}

TEST_CASE("main3_constant") {
  CHECK(main3_constant(3, 2, Rational(1)) == 7);
  CHECK(main3_constant(1, 5, Rational(3, 7)) == Rational(3, 7));
  CHECK(main3_constant(2, 3, Rational(2)) == 8);
  CHECK(main3_constant(4, 1, Rational(2)) == 8);
  CHECK_THROWS(main3_constant(0, 2, Rational(1)));
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(random_int(1, 8));
    const int m = static_cast<int>(random_int(1, 6));
    Rational c(random_int(0, 20), random_int(1, 5));
    c.canonicalize();
    const Rational base = main3_constant(n, m, c);
    CHECK(main3_constant(n + 1, m, c) >= base);
    CHECK(main3_constant(n, m + 1, c) >= base);
    CHECK(main3_constant(n, m, c + 1) >= base);
    // Geometric sum 1 + m + ... + m^(n-1).
    Rational sum(0), p(1);
    for (int i = 0; i < n; ++i, p *= m) sum += p;
    CHECK(base == sum * c);
  }
}

TEST_CASE("check_main3 hypotheses") {
  const auto t = builtins::r946_operator();
  const std::vector<TemplatePtr> three(3, t);
  // pair(alpha, beta) != 0 is what makes the template admissible.
  CHECK(!t->module().pair(vec(1, 0), vec(0, 1)).is_zero());
  CHECK(t->module().pair(vec(1, 0), vec(1, 0)).is_zero());
  CHECK_NOTHROW(check_main3(three, trefoil_pair(), Assignment(), kTol));

  const auto alpha_only = std::make_shared<const Template>("alpha_only", knots::nine_46(),
                                                           std::vector<Site>{{"alpha", vec(1, 0)}}, true);
  try {
    check_main3({alpha_only}, trefoil_pair(), Assignment(), kTol);
    FAIL("expected HypothesisFailed");
  } catch (const HypothesisFailed& e) {
    CHECK(e.which() == "blanchfield");
  }
  try {
    check_main3(three, builtins::trefoil(), Assignment(), kTol);
    FAIL("expected HypothesisFailed");
  } catch (const HypothesisFailed& e) {
    CHECK(e.which() == "arf");
  }
  try {
    check_main3({builtins::figure_eight_operator()}, trefoil_pair(), Assignment(), kTol);
    FAIL("expected HypothesisFailed");
  } catch (const HypothesisFailed& e) {
    CHECK(e.which() == "slice");
  }
}

TEST_CASE("check_main3 flips exactly at the constant") {
  const auto t = builtins::r946_operator();
  const std::vector<TemplatePtr> three(3, t);
  const auto seed = trefoil_pair();
  REQUIRE(rho0_of(*seed, kTol).value == Rational(-8, 3));
  // |ρ₀| = 8/3 = 7 C' at C' = 8/21.
  const Rational edge(8, 21);
  const Verdict at = check_main3(three, seed, with_constant("Cprime", pt(edge)), kTol);
  CHECK(at.status == VerdictStatus::Consistent);
  CHECK(replay(at));
  const Verdict below = check_main3(three, seed, with_constant("C'", pt(edge - Rational(1, 1000000000))), kTol);
  CHECK(below.status == VerdictStatus::Obstructed);
  CHECK(replay(below));
  CHECK(below.conclusion.find("F_3/F_{3.5}") != std::string::npos);
  const Verdict above = check_main3(three, seed, with_constant("Cprime", pt(edge + Rational(1, 1000000000))), kTol);
  CHECK(above.status == VerdictStatus::Consistent);
  const Verdict missing = check_main3(three, seed, Assignment(), kTol);
  CHECK(missing.status == VerdictStatus::Conditional);
  REQUIRE(missing.conditions.size() == 1);
  CHECK(missing.conditions[0].find("7C'") != std::string::npos);

  const auto e = iterate_operator(t, 3, seed);
  CHECK(check_main3(e, with_constant("Cprime", pt(Rational(1, 3))), kTol).status == VerdictStatus::Obstructed);
}

TEST_CASE("check_torsion") {
  const auto t = builtins::r946_operator();
  const auto seed = trefoil_pair();
  const auto kn = both(builtins::figure_eight_operator(), iterate_operator(t, 2, seed));
  REQUIRE(arf_of(*kn) == 1);

  const Verdict odd = check_torsion(kn, 3, Assignment(), kTol);
  CHECK(odd.status == VerdictStatus::Obstructed);
  REQUIRE(odd.certificate.size() == 1);
  CHECK(odd.certificate[0].kind == CertificateStep::Kind::OddProduct);
  CHECK(replay(odd));

  CHECK(check_torsion(kn, 0, Assignment(), kTol).status == VerdictStatus::Consistent);

  const Verdict even = check_torsion(kn, 2, with_constant("D", pt(Rational(1))), kTol);
  CHECK(even.status == VerdictStatus::Obstructed);
  CHECK(replay(even));
  CHECK(check_torsion(kn, 2, with_constant("D", pt(Rational(3))), kTol).status == VerdictStatus::Consistent);
  CHECK(check_torsion(kn, 2, Assignment(), kTol).status == VerdictStatus::Conditional);

  // Even multiple 2: templates R, R, #2(fig8) with m = 4, n = 3: 21 C'.
  const Verdict viacp = check_torsion(kn, 2, with_constant("Cprime", pt(Rational(8, 63) - Rational(1, 1000))), kTol);
  CHECK(viacp.status == VerdictStatus::Obstructed);
  CHECK(check_torsion(kn, 2, with_constant("Cprime", pt(Rational(8, 63))), kTol).status == VerdictStatus::Consistent);

  const auto p = template_power(builtins::figure_eight_operator(), 2, true);
  CHECK(p->sites().size() == 4);
  CHECK(p->is_slice());
  CHECK_THROWS_AS(template_power(builtins::figure_eight_operator(), 3, true), ValidationError);
}

TEST_CASE("independence_check") {
  const RhoLedger k1 = RhoLedger::atom(RhoAtom::rho0("K1"));
  const RhoLedger k2 = RhoLedger::atom(RhoAtom::rho0("K2"));
  const RhoLedger r = RhoLedger::atom(RhoAtom::rho1("R"));
  auto a = independence_check({k1, k2}, r);
  CHECK(a.rank == 2);
  CHECK(!a.hits_target);
  auto b = independence_check({k1, r + k1}, r);
  CHECK(b.rank == 2);
  CHECK(b.hits_target);
  auto c = independence_check({RhoLedger()}, r);
  CHECK(c.rank == 0);
  CHECK(!c.hits_target);
  CHECK(!independence_check({k1}, RhoLedger()).hits_target);
}

TEST_CASE("independence_check is invariant under scaling and permutation (property)") {
  const std::vector<RhoAtom> atoms{RhoAtom::rho0("A"), RhoAtom::rho0("B"), RhoAtom::rho0("C"), RhoAtom::rho1("R")};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RhoLedger> ls;
    const int count = static_cast<int>(random_int(1, 4));
    for (int i = 0; i < count; ++i) {
      RhoLedger l(random_int(0, 1) ? random_rational(3, 2) : Rational(0));
      for (const auto& at : atoms) {
        if (random_int(0, 2) == 0) l += RhoLedger::atom(at, random_rational(3, 2));
      }
      ls.push_back(l);
    }
    const RhoLedger target = RhoLedger::atom(RhoAtom::rho1("R"));
    const auto base = independence_check(ls, target);
    auto scaled = ls;
    for (auto& l : scaled) {
      Rational s = random_rational(5, 3);
      if (sgn(s) == 0) s = 1;
      l *= s;
    }
    std::shuffle(scaled.begin(), scaled.end(), knotconc::testing::rng());
    const auto other = independence_check(scaled, target);
    CHECK(other.rank == base.rank);
    CHECK(other.hits_target == base.hits_target);
  }
}

TEST_CASE("certificates replay and detect tampering (property)") {
  const auto f = builtins::figure_eight_operator();
  const auto t = builtins::r946_operator();
  int obstructed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Assignment a;
    const Rational r0 = random_rational(6, 5);
    a.set(RhoAtom::rho0("trefoil"), pt(r0));
    if (random_int(0, 1)) a.set(RhoAtom::rho1("9_46"), pt(random_rational(6, 5)));
    a.set_constant("C", pt(Rational(random_int(0, 3), 2)));
    const ExprPtr e = trial % 3 == 0 ? both(f, builtins::trefoil()) : both(t, builtins::trefoil());
    for (const Verdict& v : {check_fos(e, a, kTol), check_main("trefoil", pt(r0), 1, a),
                             check_j2("trefoil", pt(r0), "9_46", a)}) {
      CHECK(replay(v));
      if (v.status != VerdictStatus::Obstructed) continue;
      ++obstructed;
      for (const auto& s : v.certificate) CHECK(evaluate_step(s, v.assignment) == std::optional<bool>(true));
      Assignment tampered = v.assignment;
      tampered.set(RhoAtom::rho0("trefoil"), pt(Rational(0)));
      tampered.set(RhoAtom::rho1("9_46"), pt(Rational(0)));
      Verdict bad = v;
      bad.assignment = tampered;
      CHECK(!replay(bad));
    }
  }
  CHECK(obstructed > 20);
}
