#include "knotconc/seifert.hpp"

#include <mpfr.h>

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "knotconc/errors.hpp"
#include "knotconc/factor.hpp"
#include "knotconc/hermitian.hpp"

namespace knotconc {

namespace {

std::string label(const SeifertMatrix& v) { return v.name().empty() ? "<unnamed>" : v.name(); }

// acos(x) / pi rounded outward: toward +inf when `upper`, else toward -inf.
Rational acos_over_pi(const Rational& x, bool upper, mpfr_prec_t prec) {
  mpfr_t a, pi;
  mpfr_init2(a, prec);
  mpfr_init2(pi, prec);
  // acos is decreasing, so the upper bound starts from x rounded down.
  mpfr_set_q(a, x.get_mpq_t(), upper ? MPFR_RNDD : MPFR_RNDU);
  if (mpfr_cmp_si(a, 1) > 0) mpfr_set_si(a, 1, MPFR_RNDN);
  if (mpfr_cmp_si(a, -1) < 0) mpfr_set_si(a, -1, MPFR_RNDN);
  mpfr_acos(a, a, upper ? MPFR_RNDU : MPFR_RNDD);
  mpfr_const_pi(pi, upper ? MPFR_RNDD : MPFR_RNDU);
  mpfr_div(a, a, pi, upper ? MPFR_RNDU : MPFR_RNDD);
  Rational out;
  mpfr_get_q(out.get_mpq_t(), a);
  mpfr_clear(a);
  mpfr_clear(pi);
  return out;
}

// Roughly log2(1 / q) for 0 < q.
// Niven: the only rational cosines at rational multiples of pi in (-1, 1)
// are 0 and +-1/2.
std::optional<Rational> exact_acos_over_pi(const IsolatingInterval& iv) {
  static const std::pair<Rational, Rational> kNiven[] = {
      {Rational(1, 2), Rational(1, 3)}, {Rational(0), Rational(1, 2)}, {Rational(-1, 2), Rational(2, 3)}};
  for (const auto& [c, angle] : kNiven) {
    if (iv.lo <= c && c <= iv.hi && sgn(iv.poly(c)) == 0) return angle;
  }
  return std::nullopt;
}

long bits_below(const Rational& q) {
  long num = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
  long den = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  return std::max(0L, den - num + 1);
}

void fill_windows(SignatureProfile& prof) {
  const size_t n = prof.jumps.size();
  prof.arcs.assign(n + 1, SignatureArc{});
  for (;;) {
    bool ok = true;
    for (size_t k = 0; k <= n; ++k) {
      Rational hi = k == 0 ? Rational(1) : prof.jumps[k - 1].lo;
      Rational lo = k == n ? Rational(-1) : prof.jumps[k].hi;
      if (lo < hi) {
        prof.arcs[k].cos_lo = lo;
        prof.arcs[k].cos_hi = hi;
        continue;
      }
      ok = false;
      if (k > 0) prof.jumps[k - 1] = refine(prof.jumps[k - 1], prof.jumps[k - 1].width() / 2);
      if (k < n) prof.jumps[k] = refine(prof.jumps[k], prof.jumps[k].width() / 2);
    }
    if (ok) return;
  }
}

}  // namespace

SeifertMatrix::SeifertMatrix(RationalMatrix entries, std::string name)
    : v_(std::move(entries)), name_(std::move(name)) {
  if (!v_.is_square()) throw InvalidSeifertMatrix("Seifert matrix " + label(*this) + " is not square");
  if (v_.rows() % 2 != 0) {
    throw InvalidSeifertMatrix("Seifert matrix " + label(*this) + " has odd dimension");
  }
  Rational d = determinant(v_ - v_.transpose());
  if (d != 1 && d != -1) {
    throw InvalidSeifertMatrix("Seifert matrix " + label(*this) + ": det(V - V^T) = " + to_string(d) +
                               ", expected +-1");
  }
}

SeifertMatrix SeifertMatrix::renamed(std::string name) const {
  SeifertMatrix out = *this;
  out.name_ = std::move(name);
  return out;
}

LaurentPoly alexander_polynomial(const SeifertMatrix& v) {
  const RationalMatrix& m = v.entries();
  const size_t n = m.rows();
  if (n == 0) return LaurentPoly(1);
  PolyMatrix a(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      a(i, j) = UPoly(std::vector<Rational>{m(i, j), -m(j, i)});
    }
  }
  // det(V - t V^T) = t^{2g} det(V - V^T / t), so the centre of symmetry is t^g.
  LaurentPoly d(determinant(a), -v.genus());
  if (d(Rational(1)) < 0) d = -d;
  return d;
}

int arf(const SeifertMatrix& v) {
  Rational d = alexander_polynomial(v)(Rational(-1));
  if (d.get_den() != 1 || mpz_odd_p(d.get_num_mpz_t()) == 0) {
    throw InvalidSeifertMatrix("arf: D(-1) = " + to_string(d) + " for " + label(v) +
                               " is not an odd integer");
  }
  Integer r = abs(d.get_num()) % 8;
  return (r == 1 || r == 7) ? 0 : 1;
}

int lt_signature(const SeifertMatrix& v, const CirclePoint& p) {
  if (!p.is_infinity() && sgn(p.parameter()) == 0) {
    throw AtOne("lt_signature is undefined at w = 1");
  }
  const GaussRational w = circle_value(p);
  if (alexander_polynomial(v)(w).is_zero()) {
    throw AtRootOfAlexander("lt_signature: w = " + to_string(w) + " is a root of the Alexander polynomial");
  }
  const RationalMatrix& m = v.entries();
  const size_t n = m.rows();
  const GaussRational a = GaussRational(1) - w;
  const GaussRational b = a.conj();
  GaussMatrix h(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) h(i, j) = a * GaussRational(m(i, j)) + b * GaussRational(m(j, i));
  }
  return hermitian_signature(h).signature();
}

SignatureProfile signature_profile(const SeifertMatrix& v) {
  SignatureProfile prof;
  const LaurentPoly delta = alexander_polynomial(v);
  const UPoly p = chebyshev_reduce(delta);
  prof.jumps = sturm_isolate(p, Rational(-1), Rational(1));
  std::reverse(prof.jumps.begin(), prof.jumps.end());
  fill_windows(prof);
  for (auto& arc : prof.arcs) {
    arc.sample = circle_point_with_cosine_in(arc.cos_lo, arc.cos_hi);
    arc.value = lt_signature(v, arc.sample);
  }
  if (sgn(p(Rational(-1))) != 0) {
    prof.value_at_minus_one = lt_signature(v, CirclePoint::infinity());
  } else {
    prof.value_at_minus_one = prof.arcs.back().value;
  }
  return prof;
}

Rho0Result rho0(const SeifertMatrix& v, const Rational& tol) {
  if (sgn(tol) <= 0) throw std::invalid_argument("rho0: tolerance must be positive");
  Rho0Result out;
  out.profile = signature_profile(v);
  SignatureProfile& prof = out.profile;
  const size_t n = prof.jumps.size();
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(64 + 2 * bits_below(tol));

  // rho0 = sigma_n + sum_j (theta_j / pi) (sigma_j - sigma_{j+1}).
  for (;;) {
    Rational value(prof.arcs[n].value);
    Rational err(0);
    for (size_t j = 0; j < n; ++j) {
      const int jump = prof.arcs[j].value - prof.arcs[j + 1].value;
      if (jump == 0) continue;
      if (auto exact = exact_acos_over_pi(prof.jumps[j])) {
        value += Rational(jump) * *exact;
        continue;
      }
      Rational lo = acos_over_pi(prof.jumps[j].hi, false, prec);
      Rational hi = acos_over_pi(prof.jumps[j].lo, true, prec);
      value += Rational(jump) * (lo + hi) / 2;
      err += Rational(std::abs(jump)) * (hi - lo) / 2;
    }
    if (err <= tol) {
      out.value = value;
      out.error_bound = err;
      return out;
    }
    for (auto& iv : prof.jumps) iv = refine(iv, iv.width() / 256);
  }
}

SeifertMatrix connected_sum(const SeifertMatrix& a, const SeifertMatrix& b) {
  std::string name;
  if (!a.name().empty() && !b.name().empty()) name = a.name() + "#" + b.name();
  return SeifertMatrix(block_sum(a.entries(), b.entries()), name);
}

SeifertMatrix mirror(const SeifertMatrix& v) {
  RationalMatrix m = v.entries().transpose().map([](const Rational& x) { return Rational(-x); });
  return SeifertMatrix(std::move(m), v.name().empty() ? "" : "mirror(" + v.name() + ")");
}

bool fox_milnor_test(const LaurentPoly& delta) {
  if (delta.is_zero()) return false;
  const auto fs = factor(delta.split().second);
  auto multiplicity = [&](const UPoly& q) {
    for (const auto& f : fs) {
      if (f.poly == q) return f.multiplicity;
    }
    return 0;
  };
  for (const auto& f : fs) {
    UPoly partner = f.poly.reciprocal().monic();
    if (partner == f.poly) {
      if (f.multiplicity % 2 != 0) return false;
    } else if (multiplicity(partner) != f.multiplicity) {
      return false;
    }
  }
  return true;
}

}  // namespace knotconc
