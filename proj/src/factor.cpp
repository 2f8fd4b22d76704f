#include "knotconc/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace knotconc {

namespace {

using ZPoly = std::vector<Integer>;  // low to high, trimmed
using PPoly = std::vector<long>;     // low to high, trimmed, entries in [0, p)

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int pdeg(const PPoly& a) { return static_cast<int>(a.size()) - 1; }

long mulmod(long a, long b, long p) {
  return static_cast<long>((static_cast<std::int64_t>(a) * b) % p);
}

long powmod(long a, long e, long p) {
  long r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

long invmod(long a, long p) { return powmod(a, p - 2, p); }

PPoly to_mod(const ZPoly& a, long p) {
  PPoly out(a.size());
  Integer pp(p);
  for (size_t i = 0; i < a.size(); ++i) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a[i].get_mpz_t(), pp.get_mpz_t());
    out[i] = r.get_si();
  }
  ptrim(out);
  return out;
}

PPoly psub(PPoly a, const PPoly& b, long p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] - b[i] + p) % p;
  ptrim(a);
  return a;
}

PPoly pmul(const PPoly& a, const PPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  PPoly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  ptrim(out);
  return out;
}

PPoly pscale(PPoly a, long c, long p) {
  for (auto& x : a) x = mulmod(x, c, p);
  ptrim(a);
  return a;
}

std::pair<PPoly, PPoly> pdivmod(const PPoly& a, const PPoly& b, long p) {
  if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
  PPoly rem = a;
  if (pdeg(a) < pdeg(b)) return {{}, rem};
  PPoly quo(static_cast<size_t>(pdeg(a) - pdeg(b)) + 1, 0);
  long inv = invmod(b.back(), p);
  for (int k = pdeg(a); k >= pdeg(b); --k) {
    long c = mulmod(rem[static_cast<size_t>(k)], inv, p);
    if (c == 0) continue;
    quo[static_cast<size_t>(k - pdeg(b))] = c;
    for (int j = 0; j <= pdeg(b); ++j) {
      size_t idx = static_cast<size_t>(k - pdeg(b) + j);
      rem[idx] = (rem[idx] - mulmod(c, b[static_cast<size_t>(j)], p) + p) % p;
    }
  }
  ptrim(rem);
  ptrim(quo);
  return {quo, rem};
}

PPoly pmonic(const PPoly& a, long p) {
  if (a.empty()) return a;
  return pscale(a, invmod(a.back(), p), p);
}

PPoly pgcd(PPoly a, PPoly b, long p) {
  while (!b.empty()) {
    PPoly r = pdivmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(a, p);
}

// s a + t b = 1 for coprime a, b.
std::pair<PPoly, PPoly> pbezout(const PPoly& a, const PPoly& b, long p) {
  PPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
  while (!r1.empty()) {
    auto [q, r] = pdivmod(r0, r1, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    PPoly s2 = psub(s0, pmul(q, s1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    PPoly t2 = psub(t0, pmul(q, t1, p), p);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (pdeg(r0) != 0) throw std::logic_error("pbezout: inputs not coprime");
  long inv = invmod(r0[0], p);
  return {pscale(s0, inv, p), pscale(t0, inv, p)};
}

PPoly pderivative(const PPoly& a, long p) {
  if (a.size() <= 1) return {};
  PPoly out(a.size() - 1);
  for (size_t k = 1; k < a.size(); ++k) out[k - 1] = mulmod(a[k], static_cast<long>(k) % p, p);
  ptrim(out);
  return out;
}

PPoly ppowmod(const PPoly& a, Integer e, const PPoly& m, long p) {
  PPoly result = pdivmod(PPoly{1}, m, p).second;
  PPoly base = pdivmod(a, m, p).second;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = pdivmod(pmul(result, base, p), m, p).second;
    base = pdivmod(pmul(base, base, p), m, p).second;
    e >>= 1;
  }
  return result;
}

// Distinct-degree factorization of a monic square-free polynomial.
std::vector<std::pair<PPoly, int>> ddf(PPoly f, long p) {
  std::vector<std::pair<PPoly, int>> out;
  const PPoly x{0, 1};
  PPoly h = pdivmod(x, f, p).second;
  int d = 0;
  while (pdeg(f) >= 2 * (d + 1)) {
    ++d;
    h = ppowmod(h, Integer(p), f, p);
    PPoly g = pgcd(f, psub(h, x, p), p);
    if (pdeg(g) > 0) {
      out.emplace_back(g, d);
      f = pdivmod(f, g, p).first;
      h = pdivmod(h, f, p).second;
    }
  }
  if (pdeg(f) > 0) out.emplace_back(f, pdeg(f));
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus), odd p.
void edf(const PPoly& g, int d, long p, std::mt19937_64& rng, std::vector<PPoly>& out) {
  if (pdeg(g) == d) {
    out.push_back(g);
    return;
  }
  Integer pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
  Integer e = (pd - 1) / 2;
  std::uniform_int_distribution<long> coef(0, p - 1);
  for (;;) {
    PPoly a(static_cast<size_t>(pdeg(g)));
    for (auto& c : a) c = coef(rng);
    ptrim(a);
    if (pdeg(a) < 1) continue;
    PPoly b = psub(ppowmod(a, e, g, p), PPoly{1}, p);
    PPoly c = pgcd(g, b, p);
    if (pdeg(c) > 0 && pdeg(c) < pdeg(g)) {
      edf(c, d, p, rng, out);
      edf(pdivmod(g, c, p).first, d, p, rng, out);
      return;
    }
  }
}

// Reduce to [0, m).
void zmod(ZPoly& a, const Integer& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  ztrim(a);
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  ztrim(out);
  return out;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (b.size() > a.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  ztrim(a);
  return a;
}

ZPoly from_mod(const PPoly& a) {
  ZPoly out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  return out;
}

ZPoly zmonic_mod(const ZPoly& a, const Integer& m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.back().get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::logic_error("leading coefficient not invertible during Hensel lifting");
  }
  ZPoly out = a;
  for (auto& c : out) c *= inv;
  zmod(out, m);
  return out;
}

// Lift F = A0 * B0 (mod p), A0 monic, to F = A * B (mod p^k).
std::pair<ZPoly, ZPoly> lift_pair(const ZPoly& f, const PPoly& a0, const PPoly& b0, long p, int k) {
  auto [s, t] = pbezout(a0, b0, p);
  ZPoly a = from_mod(a0);
  ZPoly b = from_mod(b0);
  Integer q(p);
  for (int step = 1; step < k; ++step) {
    ZPoly err = zsub(f, zmul(a, b));
    for (auto& c : err) {
      if (!mpz_divisible_p(c.get_mpz_t(), q.get_mpz_t())) {
        throw std::logic_error("Hensel lifting invariant violated");
      }
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), q.get_mpz_t());
    }
    PPoly e = to_mod(err, p);
    PPoly da = pdivmod(pmul(t, e, p), a0, p).second;
    PPoly db = pdivmod(psub(e, pmul(da, b0, p), p), a0, p).first;
    ZPoly za = from_mod(da);
    ZPoly zb = from_mod(db);
    if (za.size() > a.size()) a.resize(za.size());
    for (size_t i = 0; i < za.size(); ++i) a[i] += q * za[i];
    if (zb.size() > b.size()) b.resize(zb.size());
    for (size_t i = 0; i < zb.size(); ++i) b[i] += q * zb[i];
    ztrim(a);
    ztrim(b);
    q *= p;
  }
  zmod(a, q);
  zmod(b, q);
  return {a, b};
}

void lift_tree(const ZPoly& f, const std::vector<PPoly>& facs, long p, int k, const Integer& m,
               std::vector<ZPoly>& out) {
  if (facs.size() == 1) {
    out.push_back(zmonic_mod(f, m));
    return;
  }
  size_t half = facs.size() / 2;
  PPoly a0{1}, b0{1};
  for (size_t i = 0; i < half; ++i) a0 = pmul(a0, facs[i], p);
  for (size_t i = half; i < facs.size(); ++i) b0 = pmul(b0, facs[i], p);
  b0 = pscale(b0, to_mod(ZPoly{f.back()}, p).at(0), p);
  auto [a, b] = lift_pair(f, a0, b0, p, k);
  lift_tree(a, std::vector<PPoly>(facs.begin(), facs.begin() + static_cast<long>(half)), p, k, m, out);
  lift_tree(b, std::vector<PPoly>(facs.begin() + static_cast<long>(half), facs.end()), p, k, m, out);
}

Integer content(const ZPoly& a) {
  Integer g;
  for (const auto& c : a) g = gcd(g, c);
  return g;
}

ZPoly primitive(ZPoly a) {
  Integer g = content(a);
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

UPoly to_upoly(const ZPoly& a) {
  std::vector<Rational> v(a.begin(), a.end());
  return UPoly(std::move(v));
}

ZPoly to_zpoly(const UPoly& p) {
  Integer l(1);
  for (const auto& c : p.coefficients()) l = lcm(l, c.get_den());
  ZPoly out;
  for (const auto& c : p.coefficients()) out.push_back(Integer(c * l));
  return primitive(out);
}

bool next_combination(std::vector<size_t>& idx, size_t n) {
  size_t k = idx.size();
  for (size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Irreducible factors of a primitive square-free integer polynomial with
// nonzero constant term.
std::vector<UPoly> zassenhaus(const ZPoly& g) {
  const int n = static_cast<int>(g.size()) - 1;
  if (n <= 1) return {to_upoly(g).monic()};

  long p = 3;
  PPoly gp;
  for (;; p += 2) {
    if (!is_prime(p)) continue;
    gp = to_mod(g, p);
    if (pdeg(gp) != n) continue;
    if (pdeg(pgcd(gp, pderivative(gp, p), p)) == 0) break;
  }

  std::mt19937_64 rng(0x5eed);
  std::vector<PPoly> modular;
  for (auto& [block, d] : ddf(pmonic(gp, p), p)) edf(block, d, p, rng, modular);
  if (modular.size() == 1) return {to_upoly(g).monic()};

  Integer norm1;
  for (const auto& c : g) norm1 += abs(c);
  Integer bound = 2 * abs(g.back()) * norm1;
  bound <<= static_cast<unsigned long>(n);
  Integer m(p);
  int k = 1;
  while (m <= bound) {
    m *= p;
    ++k;
  }

  std::vector<ZPoly> lifted;
  lift_tree(g, modular, p, k, m, lifted);

  Integer half_m = m / 2;
  std::vector<UPoly> found;
  ZPoly rest = g;
  size_t s = 1;
  while (2 * s <= lifted.size()) {
    std::vector<size_t> idx(s);
    for (size_t i = 0; i < s; ++i) idx[i] = i;
    bool hit = false;
    do {
      ZPoly cand{rest.back()};
      for (size_t i : idx) {
        cand = zmul(cand, lifted[i]);
        zmod(cand, m);
      }
      for (auto& c : cand) {
        if (c > half_m) c -= m;
      }
      ztrim(cand);
      cand = primitive(cand);
      if (cand.size() < 2) continue;
      auto [q, r] = divmod(to_upoly(rest), to_upoly(cand));
      if (!r.is_zero()) continue;
      found.push_back(to_upoly(cand).monic());
      rest = to_zpoly(q);
      std::vector<ZPoly> remaining;
      for (size_t i = 0; i < lifted.size(); ++i) {
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) remaining.push_back(lifted[i]);
      }
      lifted = std::move(remaining);
      hit = true;
      break;
    } while (next_combination(idx, lifted.size()));
    if (!hit) ++s;
  }
  if (rest.size() >= 2) found.push_back(to_upoly(rest).monic());
  return found;
}

}  // namespace

std::vector<Factor> factor(const UPoly& p) {
  std::vector<Factor> out;
  if (p.degree() <= 0) return out;

  UPoly f = p.monic();
  if (int v = f.valuation(); v > 0) {
    out.push_back({UPoly::x(), v});
    f = f.strip_x();
  }

  // Yun's square-free decomposition.
  UPoly a0 = gcd(f, f.derivative());
  UPoly b = (f / a0).monic();
  UPoly c = f.derivative() / a0;
  UPoly d = c - b.derivative();
  for (int mult = 1; b.degree() > 0; ++mult) {
    UPoly a = gcd(b, d);
    if (a.degree() > 0) {
      for (const UPoly& irr : zassenhaus(to_zpoly(a))) out.push_back({irr, mult});
    }
    b = (b / a).monic();
    c = d / a;
    d = c - b.derivative();
  }

  std::sort(out.begin(), out.end(),
            [](const Factor& x, const Factor& y) { return canonical_less(x.poly, y.poly); });
  return out;
}

}  // namespace knotconc
