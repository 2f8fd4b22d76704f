#include "knotconc/blanchfield.hpp"

#include <algorithm>

#include "knotconc/errors.hpp"
#include "knotconc/factor.hpp"

namespace knotconc {

SmithForm smith_normal_form(const PolyMatrix& input) {
  if (!input.is_square()) throw std::invalid_argument("smith_normal_form: matrix must be square");
  PolyMatrix a = input;
  const size_t n = a.rows();
  SmithForm out;
  out.w = PolyMatrix::identity(n);
  out.w_inv = PolyMatrix::identity(n);

  auto col_swap = [&](size_t i, size_t j) {
    a.swap_cols(i, j);
    out.w.swap_cols(i, j);
    out.w_inv.swap_rows(i, j);
  };
  // col_dst -= q col_src, applied to a and w; w_inv gets the inverse row op.
  auto col_sub = [&](size_t dst, size_t src, const UPoly& q) {
    for (size_t r = 0; r < n; ++r) {
      a(r, dst) -= q * a(r, src);
      out.w(r, dst) -= q * out.w(r, src);
    }
    for (size_t c = 0; c < n; ++c) out.w_inv(src, c) += q * out.w_inv(dst, c);
  };
  auto row_sub = [&](size_t dst, size_t src, const UPoly& q) {
    for (size_t c = 0; c < n; ++c) a(dst, c) -= q * a(src, c);
  };

  for (size_t k = 0; k < n; ++k) {
    for (;;) {
      size_t pi = n, pj = n;
      for (size_t i = k; i < n; ++i) {
        for (size_t j = k; j < n; ++j) {
          if (a(i, j).is_zero()) continue;
          if (pi == n || a(i, j).degree() < a(pi, pj).degree()) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == n) break;  // the rest is zero
      a.swap_rows(k, pi);
      col_swap(k, pj);

      bool dirty = false;
      for (size_t i = k + 1; i < n; ++i) {
        if (a(i, k).is_zero()) continue;
        auto [q, r] = divmod(a(i, k), a(k, k));
        row_sub(i, k, q);
        dirty = dirty || !r.is_zero();
      }
      for (size_t j = k + 1; j < n; ++j) {
        if (a(k, j).is_zero()) continue;
        auto [q, r] = divmod(a(k, j), a(k, k));
        col_sub(j, k, q);
        dirty = dirty || !r.is_zero();
      }
      if (dirty) continue;

      size_t bad = n;
      for (size_t i = k + 1; i < n && bad == n; ++i) {
        for (size_t j = k + 1; j < n; ++j) {
          if (!(a(i, j) % a(k, k)).is_zero()) {
            bad = i;
            break;
          }
        }
      }
      if (bad == n) break;
      row_sub(k, bad, UPoly(-1));
    }
  }
  out.diagonal.resize(n);
  for (size_t k = 0; k < n; ++k) out.diagonal[k] = a(k, k).is_zero() ? UPoly() : a(k, k).monic();
  return out;
}

BlanchfieldValue BlanchfieldValue::from_fraction(const LaurentPoly& num, const LaurentPoly& den) {
  auto [shift, d] = den.split();
  if (d.is_zero()) throw std::domain_error("BlanchfieldValue: zero denominator");
  LaurentPoly top = num.shifted(-shift) * Rational(1 / d.leading());
  d = d.monic();
  BlanchfieldValue out;
  if (d.degree() == 0) return out;
  UPoly r = laurent_mod(top, d);
  if (r.is_zero()) return out;
  UPoly g = gcd(r, d);
  out.num_ = r / g;
  out.den_ = d / g;
  return out;
}

BlanchfieldValue BlanchfieldValue::conjugate() const {
  if (is_zero()) return *this;
  return from_fraction(LaurentPoly(num_, 0).conjugate().shifted(den_.degree()),
                       LaurentPoly(den_.reciprocal(), 0));
}

BlanchfieldValue operator+(const BlanchfieldValue& a, const BlanchfieldValue& b) {
  return BlanchfieldValue::from_fraction(LaurentPoly(a.num_ * b.den_ + b.num_ * a.den_, 0),
                                         LaurentPoly(a.den_ * b.den_, 0));
}

BlanchfieldValue operator-(const BlanchfieldValue& a) {
  BlanchfieldValue out = a;
  out.num_ = -out.num_;
  return out;
}

BlanchfieldValue operator*(const LaurentPoly& q, const BlanchfieldValue& a) {
  return BlanchfieldValue::from_fraction(q * LaurentPoly(a.num_, 0), LaurentPoly(a.den_, 0));
}

std::string to_string(const BlanchfieldValue& v) {
  if (v.is_zero()) return "0";
  const UPoly& num = v.numerator();
  const bool integer = num.degree() == 0 && num.coefficients()[0].get_den() == 1;
  const std::string n = to_string(num, "t");
  const std::string d = to_string(v.denominator(), "t");
  return (integer ? n : "(" + n + ")") + "/(" + d + ")";
}

AlexanderModule::AlexanderModule(const SeifertMatrix& v) : v_(v), order_(1) {
  const RationalMatrix& m = v.entries();
  const size_t n = m.rows();
  presentation_ = LaurentMatrix(n, n);
  PolyMatrix a(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      a(i, j) = UPoly(std::vector<Rational>{Rational(-m(j, i)), m(i, j)});
      presentation_(i, j) = LaurentPoly(a(i, j), 0);
    }
  }
  det_ = n == 0 ? UPoly(1) : determinant(a);
  adjugate_ = n == 0 ? PolyMatrix() : adjugate(a);
  smith_ = smith_normal_form(a);
  for (size_t k = 0; k < n; ++k) {
    const UPoly& d = smith_.diagonal[k];
    if (d.is_zero()) throw Error("Alexander module presentation is singular");
    reduced_.push_back(d.strip_x().monic());
    if (reduced_.back().degree() > 0) nonunit_.push_back(k);
    order_ *= reduced_.back();
  }
}

std::vector<UPoly> AlexanderModule::invariant_factors() const {
  std::vector<UPoly> out;
  for (size_t k : nonunit_) out.push_back(reduced_[k]);
  return out;
}

void AlexanderModule::check_length(const ModuleElement& x) const {
  if (x.size() != rank()) {
    throw std::invalid_argument("module element has length " + std::to_string(x.size()) + ", expected " +
                                std::to_string(rank()));
  }
}

void AlexanderModule::require_cyclic(const char* what) const {
  if (!is_cyclic()) throw NotCyclic(std::string(what) + ": Alexander module is not cyclic");
}

std::vector<UPoly> AlexanderModule::coordinates(const ModuleElement& x) const {
  check_length(x);
  const size_t n = rank();
  std::vector<UPoly> out(n);
  for (size_t j = 0; j < n; ++j) {
    if (reduced_[j].degree() == 0) continue;
    LaurentPoly y;
    for (size_t i = 0; i < n; ++i) y += x[i] * LaurentPoly(smith_.w(i, j), 0);
    out[j] = laurent_mod(y, reduced_[j]);
  }
  return out;
}

bool AlexanderModule::is_zero(const ModuleElement& x) const {
  for (const auto& c : coordinates(x)) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool AlexanderModule::equal(const ModuleElement& x, const ModuleElement& y) const {
  check_length(x);
  check_length(y);
  ModuleElement d(x.size());
  for (size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return is_zero(d);
}

ModuleElement AlexanderModule::generator() const {
  require_cyclic("generator");
  ModuleElement g(rank());
  if (is_trivial()) return g;
  const size_t idx = nonunit_.front();
  for (size_t c = 0; c < rank(); ++c) g[c] = LaurentPoly(smith_.w_inv(idx, c), 0);
  return g;
}

UPoly AlexanderModule::cyclic_coordinate(const ModuleElement& x) const {
  require_cyclic("cyclic_coordinate");
  if (is_trivial()) {
    check_length(x);
    return {};
  }
  return coordinates(x)[nonunit_.front()];
}

ModuleElement AlexanderModule::from_cyclic_coordinate(const UPoly& c) const {
  ModuleElement g = generator();
  const LaurentPoly lc(c, 0);
  for (auto& e : g) e = lc * e;
  return g;
}

ModuleElement AlexanderModule::basis(size_t i) const {
  ModuleElement e(rank());
  e.at(i) = LaurentPoly(1);
  return e;
}

BlanchfieldValue AlexanderModule::pair(const ModuleElement& x, const ModuleElement& y) const {
  check_length(x);
  check_length(y);
  const size_t n = rank();
  LaurentPoly s;
  for (size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (size_t j = 0; j < n; ++j) {
      if (y[j].is_zero() || adjugate_(i, j).is_zero()) continue;
      s += x[i] * LaurentPoly(adjugate_(i, j), 0) * y[j].conjugate();
    }
  }
  return BlanchfieldValue::from_fraction((LaurentPoly(1) - LaurentPoly::t()) * s, LaurentPoly(det_, 0));
}

BlanchfieldValue blanchfield_pair(const AlexanderModule& m, const ModuleElement& x, const ModuleElement& y) {
  return m.pair(x, y);
}

BlanchfieldValue blanchfield_pair(const SeifertMatrix& v, const ModuleElement& x, const ModuleElement& y) {
  return AlexanderModule(v).pair(x, y);
}

std::string to_string(const Submodule& p) { return "P[" + to_string(p.divisor, "t") + "]"; }

namespace {

Submodule make_submodule(const AlexanderModule& m, const UPoly& divisor) {
  const ModuleElement g = m.generator();
  const LaurentPoly cof(m.order() / divisor, 0);
  Submodule out{divisor, g};
  for (auto& e : out.generator) e = cof * e;
  return out;
}

// All submodules of a cyclic module: one per monic divisor of the order.
std::vector<Submodule> cyclic_submodules(const AlexanderModule& m) {
  std::vector<UPoly> divisors{UPoly(1)};
  for (const auto& f : factor(m.order())) {
    std::vector<UPoly> next;
    for (const auto& d : divisors) {
      UPoly p = d;
      for (int e = 0; e <= f.multiplicity; ++e) {
        next.push_back(p);
        p *= f.poly;
      }
    }
    divisors = std::move(next);
  }
  std::sort(divisors.begin(), divisors.end(), canonical_less);
  std::vector<Submodule> out;
  for (const auto& d : divisors) out.push_back(make_submodule(m, d));
  return out;
}

}  // namespace

std::vector<Submodule> submodule_lattice(const AlexanderModule& m) {
  if (!m.is_squarefree()) {
    throw NotSquareFree("submodule_lattice: order " + to_string(m.order(), "t") + " is not square-free");
  }
  if (!m.is_cyclic()) throw NotCyclic("submodule_lattice: Alexander module is not cyclic");
  return cyclic_submodules(m);
}

Submodule submodule_generated_by(const AlexanderModule& m, const std::vector<ModuleElement>& xs) {
  UPoly g = m.order();
  for (const auto& x : xs) g = gcd(g, m.cyclic_coordinate(x));
  return make_submodule(m, m.order() / g);
}

bool contains(const AlexanderModule& m, const Submodule& p, const ModuleElement& x) {
  const UPoly c = m.cyclic_coordinate(x);
  return (c % (m.order() / p.divisor)).is_zero();
}

bool is_subset(const Submodule& p, const Submodule& q) { return (q.divisor % p.divisor).is_zero(); }

Submodule orthogonal(const AlexanderModule& m, const Submodule& p) {
  if (!m.is_cyclic()) throw NotCyclic("orthogonal: Alexander module is not cyclic");
  std::vector<Submodule> all = cyclic_submodules(m);
  const Submodule* best = nullptr;
  for (const auto& q : all) {
    if (!m.pair(q.generator, p.generator).is_zero()) continue;
    if (best == nullptr || q.divisor.degree() > best->divisor.degree()) best = &q;
  }
  return *best;  // the zero submodule always qualifies
}

bool is_isotropic(const AlexanderModule& m, const Submodule& p) {
  if (!m.is_cyclic()) throw NotCyclic("is_isotropic: Alexander module is not cyclic");
  return m.pair(p.generator, p.generator).is_zero();
}

bool is_metabolizer(const AlexanderModule& m, const Submodule& p) { return orthogonal(m, p) == p; }

bool class_in_quotient(const AlexanderModule& m, const ModuleElement& x, const Submodule& p) {
  if (!m.is_cyclic()) throw NotCyclic("class_in_quotient: Alexander module is not cyclic");
  return !contains(m, p, x);
}

}  // namespace knotconc
