#include "knotconc/matrix.hpp"

namespace knotconc {

Rational determinant(const RationalMatrix& input) {
  if (!input.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  RationalMatrix m = input;
  const size_t n = m.rows();
  Rational det(1);
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && sgn(m(piv, k)) == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != k) {
      m.swap_rows(piv, k);
      det = -det;
    }
    det *= m(k, k);
    for (size_t i = k + 1; i < n; ++i) {
      if (sgn(m(i, k)) == 0) continue;
      Rational f = m(i, k) / m(k, k);
      for (size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

UPoly determinant(const PolyMatrix& input) {
  if (!input.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  const size_t n = input.rows();
  if (n == 0) return UPoly(1);
  PolyMatrix m = input;
  UPoly prev(1);
  bool negate = false;
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t piv = k;
    while (piv < n && m(piv, k).is_zero()) ++piv;
    if (piv == n) return UPoly();
    if (piv != k) {
      m.swap_rows(piv, k);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = UPoly();
    }
    prev = m(k, k);
  }
  UPoly d = m(n - 1, n - 1);
  return negate ? -d : d;
}

PolyMatrix adjugate(const PolyMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("adjugate of non-square matrix");
  const size_t n = m.rows();
  PolyMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = UPoly(1);
    return adj;
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      PolyMatrix minor(n - 1, n - 1);
      for (size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      UPoly cof = determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      adj(j, i) = cof;
    }
  }
  return adj;
}

size_t rank(RationalMatrix m) {
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t piv = r;
    while (piv < m.rows() && sgn(m(piv, c)) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(piv, r);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      for (size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace knotconc
