#include "knotconc/hermitian.hpp"

#include <vector>

#include "knotconc/errors.hpp"

namespace knotconc {

bool is_hermitian(const GaussMatrix& b) {
  if (!b.is_square()) return false;
  for (size_t i = 0; i < b.rows(); ++i) {
    for (size_t j = i; j < b.cols(); ++j) {
      if (!(b(i, j) == b(j, i).conj())) return false;
    }
  }
  return true;
}

Inertia hermitian_signature(const GaussMatrix& input) {
  if (!is_hermitian(input)) throw NotHermitian("hermitian_signature: matrix is not Hermitian");
  Inertia out;
  GaussMatrix a = input;
  // `alive` lists the indices of the trailing Schur complement.
  std::vector<size_t> alive(a.rows());
  for (size_t i = 0; i < alive.size(); ++i) alive[i] = i;

  while (!alive.empty()) {
    size_t diag = alive.size();
    for (size_t k = 0; k < alive.size(); ++k) {
      if (!a(alive[k], alive[k]).is_zero()) {
        diag = k;
        break;
      }
    }
    if (diag < alive.size()) {
      const size_t p = alive[diag];
      const Rational d = a(p, p).re;
      (sgn(d) > 0 ? out.n_plus : out.n_minus) += 1;
      alive.erase(alive.begin() + static_cast<long>(diag));
      for (size_t i : alive) {
        if (a(i, p).is_zero()) continue;
        GaussRational f = a(i, p) / GaussRational(d);
        for (size_t j : alive) a(i, j) -= f * a(p, j);
      }
      continue;
    }

    // Zero diagonal: look for an off-diagonal pivot.
    size_t pi = 0, pj = 0;
    bool found = false;
    for (size_t x = 0; x < alive.size() && !found; ++x) {
      for (size_t y = x + 1; y < alive.size(); ++y) {
        if (!a(alive[x], alive[y]).is_zero()) {
          pi = x;
          pj = y;
          found = true;
          break;
        }
      }
    }
    if (!found) {
      out.n_zero += static_cast<int>(alive.size());
      break;
    }
    // A 2x2 block [[0, b], [conj b, 0]] has one positive and one negative
    // eigenvalue.  Its inverse is [[0, 1/conj b], [1/b, 0]].
    const size_t p = alive[pi];
    const size_t q = alive[pj];
    const GaussRational b = a(p, q);
    const GaussRational inv_b = GaussRational(1) / b;
    const GaussRational inv_bc = GaussRational(1) / b.conj();
    out.n_plus += 1;
    out.n_minus += 1;
    alive.erase(alive.begin() + static_cast<long>(pj));
    alive.erase(alive.begin() + static_cast<long>(pi));
    // S = A_rest - [c_p c_q] E^{-1} [c_p c_q]^*, row i: u_i = a(i,p), v_i = a(i,q)
    // (E^{-1} applied): w_i = [u_i, v_i] E^{-1} = [v_i / b, u_i / conj b].
    std::vector<GaussRational> wp(alive.size()), wq(alive.size());
    for (size_t k = 0; k < alive.size(); ++k) {
      wp[k] = a(alive[k], q) * inv_b;
      wq[k] = a(alive[k], p) * inv_bc;
    }
    for (size_t x = 0; x < alive.size(); ++x) {
      for (size_t y = 0; y < alive.size(); ++y) {
        const size_t i = alive[x];
        const size_t j = alive[y];
        a(i, j) -= wp[x] * a(p, j) + wq[x] * a(q, j);
      }
    }
  }
  return out;
}

}  // namespace knotconc
