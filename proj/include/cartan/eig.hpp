#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "cartan/matrix.hpp"

namespace cartan {

struct HermitianEig {
  std::vector<double> values;  // a = vectors * diag(values) * vectors^*
  ComplexMatrix vectors;
};

namespace detail {

// Unitary 2x2 diagonalizing [[app, apq], [conj(apq), aqq]]; returns
// J = [[c, s*w], [-s*conj(w)... ]] packed as the four entries.
struct Jacobi2 {
  cplx j11, j12, j21, j22;
};

inline Jacobi2 hermitian_jacobi_rotation(double app, double aqq, cplx apq) {
  const double h = std::abs(apq);
  const cplx w = apq / h;  // caller guarantees h > 0
  const double tau = (aqq - app) / (2.0 * h);
  const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  // J = diag(1, conj(w)) * [[c, s], [-s, c]]
  return {cplx(c, 0.0), cplx(s, 0.0), -s * std::conj(w), c * std::conj(w)};
}

}  // namespace detail

// Cyclic complex Jacobi for Hermitian matrices.
inline HermitianEig hermitian_eig(const ComplexMatrix& a, int max_sweeps = 40) {
  if (a.rows() != a.cols()) throw ShapeMismatch("hermitian_eig needs a square matrix");
  const int n = a.rows();
  ComplexMatrix h = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(h.frobenius_norm(), 1e-300);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(h(p, q));
    if (std::sqrt(2.0 * off) <= 1e-15 * scale * n) break;
    if (sweep == max_sweeps - 1) throw ConvergenceFailure("hermitian_eig did not converge");
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = h(p, q);
        if (std::abs(apq) <= 1e-18 * scale) continue;
        const auto j = detail::hermitian_jacobi_rotation(h(p, p).real(), h(q, q).real(), apq);
        // h <- J^* h J (columns, then rows)
        for (int i = 0; i < n; ++i) {
          const cplx hip = h(i, p), hiq = h(i, q);
          h(i, p) = hip * j.j11 + hiq * j.j21;
          h(i, q) = hip * j.j12 + hiq * j.j22;
        }
        for (int i = 0; i < n; ++i) {
          const cplx hpi = h(p, i), hqi = h(q, i);
          h(p, i) = std::conj(j.j11) * hpi + std::conj(j.j21) * hqi;
          h(q, i) = std::conj(j.j12) * hpi + std::conj(j.j22) * hqi;
        }
        for (int i = 0; i < n; ++i) {
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * j.j11 + viq * j.j21;
          v(i, q) = vip * j.j12 + viq * j.j22;
        }
      }
    }
  }
  HermitianEig out;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = h(i, i).real();
  out.vectors = std::move(v);
  return out;
}

namespace detail {

inline ComplexMatrix hessenberg(const ComplexMatrix& a) {
  const int n = a.rows();
  ComplexMatrix h = a;
  std::vector<cplx> v(n);
  for (int k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (int i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    cplx x0 = h(k + 1, k);
    cplx phase = (std::abs(x0) == 0.0) ? cplx(1.0, 0.0) : x0 / std::abs(x0);
    cplx alpha = -phase * xnorm;
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[i] = h(i, k) - (i == k + 1 ? alpha : cplx(0.0, 0.0));
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    for (int j = 0; j < n; ++j) {  // h <- P h
      cplx dot = 0.0;
      for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
      dot *= beta;
      for (int i = k + 1; i < n; ++i) h(i, j) -= dot * v[i];
    }
    for (int i = 0; i < n; ++i) {  // h <- h P
      cplx dot = 0.0;
      for (int j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
      dot *= beta;
      for (int j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
    }
  }
  return h;
}

inline void eig2x2(cplx a, cplx b, cplx c, cplx d, cplx& l1, cplx& l2) {
  const cplx tr = a + d;
  const cplx disc = std::sqrt((a - d) * (a - d) + 4.0 * b * c);
  l1 = 0.5 * (tr + disc);
  l2 = 0.5 * (tr - disc);
}

}  // namespace detail

// Eigenvalues of a general complex matrix: Hessenberg form followed by
// explicit single-shift QR with Givens rotations. Eigenvalues only.
inline std::vector<cplx> complex_eigenvalues(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw ShapeMismatch("complex_eigenvalues needs a square matrix");
  const int n = a.rows();
  std::vector<cplx> lam(n);
  if (n == 0) return lam;
  if (n == 1) return {a(0, 0)};
  ComplexMatrix h = detail::hessenberg(a);
  const double eps = 2.3e-16;
  int hi = n - 1;
  int iter = 0;
  std::vector<double> cs(n);
  std::vector<cplx> sn(n);
  while (hi > 0) {
    // deflate negligible subdiagonals
    for (int i = 1; i <= hi; ++i) {
      if (std::abs(h(i, i - 1)) <= eps * (std::abs(h(i - 1, i - 1)) + std::abs(h(i, i))))
        h(i, i - 1) = 0.0;
    }
    if (h(hi, hi - 1) == cplx(0.0, 0.0)) {
      lam[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    int lo = hi;
    while (lo > 0 && h(lo, lo - 1) != cplx(0.0, 0.0)) --lo;
    if (hi - lo == 1) {
      detail::eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi), lam[lo], lam[hi]);
      hi = lo - 1;
      iter = 0;
      continue;
    }
    if (++iter > 200) throw ConvergenceFailure("complex_eigenvalues did not converge");
    // Wilkinson shift from the trailing 2x2
    cplx m1, m2;
    detail::eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi), m1, m2);
    cplx mu = (std::abs(m1 - h(hi, hi)) < std::abs(m2 - h(hi, hi))) ? m1 : m2;
    if (iter % 30 == 0) mu += cplx(std::abs(h(hi, hi - 1)), 0.0);  // exceptional shift
    // QR step on the active block: H - mu I = Q R, H <- R Q + mu I
    for (int i = lo; i <= hi; ++i) h(i, i) -= mu;
    for (int i = lo; i < hi; ++i) {
      // Givens zeroing h(i+1, i)
      const cplx f = h(i, i), g = h(i + 1, i);
      const double gn = std::abs(g);
      if (gn == 0.0) {
        cs[i] = 1.0;
        sn[i] = 0.0;
        continue;
      }
      const double fn = std::abs(f);
      const double d = std::hypot(fn, gn);
      const cplx fp = (fn == 0.0) ? cplx(1.0, 0.0) : f / fn;
      cs[i] = fn / d;
      sn[i] = fp * std::conj(g) / d;
      // rows i, i+1 of columns i..hi
      for (int j = i; j <= hi; ++j) {
        const cplx t1 = h(i, j), t2 = h(i + 1, j);
        h(i, j) = cs[i] * t1 + sn[i] * t2;
        h(i + 1, j) = -std::conj(sn[i]) * t1 + cs[i] * t2;
      }
    }
    for (int i = lo; i < hi; ++i) {
      // columns i, i+1 of rows lo..min(i+1, hi)
      for (int r = lo; r <= std::min(i + 1, hi); ++r) {
        const cplx t1 = h(r, i), t2 = h(r, i + 1);
        h(r, i) = t1 * cs[i] + t2 * std::conj(sn[i]);
        h(r, i + 1) = -t1 * sn[i] + t2 * cs[i];
      }
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += mu;
  }
  if (hi == 0) lam[0] = h(0, 0);
  return lam;
}

}  // namespace cartan
