#pragma once

#include <cmath>
#include <vector>

#include "cartan/matrix.hpp"

namespace cartan {

struct QrResult {
  ComplexMatrix q;  // m x m unitary
  ComplexMatrix r;  // m x n upper triangular
};

// Householder QR with full Q.
inline QrResult householder_qr(const ComplexMatrix& a) {
  const int m = a.rows(), n = a.cols();
  ComplexMatrix r = a;
  ComplexMatrix q = ComplexMatrix::identity(m);
  std::vector<cplx> v(m);
  for (int k = 0; k < std::min(m, n); ++k) {
    double xnorm = 0.0;
    for (int i = k; i < m; ++i) xnorm += std::norm(r(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    cplx x0 = r(k, k);
    cplx phase = (std::abs(x0) == 0.0) ? cplx(1.0, 0.0) : x0 / std::abs(x0);
    cplx alpha = -phase * xnorm;
    double vnorm2 = 0.0;
    for (int i = k; i < m; ++i) {
      v[i] = r(i, k) - (i == k ? alpha : cplx(0.0, 0.0));
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    // r <- (I - beta v v*) r
    for (int j = k; j < n; ++j) {
      cplx dot = 0.0;
      for (int i = k; i < m; ++i) dot += std::conj(v[i]) * r(i, j);
      dot *= beta;
      for (int i = k; i < m; ++i) r(i, j) -= dot * v[i];
    }
    // q <- q (I - beta v v*)
    for (int i = 0; i < m; ++i) {
      cplx dot = 0.0;
      for (int j = k; j < m; ++j) dot += q(i, j) * v[j];
      dot *= beta;
      for (int j = k; j < m; ++j) q(i, j) -= dot * std::conj(v[j]);
    }
  }
  return {std::move(q), std::move(r)};
}

// Given an m x k matrix with orthonormal columns, return an m x (m-k) matrix
// whose columns complete them to an orthonormal basis.
inline ComplexMatrix orthonormal_complement(const ComplexMatrix& v) {
  const int m = v.rows(), k = v.cols();
  if (k == 0) return ComplexMatrix::identity(m);
  QrResult qr = householder_qr(v);
  return qr.q.block(0, k, m, m - k);
}

}  // namespace cartan
