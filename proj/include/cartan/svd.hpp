#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cartan/eig.hpp"
#include "cartan/matrix.hpp"
#include "cartan/qr.hpp"

namespace cartan {

struct SvdResult {
  ComplexMatrix u;                   // m x m unitary
  std::vector<double> singular_values;  // min(m, n), descending
  ComplexMatrix v;                   // n x n unitary; a = u * Sigma * v^*
};

// One-sided Jacobi on columns. Small dense matrices only.
inline SvdResult svd(const ComplexMatrix& a, int max_sweeps = 60) {
  const int m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) throw ShapeMismatch("svd needs a nonempty matrix");
  if (m < n) {
    SvdResult t = svd(a.adjoint(), max_sweeps);
    return {std::move(t.v), std::move(t.singular_values), std::move(t.u)};
  }
  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    converged = true;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0;
        cplx apq = 0.0;
        for (int i = 0; i < m; ++i) {
          app += std::norm(w(i, p));
          aqq += std::norm(w(i, q));
          apq += std::conj(w(i, p)) * w(i, q);
        }
        if (std::abs(apq) <= 1e-15 * std::sqrt(app * aqq) + 1e-30 * scale * scale) continue;
        converged = false;
        const auto j = detail::hermitian_jacobi_rotation(app, aqq, apq);
        for (int i = 0; i < m; ++i) {
          const cplx wp = w(i, p), wq = w(i, q);
          w(i, p) = wp * j.j11 + wq * j.j21;
          w(i, q) = wp * j.j12 + wq * j.j22;
        }
        for (int i = 0; i < n; ++i) {
          const cplx vp = v(i, p), vq = v(i, q);
          v(i, p) = vp * j.j11 + vq * j.j21;
          v(i, q) = vp * j.j12 + vq * j.j22;
        }
      }
    }
  }
  if (!converged) throw ConvergenceFailure("svd did not converge");

  std::vector<double> sig(n);
  for (int jcol = 0; jcol < n; ++jcol) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += std::norm(w(i, jcol));
    sig[jcol] = std::sqrt(s);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return sig[x] > sig[y]; });

  SvdResult out;
  out.singular_values.resize(n);
  out.v = ComplexMatrix(n, n);
  ComplexMatrix ucols(m, n);
  const double smax = sig.empty() ? 0.0 : sig[order[0]];
  const double tiny = std::max(m, n) * 1e-15 * smax;
  std::vector<int> good;
  for (int t = 0; t < n; ++t) {
    const int jcol = order[t];
    out.singular_values[t] = sig[jcol];
    for (int i = 0; i < n; ++i) out.v(i, t) = v(i, jcol);
    if (sig[jcol] > tiny && sig[jcol] > 0.0) {
      for (int i = 0; i < m; ++i) ucols(i, t) = w(i, jcol) / sig[jcol];
      good.push_back(t);
    }
  }
  // complete U where columns were numerically null (and fill slots n..m-1)
  out.u = ComplexMatrix(m, m);
  ComplexMatrix basis(m, static_cast<int>(good.size()));
  for (std::size_t t = 0; t < good.size(); ++t)
    for (int i = 0; i < m; ++i) basis(i, static_cast<int>(t)) = ucols(i, good[t]);
  ComplexMatrix rest = orthonormal_complement(basis);
  int restj = 0;
  std::size_t gidx = 0;
  for (int t = 0; t < m; ++t) {
    if (gidx < good.size() && good[gidx] == t) {
      for (int i = 0; i < m; ++i) out.u(i, t) = basis(i, static_cast<int>(gidx));
      ++gidx;
    } else {
      for (int i = 0; i < m; ++i) out.u(i, t) = rest(i, restj);
      ++restj;
    }
  }
  return out;
}

}  // namespace cartan
