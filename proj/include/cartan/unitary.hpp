#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "cartan/eig.hpp"
#include "cartan/matrix.hpp"
#include "cartan/qr.hpp"
#include "cartan/rng.hpp"
#include "cartan/types.hpp"

namespace cartan {

class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;

  static UnitaryMatrix from_matrix(ComplexMatrix m,
                                   const Tolerances& tol = default_tolerances()) {
    if (m.rows() != m.cols()) throw NotUnitary("unitary matrix must be square");
    if (!m.is_finite()) throw NotUnitary("unitary matrix has non-finite entries");
    const double defect = unitarity_defect(m);
    if (defect > tol.unitary * m.rows())
      throw NotUnitary("unitarity defect " + std::to_string(defect) + " exceeds tolerance");
    return UnitaryMatrix(std::move(m), defect);
  }

  const ComplexMatrix& matrix() const { return m_; }
  double unitarity_defect() const { return defect_; }
  int size() const { return m_.rows(); }

 private:
  UnitaryMatrix(ComplexMatrix m, double defect) : m_(std::move(m)), defect_(defect) {}
  ComplexMatrix m_;
  double defect_ = 0.0;
};

// Haar sample: QR of a complex Gaussian matrix, with the R diagonal made
// positive real so the result is independent of the QR sign convention.
inline UnitaryMatrix haar_unitary(int n, std::uint64_t seed,
                                  const Tolerances& tol = default_tolerances()) {
  if (n < 1) throw InvalidSpec("haar_unitary needs n >= 1");
  CounterRng rng(seed);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double re, im;
      rng.next_gaussian_pair(re, im);
      a(i, j) = cplx(re, im);
    }
  QrResult qr = householder_qr(a);
  ComplexMatrix q = std::move(qr.q);
  for (int j = 0; j < n; ++j) {
    const cplx rjj = qr.r(j, j);
    const double ab = std::abs(rjj);
    const cplx d = (ab == 0.0) ? cplx(1.0, 0.0) : rjj / ab;
    for (int i = 0; i < n; ++i) q(i, j) *= d;
  }
  return UnitaryMatrix::from_matrix(std::move(q), tol);
}

// Real orthogonal Haar sample, used by certificate sanity checks.
inline ComplexMatrix haar_orthogonal(int n, std::uint64_t seed) {
  CounterRng rng(seed);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double g0, g1;
      rng.next_gaussian_pair(g0, g1);
      a(i, j) = cplx(g0, 0.0);
      (void)g1;
    }
  QrResult qr = householder_qr(a);
  ComplexMatrix q = std::move(qr.q);
  for (int j = 0; j < n; ++j) {
    const double s = qr.r(j, j).real() >= 0.0 ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) q(i, j) *= s;
  }
  return q;
}

// Rotation in the coordinate plane (i, j), 1-based, exp of theta(E_ij - E_ji):
// entries (i,i) = (j,j) = cos, (i,j) = sin, (j,i) = -sin.
inline ComplexMatrix plane_rotation_matrix(int n, int i, int j, double theta) {
  if (!(1 <= i && i < j && j <= n)) throw IndexOutOfRange("plane_rotation needs 1 <= i < j <= n");
  ComplexMatrix r = ComplexMatrix::identity(n);
  const double c = std::cos(theta), s = std::sin(theta);
  r(i - 1, i - 1) = c;
  r(j - 1, j - 1) = c;
  r(i - 1, j - 1) = s;
  r(j - 1, i - 1) = -s;
  return r;
}

inline UnitaryMatrix plane_rotation(int n, int i, int j, double theta,
                                    const Tolerances& tol = default_tolerances()) {
  return UnitaryMatrix::from_matrix(plane_rotation_matrix(n, i, j, theta), tol);
}

// exp(x) for skew-Hermitian x via the eigendecomposition of -i x.
inline UnitaryMatrix expm_skew_hermitian(const ComplexMatrix& x,
                                         const Tolerances& tol = default_tolerances()) {
  if (x.rows() != x.cols()) throw ShapeMismatch("expm_skew_hermitian needs a square matrix");
  const double nx = x.frobenius_norm();
  const double defect = (x + x.adjoint()).frobenius_norm();
  if (defect > tol.skew * std::max(nx, 1e-30))
    throw NotSkewHermitian("matrix fails the skew-Hermitian test");
  ComplexMatrix h = x * cplx(0.0, -1.0);
  // symmetrize away rounding before the Hermitian solver
  h = (h + h.adjoint()) * cplx(0.5, 0.0);
  HermitianEig eig = hermitian_eig(h);
  const int n = x.rows();
  ComplexMatrix d(n, n);
  for (int i = 0; i < n; ++i)
    d(i, i) = cplx(std::cos(eig.values[i]), std::sin(eig.values[i]));
  return UnitaryMatrix::from_matrix(eig.vectors * d * eig.vectors.adjoint(), tol);
}

// One letter of a plane-rotation word; indices 1-based with i < j.
struct RotationLetter {
  int i = 0;
  int j = 0;
  double theta = 0.0;
};

struct PlaneRotationWord {
  int n = 0;
  std::vector<RotationLetter> letters;

  // left-to-right product of the letters' rotation matrices
  ComplexMatrix eval() const {
    ComplexMatrix r = ComplexMatrix::identity(n);
    for (const RotationLetter& w : letters) {
      if (!(1 <= w.i && w.i < w.j && w.j <= n))
        throw IndexOutOfRange("rotation letter out of range");
      const double c = std::cos(w.theta), s = std::sin(w.theta);
      const int a = w.i - 1, b = w.j - 1;
      for (int row = 0; row < n; ++row) {  // r <- r * R(i, j, theta)
        const cplx ra = r(row, a), rb = r(row, b);
        r(row, a) = ra * c - rb * s;
        r(row, b) = ra * s + rb * c;
      }
    }
    return r;
  }
};

// canonical letter with i < j; flips the angle sign when the pair is swapped
inline RotationLetter make_letter(int i, int j, double theta) {
  if (i == j) throw IndexOutOfRange("rotation plane needs two distinct coordinates");
  if (i < j) return {i, j, theta};
  return {j, i, -theta};
}

}  // namespace cartan
