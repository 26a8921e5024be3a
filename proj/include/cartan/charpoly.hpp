#pragma once

#include <vector>

#include "cartan/eig.hpp"
#include "cartan/exact.hpp"
#include "cartan/matrix.hpp"

namespace cartan {

// Monic polynomial, leading coefficient first (coeffs[0] = 1).
struct PolynomialCoefficients {
  int degree = 0;
  std::vector<cplx> coeffs;
};

struct ExactPolynomial {
  std::vector<GaussianRational> coeffs;  // leading first, monic

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  bool is_real() const {
    for (const auto& c : coeffs)
      if (!c.is_real()) return false;
    return true;
  }

  PolynomialCoefficients to_numeric() const {
    PolynomialCoefficients p;
    p.degree = degree();
    p.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) p.coeffs.push_back(c.to_complex());
    return p;
  }
};

// Numeric characteristic polynomial: eigenvalues, then expansion of the
// product of linear factors.
inline PolynomialCoefficients char_poly(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("char_poly needs a square matrix");
  const std::vector<cplx> lam = complex_eigenvalues(m);
  PolynomialCoefficients p;
  p.degree = m.rows();
  p.coeffs.assign(1, cplx(1.0, 0.0));
  for (const cplx& l : lam) {
    p.coeffs.push_back(cplx(0.0, 0.0));
    for (std::size_t t = p.coeffs.size() - 1; t >= 1; --t)
      p.coeffs[t] = p.coeffs[t] - l * p.coeffs[t - 1];
  }
  return p;
}

// Dispatching form per the operation contract; exact mode requires the
// Gaussian-rational overload below.
inline PolynomialCoefficients char_poly(const ComplexMatrix& m, bool exact) {
  if (exact)
    throw ExactModeOnInexactInput("exact char_poly needs a Gaussian-rational matrix");
  return char_poly(m);
}

// Faddeev-LeVerrier over Gaussian rationals.
inline ExactPolynomial char_poly_exact(const GaussianRationalMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("char_poly needs a square matrix");
  const int n = m.rows();
  ExactPolynomial p;
  p.coeffs.assign(1, GaussianRational(1));
  GaussianRationalMatrix work = GaussianRationalMatrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    work = m * work;
    GaussianRational ck = (-work.trace()).divided_by_int(k);
    p.coeffs.push_back(ck);
    for (int i = 0; i < n; ++i) work(i, i) += ck;
  }
  return p;
}

inline ExactPolynomial char_poly(const GaussianRationalMatrix& m, bool exact) {
  if (!exact) throw InvalidSpec("numeric mode on exact input: convert with to_complex()");
  return char_poly_exact(m);
}

}  // namespace cartan
