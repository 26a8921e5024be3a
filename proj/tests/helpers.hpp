#pragma once

#include <vector>

#include "cartan/cartan.hpp"

namespace cartan::testing {

inline ComplexMatrix random_complex(int rows, int cols, std::uint64_t seed) {
  CounterRng rng(seed);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      double re, im;
      rng.next_gaussian_pair(re, im);
      m(i, j) = cplx(re, im);
    }
  return m;
}

inline ComplexMatrix random_skew_hermitian(int n, std::uint64_t seed) {
  ComplexMatrix a = random_complex(n, n, seed);
  return (a - a.adjoint()) * cplx(0.5, 0.0);
}

// block-diagonal unitary with Haar blocks
inline ComplexMatrix random_block_diagonal(const std::vector<int>& parts, std::uint64_t seed) {
  int n = 0;
  for (int p : parts) n += p;
  ComplexMatrix m(n, n);
  int off = 0;
  std::uint64_t s = seed;
  for (int p : parts) {
    m.set_block(off, off, haar_unitary(p, ++s).matrix());
    off += p;
  }
  return m;
}

// exact copy: every double is a rational
inline GaussianRationalMatrix rationalize(const ComplexMatrix& m) {
  GaussianRationalMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      r(i, j) = GaussianRational(mpq_class(m(i, j).real()), mpq_class(m(i, j).imag()));
  return r;
}

}  // namespace cartan::testing
