#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace cartan {

using cplx = std::complex<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IndexOutOfRange : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct NotSkewHermitian : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct ExactModeOnInexactInput : Error { using Error::Error; };
struct PartitionMismatch : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };
struct NotApplicable : Error { using Error::Error; };
struct NotSurjectiveSpec : Error { using Error::Error; };
struct DiagonalBlockRequested : Error { using Error::Error; };
struct InvalidLoop : Error { using Error::Error; };
struct SpecActuallySurjective : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct SearchExhausted : Error { using Error::Error; };
struct DispatchGap : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// One tunable source of truth for every numeric threshold in the library.
struct Tolerances {
  double unitary = 1e-12;     // unitarity defect, scaled by dimension
  double fact = 1e-12;        // factorization residual, scaled by (norm + 1)
  double skew = 1e-10;        // relative skew-Hermitian defect
  double real = 1e-9;         // |Im| below this counts as a real coefficient
  double cert = 1e-6;         // rescaled certificate coefficient threshold
  double residual = 1e-8;     // decomposition residual, scaled by dimension
  double membership = 1e-9;   // factor off-block mass
  double orthogonal = 1e-10;  // orthogonality defect of evaluated words
  double cluster = 1e-8;      // singular values this close to 1 (or to each
                              // other) are treated as one degenerate cluster
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace cartan
