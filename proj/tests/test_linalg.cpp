#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace cartan;
using cartan::testing::random_complex;
using cartan::testing::random_skew_hermitian;
using cartan::testing::rationalize;

TEST_CASE("haar_unitary basics") {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    UnitaryMatrix u1 = haar_unitary(1, seed);
    CHECK(std::abs(std::abs(u1.matrix()(0, 0)) - 1.0) <= 1e-14);
  }
  UnitaryMatrix u = haar_unitary(4, 42);
  CHECK(u.unitarity_defect() <= 1e-13);
  // determinism
  CHECK(haar_unitary(4, 42).matrix() == u.matrix());
  CHECK(!(haar_unitary(4, 43).matrix() == u.matrix()));
}

TEST_CASE("haar moment: mean |tr g|^2 is 1 within 3 sigma (Monte-Carlo oracle)") {
  const int trials = 1000;
  double sum = 0.0, sumsq = 0.0;
  for (int s = 0; s < trials; ++s) {
    const cplx t = haar_unitary(8, 1000 + s).matrix().trace();
    const double v = std::norm(t);
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / trials;
  const double var = (sumsq / trials - mean * mean) / trials;
  CHECK(std::abs(mean - 1.0) <= 3.0 * std::sqrt(var));
}

TEST_CASE("svd: fixed examples") {
  SvdResult s1 = svd(ComplexMatrix::identity(3));
  for (double v : s1.singular_values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  ComplexMatrix d(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = cplx(0.0, 4.0);
  SvdResult s2 = svd(d);
  CHECK(s2.singular_values[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(s2.singular_values[1] == doctest::Approx(3.0).epsilon(1e-14));

  ComplexMatrix m = random_complex(5, 3, 7);
  SvdResult s3 = svd(m);
  ComplexMatrix sig(5, 3);
  for (int i = 0; i < 3; ++i) sig(i, i) = s3.singular_values[i];
  CHECK((s3.u * sig * s3.v.adjoint() - m).frobenius_norm() <= 1e-12 * (m.frobenius_norm() + 1));
}

TEST_CASE("svd: reconstruction residual over random instances") {
  CounterRng shape_rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const int rows = 1 + static_cast<int>(shape_rng.next_u64() % 32);
    const int cols = 1 + static_cast<int>(shape_rng.next_u64() % 32);
    ComplexMatrix m = random_complex(rows, cols, 5000 + t);
    SvdResult s = svd(m);
    ComplexMatrix sig(rows, cols);
    for (std::size_t i = 0; i < s.singular_values.size(); ++i)
      sig(static_cast<int>(i), static_cast<int>(i)) = s.singular_values[i];
    const double res = (s.u * sig * s.v.adjoint() - m).frobenius_norm();
    REQUIRE(res <= 1e-12 * (m.frobenius_norm() + 1));
    REQUIRE(unitarity_defect(s.u) <= 1e-12 * rows);
    REQUIRE(unitarity_defect(s.v) <= 1e-12 * cols);
    for (std::size_t i = 1; i < s.singular_values.size(); ++i)
      REQUIRE(s.singular_values[i - 1] >= s.singular_values[i]);
  }
}

TEST_CASE("plane_rotation: examples and properties") {
  CHECK((plane_rotation(2, 1, 2, 0.0).matrix() - ComplexMatrix::identity(2)).frobenius_norm() ==
        doctest::Approx(0.0));
  ComplexMatrix r = plane_rotation(2, 1, 2, M_PI / 2).matrix();
  CHECK(std::abs(r(0, 1) - cplx(1.0, 0.0)) <= 1e-15);
  CHECK(std::abs(r(1, 0) - cplx(-1.0, 0.0)) <= 1e-15);
  CHECK(std::abs(r(0, 0)) <= 1e-15);

  // disjoint planes commute
  ComplexMatrix a = plane_rotation(4, 1, 4, 0.7).matrix();
  ComplexMatrix b = plane_rotation(4, 2, 3, -1.3).matrix();
  CHECK((a * b - b * a).frobenius_norm() <= 1e-15);

  // additivity in the angle
  CounterRng rng(7);
  for (int t = 0; t < 50; ++t) {
    const double x = 4.0 * rng.next_double() - 2.0, y = 4.0 * rng.next_double() - 2.0;
    ComplexMatrix lhs = plane_rotation(5, 2, 4, x).matrix() * plane_rotation(5, 2, 4, y).matrix();
    CHECK((lhs - plane_rotation(5, 2, 4, x + y).matrix()).frobenius_norm() <= 1e-13);
  }
  CHECK_THROWS_AS(plane_rotation(3, 2, 2, 0.1), IndexOutOfRange);
  CHECK_THROWS_AS(plane_rotation(3, 0, 2, 0.1), IndexOutOfRange);
  CHECK_THROWS_AS(plane_rotation(3, 1, 4, 0.1), IndexOutOfRange);
}

TEST_CASE("expm_skew_hermitian") {
  ComplexMatrix z(3, 3);
  CHECK((expm_skew_hermitian(z).matrix() - ComplexMatrix::identity(3)).frobenius_norm() <= 1e-14);

  const double theta = 0.8351;
  ComplexMatrix x(2, 2);
  x(0, 1) = theta;
  x(1, 0) = -theta;
  CHECK((expm_skew_hermitian(x).matrix() - plane_rotation(2, 1, 2, theta).matrix())
            .frobenius_norm() <= 1e-13);

  ComplexMatrix s = random_skew_hermitian(5, 3);
  ComplexMatrix e1 = expm_skew_hermitian(s).matrix();
  ComplexMatrix e2 = expm_skew_hermitian(s * cplx(-1.0, 0.0)).matrix();
  CHECK((e1 * e2 - ComplexMatrix::identity(5)).frobenius_norm() <= 1e-12);
  CHECK(unitarity_defect(e1) <= 1e-12 * 5);

  ComplexMatrix h = random_complex(4, 4, 11);
  CHECK_THROWS_AS(expm_skew_hermitian(h), NotSkewHermitian);
}

TEST_CASE("hermitian_eig reconstructs") {
  ComplexMatrix a = random_complex(6, 6, 31);
  a = (a + a.adjoint()) * cplx(0.5, 0.0);
  HermitianEig e = hermitian_eig(a);
  ComplexMatrix d(6, 6);
  for (int i = 0; i < 6; ++i) d(i, i) = e.values[i];
  CHECK((e.vectors * d * e.vectors.adjoint() - a).frobenius_norm() <= 1e-12 * a.frobenius_norm());
}

TEST_CASE("complex_eigenvalues: char poly evaluates to zero at the roots") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    ComplexMatrix a = random_complex(7, 7, 400 + seed);
    std::vector<cplx> lam = complex_eigenvalues(a);
    REQUIRE(lam.size() == 7);
    // trace equals the eigenvalue sum
    cplx s = 0.0;
    for (const cplx& l : lam) s += l;
    CHECK(std::abs(s - a.trace()) <= 1e-10 * (1.0 + a.frobenius_norm()));
  }
}

TEST_CASE("char_poly: examples") {
  PolynomialCoefficients p1 = char_poly(ComplexMatrix::identity(2));
  REQUIRE(p1.coeffs.size() == 3);
  CHECK(std::abs(p1.coeffs[0] - cplx(1, 0)) <= 1e-14);
  CHECK(std::abs(p1.coeffs[1] - cplx(-2, 0)) <= 1e-12);
  CHECK(std::abs(p1.coeffs[2] - cplx(1, 0)) <= 1e-12);

  ComplexMatrix one(1, 1);
  one(0, 0) = cplx(0.0, 2.0);
  PolynomialCoefficients p2 = char_poly(one);
  CHECK(std::abs(p2.coeffs[1] - cplx(0.0, -2.0)) <= 1e-14);

  CHECK_THROWS_AS(char_poly(one, true), ExactModeOnInexactInput);
}

TEST_CASE("char_poly: numeric agrees with exact on the rationalized input") {
  ComplexMatrix a = random_complex(4, 4, 9);
  PolynomialCoefficients numeric = char_poly(a);
  ExactPolynomial exact = char_poly_exact(rationalize(a));
  REQUIRE(numeric.coeffs.size() == exact.coeffs.size());
  for (std::size_t t = 0; t < numeric.coeffs.size(); ++t)
    CHECK(std::abs(numeric.coeffs[t] - exact.coeffs[t].to_complex()) <= 1e-9);
}

TEST_CASE("counter rng is platform independent") {
  CounterRng rng(12345);
  const std::uint64_t a = rng.next_u64();
  const std::uint64_t b = rng.next_u64();
  CounterRng rng2(12345);
  CHECK(rng2.next_u64() == a);
  CHECK(rng2.next_u64() == b);
  CHECK(a != b);
}
