#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"

using namespace cartan;
using cartan::testing::random_block_diagonal;

namespace {

double reconstruction_residual(const UnitaryMatrix& g, const BipartitionPair& parts,
                               const CsdResult& r) {
  const ComplexMatrix b = csd_word(parts.n, r.angles).eval();
  return (r.left.matrix() * b * r.right.matrix() - g.matrix()).frobenius_norm();
}

// independent oracle: multiset {cos theta} + {1 pad} must match the corner
// singular values
void check_angle_sv_correspondence(const UnitaryMatrix& g, const BipartitionPair& parts,
                                   const CsdResult& r, double tol = 1e-9) {
  const int n1 = parts.row_parts[0], p = parts.col_parts[0];
  SvdResult sv = svd(g.matrix().block(0, 0, n1, p));
  std::vector<double> expected = sv.singular_values;
  std::vector<double> got;
  for (double a : r.angles) got.push_back(std::cos(a));
  for (int t = 0; t < std::min(n1, p) - static_cast<int>(r.angles.size()); ++t)
    got.push_back(1.0);
  std::sort(got.begin(), got.end(), std::greater<double>());
  REQUIRE(got.size() == expected.size());
  for (std::size_t t = 0; t < got.size(); ++t)
    CHECK(std::abs(got[t] - expected[t]) <= tol);
}

void check_contract(const UnitaryMatrix& g, const BipartitionPair& parts, const CsdResult& r) {
  const int n = parts.n;
  const int l = std::min(std::min(parts.row_parts[0], parts.row_parts[1]),
                         std::min(parts.col_parts[0], parts.col_parts[1]));
  REQUIRE(static_cast<int>(r.angles.size()) == l);
  for (double a : r.angles) {
    REQUIRE(a >= -1e-12);
    REQUIRE(a <= M_PI / 2 + 1e-12);
  }
  for (std::size_t t = 1; t < r.angles.size(); ++t)
    REQUIRE(std::cos(r.angles[t - 1]) >= std::cos(r.angles[t]) - 1e-12);
  REQUIRE(reconstruction_residual(g, parts, r) <= 1e-9 * n);
  REQUIRE(off_block_mass(r.left.matrix(), {parts.row_parts[0], parts.row_parts[1]}) <= 1e-10);
  REQUIRE(off_block_mass(r.right.matrix(), {parts.col_parts[0], parts.col_parts[1]}) <= 1e-10);
  check_angle_sv_correspondence(g, parts, r);
}

}  // namespace

TEST_CASE("cs_decompose: identity") {
  BipartitionPair parts{4, {2, 2}, {2, 2}};
  UnitaryMatrix g = UnitaryMatrix::from_matrix(ComplexMatrix::identity(4));
  CsdResult r = cs_decompose(g, parts);
  REQUIRE(r.angles.size() == 2);
  CHECK(r.angles[0] == doctest::Approx(0.0));
  CHECK(r.angles[1] == doctest::Approx(0.0));
  CHECK(reconstruction_residual(g, parts, r) <= 1e-12);
}

TEST_CASE("cs_decompose: 2x2 rotation gives angle pi/2") {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = -1.0;
  BipartitionPair parts{2, {1, 1}, {1, 1}};
  UnitaryMatrix g = UnitaryMatrix::from_matrix(m);
  CsdResult r = cs_decompose(g, parts);
  REQUIRE(r.angles.size() == 1);
  CHECK(r.angles[0] == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK(reconstruction_residual(g, parts, r) <= 1e-12);
}

TEST_CASE("cs_decompose: corner singular values are the cosines") {
  UnitaryMatrix g = haar_unitary(4, 42);
  BipartitionPair parts{4, {2, 2}, {2, 2}};
  CsdResult r = cs_decompose(g, parts);
  check_angle_sv_correspondence(g, parts, r, 1e-10);
  check_contract(g, parts, r);
}

TEST_CASE("cs_decompose: Haar reconstruction across partitions") {
  int done = 0;
  CounterRng pick(99);
  for (int n = 2; n <= 12; ++n) {
    for (int rep = 0; rep < 6; ++rep) {
      const int n1 = 1 + static_cast<int>(pick.next_u64() % (n - 1));
      const int p = 1 + static_cast<int>(pick.next_u64() % (n - 1));
      BipartitionPair parts{n, {n1, n - n1}, {p, n - p}};
      for (int s = 0; s < 8; ++s) {
        UnitaryMatrix g = haar_unitary(n, 7000 + 100 * n + 10 * rep + s);
        CsdResult r = cs_decompose(g, parts);
        check_contract(g, parts, r);
        ++done;
      }
    }
  }
  CHECK(done >= 500);
}

TEST_CASE("cs_decompose: degenerate inputs") {
  // identity at many partitions: all singular values are 1
  for (int n : {2, 4, 6, 9}) {
    for (int n1 = 1; n1 < n; ++n1) {
      for (int p : {1, n / 2, n - 1}) {
        if (p < 1 || p >= n) continue;
        BipartitionPair parts{n, {n1, n - n1}, {p, n - p}};
        UnitaryMatrix g = UnitaryMatrix::from_matrix(ComplexMatrix::identity(n));
        CsdResult r = cs_decompose(g, parts);
        CHECK(reconstruction_residual(g, parts, r) <= 1e-11);
      }
    }
  }
  // permutation-like: exact 0/1 singular values
  {
    ComplexMatrix m(4, 4);
    m(0, 2) = 1.0;
    m(1, 3) = 1.0;
    m(2, 0) = 1.0;
    m(3, 1) = 1.0;
    BipartitionPair parts{4, {2, 2}, {2, 2}};
    UnitaryMatrix g = UnitaryMatrix::from_matrix(m);
    CsdResult r = cs_decompose(g, parts);
    check_contract(g, parts, r);
  }
  // block-diagonal: corner block unitary, all cosines 1
  {
    UnitaryMatrix g = UnitaryMatrix::from_matrix(random_block_diagonal({3, 3}, 5));
    BipartitionPair parts{6, {3, 3}, {3, 3}};
    CsdResult r = cs_decompose(g, parts);
    check_contract(g, parts, r);
    for (double a : r.angles) CHECK(std::abs(a) <= 1e-9);
  }
  // repeated interior singular values from a crafted direct sum
  {
    ComplexMatrix m(4, 4);
    const double c = std::cos(0.6), s = std::sin(0.6);
    m(0, 0) = c;
    m(0, 3) = s;
    m(3, 0) = -s;
    m(3, 3) = c;
    m(1, 1) = c;
    m(1, 2) = s;
    m(2, 1) = -s;
    m(2, 2) = c;
    BipartitionPair parts{4, {2, 2}, {2, 2}};
    UnitaryMatrix g = UnitaryMatrix::from_matrix(m);
    CsdResult r = cs_decompose(g, parts);
    check_contract(g, parts, r);
    CHECK(r.angles[0] == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(r.angles[1] == doctest::Approx(0.6).epsilon(1e-10));
  }
}

TEST_CASE("cs_decompose: partition errors") {
  UnitaryMatrix g = haar_unitary(4, 0);
  CHECK_THROWS_AS(cs_decompose(g, BipartitionPair{4, {2, 2}, {3, 2}}), PartitionMismatch);
  CHECK_THROWS_AS(cs_decompose(g, BipartitionPair{5, {2, 3}, {2, 3}}), PartitionMismatch);
  CHECK_THROWS_AS(cs_decompose(g, BipartitionPair{4, {4, 0}, {2, 2}}), PartitionMismatch);
}

TEST_CASE("rank1 left: examples and general-path agreement") {
  {
    BipartitionPair parts{4, {1, 3}, {2, 2}};
    UnitaryMatrix g = UnitaryMatrix::from_matrix(ComplexMatrix::identity(4));
    CsdResult r = cs_decompose_rank1_left(g, parts);
    CHECK(r.angles[0] == doctest::Approx(0.0));
  }
  {
    // first row concentrated on the last coordinate: corner norm 0
    ComplexMatrix m(4, 4);
    m(0, 3) = 1.0;
    m(1, 0) = 1.0;
    m(2, 1) = 1.0;
    m(3, 2) = 1.0;
    BipartitionPair parts{4, {1, 3}, {2, 2}};
    CsdResult r = cs_decompose_rank1_left(UnitaryMatrix::from_matrix(m), parts);
    CHECK(r.angles[0] == doctest::Approx(M_PI / 2));
  }
  {
    UnitaryMatrix g = haar_unitary(5, 7);
    BipartitionPair parts{5, {1, 4}, {2, 3}};
    CsdResult direct = cs_decompose_rank1_left(g, parts);
    CsdResult general = cs_decompose(g, parts);
    REQUIRE(direct.angles.size() == 1);
    REQUIRE(general.angles.size() == 1);
    CHECK(std::abs(direct.angles[0] - general.angles[0]) <= 1e-10);
    CHECK(reconstruction_residual(g, parts, direct) <= 1e-10);
    CHECK(off_block_mass(direct.left.matrix(), {1, 4}) <= 1e-10);
    CHECK(off_block_mass(direct.right.matrix(), {2, 3}) <= 1e-10);
  }
  CHECK_THROWS_AS(
      cs_decompose_rank1_left(haar_unitary(4, 1), BipartitionPair{4, {2, 2}, {2, 2}}),
      PartitionMismatch);
}

TEST_CASE("rank1 right: examples and general-path agreement") {
  {
    BipartitionPair parts{4, {2, 2}, {3, 1}};
    CsdResult r =
        cs_decompose_rank1_right(UnitaryMatrix::from_matrix(ComplexMatrix::identity(4)), parts);
    CHECK(r.angles[0] == doctest::Approx(0.0));
  }
  {
    // last column supported entirely in the first row block
    ComplexMatrix m(4, 4);
    m(0, 3) = 1.0;
    m(1, 0) = 1.0;
    m(2, 1) = 1.0;
    m(3, 2) = 1.0;
    BipartitionPair parts{4, {2, 2}, {3, 1}};
    CsdResult r = cs_decompose_rank1_right(UnitaryMatrix::from_matrix(m), parts);
    CHECK(r.angles[0] == doctest::Approx(M_PI / 2));
  }
  {
    UnitaryMatrix g = haar_unitary(6, 11);
    BipartitionPair parts{6, {3, 3}, {5, 1}};
    CsdResult direct = cs_decompose_rank1_right(g, parts);
    CsdResult general = cs_decompose(g, parts);
    CHECK(std::abs(direct.angles[0] - general.angles[0]) <= 1e-10);
    CHECK(reconstruction_residual(g, parts, direct) <= 1e-10);
    CHECK(off_block_mass(direct.left.matrix(), {3, 3}) <= 1e-10);
    CHECK(off_block_mass(direct.right.matrix(), {5, 1}) <= 1e-10);
  }
  CHECK_THROWS_AS(
      cs_decompose_rank1_right(haar_unitary(4, 1), BipartitionPair{4, {2, 2}, {2, 2}}),
      PartitionMismatch);
}
