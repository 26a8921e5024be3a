#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cartan/charpoly.hpp"
#include "cartan/exact.hpp"
#include "cartan/matrix.hpp"
#include "cartan/triple.hpp"
#include "cartan/unitary.hpp"

namespace cartan {

// Cyclic index word i_0 -> ... -> i_l with i_0 = i_l and adjacent entries
// distinct. Block indices are 1-based.
struct LoopWord {
  std::vector<int> indices;

  void validate(int num_blocks) const {
    if (indices.size() < 3) throw InvalidLoop("loop needs length >= 2");
    if (indices.front() != indices.back()) throw InvalidLoop("loop must close");
    for (std::size_t a = 0; a < indices.size(); ++a) {
      if (indices[a] < 1 || indices[a] > num_blocks) throw InvalidLoop("loop index out of range");
      if (a > 0 && indices[a] == indices[a - 1]) throw InvalidLoop("adjacent loop entries equal");
    }
  }

  int length() const { return static_cast<int>(indices.size()) - 1; }
};

namespace detail {

inline std::vector<int> block_starts(const std::vector<int>& parts) {
  std::vector<int> s(parts.size() + 1, 0);
  for (std::size_t b = 0; b < parts.size(); ++b) s[b + 1] = s[b] + parts[b];
  return s;
}

}  // namespace detail

// P~_ij: the (i,j) block for i < j, the adjoint of the (j,i) block for i > j.
template <typename Matrix>
Matrix tilde_block(const Matrix& m, const std::vector<int>& parts, int i, int j) {
  if (i == j) throw DiagonalBlockRequested("tilde block is undefined on the diagonal");
  const int k = static_cast<int>(parts.size());
  if (i < 1 || j < 1 || i > k || j > k) throw IndexOutOfRange("block index out of range");
  const std::vector<int> start = detail::block_starts(parts);
  if (m.rows() != start.back() || m.cols() != start.back())
    throw ShapeMismatch("partition does not match matrix");
  if (i < j) return m.block(start[i - 1], start[j - 1], parts[i - 1], parts[j - 1]);
  return m.block(start[j - 1], start[i - 1], parts[j - 1], parts[i - 1]).adjoint();
}

// A_{i_0 ... i_l}(P): product of tilde blocks along the loop.
template <typename Matrix>
Matrix loop_product(const Matrix& m, const std::vector<int>& parts, const LoopWord& loop) {
  loop.validate(static_cast<int>(parts.size()));
  Matrix acc = tilde_block(m, parts, loop.indices[0], loop.indices[1]);
  for (std::size_t a = 2; a < loop.indices.size(); ++a)
    acc = acc * tilde_block(m, parts, loop.indices[a - 1], loop.indices[a]);
  return acc;
}

inline std::pair<PolynomialCoefficients, bool> loop_charpoly_is_real(
    const ComplexMatrix& m, const std::vector<int>& parts, const LoopWord& loop,
    const Tolerances& tol = default_tolerances()) {
  PolynomialCoefficients p = char_poly(loop_product(m, parts, loop));
  double worst = 0.0;
  for (const cplx& c : p.coeffs) worst = std::max(worst, std::abs(c.imag()));
  return {std::move(p), worst <= tol.real};
}

inline std::pair<ExactPolynomial, bool> loop_charpoly_is_real(const GaussianRationalMatrix& m,
                                                              const std::vector<int>& parts,
                                                              const LoopWord& loop) {
  ExactPolynomial p = char_poly_exact(loop_product(m, parts, loop));
  const bool real = p.is_real();
  return {std::move(p), real};
}

// Q = [X, J] for block-diagonal J; exact.
inline GaussianRationalMatrix commutator_blocks(const GaussianRationalMatrix& x,
                                                const GaussianRationalMatrix& j,
                                                const std::vector<int>& parts) {
  const std::vector<int> start = detail::block_starts(parts);
  if (x.rows() != x.cols() || j.rows() != j.cols() || x.rows() != j.rows() ||
      x.rows() != start.back())
    throw ShapeMismatch("commutator shapes inconsistent with partition");
  for (int r = 0; r < j.rows(); ++r)
    for (int c = 0; c < j.cols(); ++c) {
      bool same_block = false;
      for (std::size_t b = 0; b + 1 < start.size(); ++b)
        if (r >= start[b] && r < start[b + 1] && c >= start[b] && c < start[b + 1])
          same_block = true;
      if (!same_block && !j(r, c).is_zero())
        throw ShapeMismatch("J must be block diagonal for the partition");
    }
  return x * j - j * x;
}

struct EpsilonSearchResult {
  double epsilon = 0.0;
  PolynomialCoefficients charpoly_numeric;   // of the loop product at P(epsilon)
  std::vector<cplx> rescaled;                // coefficient r scaled by epsilon^{-r l}
  int flagged_index = 0;
};

// Find epsilon = 2^{-j} such that the loop characteristic polynomial of
// Ad(exp(eps X)) J has the flagged coefficient visibly non-real after the
// epsilon^{r l} rescaling.
inline EpsilonSearchResult epsilon_search(const GaussianRationalMatrix& j_exact,
                                          const GaussianRationalMatrix& x_exact,
                                          const std::vector<int>& parts, const LoopWord& loop,
                                          const Tolerances& tol = default_tolerances()) {
  const GaussianRationalMatrix q = commutator_blocks(x_exact, j_exact, parts);
  auto [exact_poly, exact_real] = loop_charpoly_is_real(q, parts, loop);
  if (exact_real)
    throw PreconditionViolated("epsilon_search needs a non-real exact loop polynomial");
  int flagged = 0;
  for (std::size_t r = 1; r < exact_poly.coeffs.size(); ++r)
    if (!exact_poly.coeffs[r].is_real()) {
      flagged = static_cast<int>(r);
      break;
    }
  const ComplexMatrix xc = x_exact.to_complex();
  const ComplexMatrix jc = j_exact.to_complex();
  const int ell = loop.length();
  for (int jj = 1; jj <= 40; ++jj) {
    const double eps = std::ldexp(1.0, -jj);
    const ComplexMatrix u = expm_skew_hermitian(xc * cplx(eps, 0.0), tol).matrix();
    const ComplexMatrix p_eps = u * jc * u.adjoint();
    PolynomialCoefficients poly = char_poly(loop_product(p_eps, parts, loop));
    EpsilonSearchResult res;
    res.epsilon = eps;
    res.rescaled.resize(poly.coeffs.size());
    for (std::size_t r = 0; r < poly.coeffs.size(); ++r)
      res.rescaled[r] = poly.coeffs[r] * std::pow(eps, -static_cast<double>(r) * ell);
    res.flagged_index = flagged;
    if (std::abs(res.rescaled[flagged].imag()) >= tol.cert) {
      res.charpoly_numeric = std::move(poly);
      return res;
    }
  }
  throw SearchExhausted("no epsilon in 2^-1..2^-40 reached the certificate threshold");
}

// Machine-checkable evidence that L * O(n) * H is a proper subset of U(n).
struct NonSurjectivityCertificate {
  TripleSpec spec;                 // the spec as given
  bool swapped = false;            // built on the side-swapped spec
  std::vector<int> partition;      // L-partition carrying J, X and the loop
  std::vector<int> multiplicities; // H-partition realized by the values of J
  std::string witness;             // which proposition produced it
  GaussianRationalMatrix j_matrix;
  GaussianRationalMatrix x_matrix;
  LoopWord loop;
  GaussianRational z;
  ExactPolynomial charpoly_exact;
  double epsilon = 0.0;
  PolynomialCoefficients charpoly_numeric;
  int flagged_index = 0;
};

namespace detail {

inline std::vector<int> coarsen_trailing(const std::vector<int>& parts, int target) {
  std::vector<int> out(parts.begin(), parts.begin() + target - 1);
  int tail = 0;
  for (std::size_t b = target - 1; b < parts.size(); ++b) tail += parts[b];
  out.push_back(tail);
  return out;
}

inline GaussianRationalMatrix skew_complete(GaussianRationalMatrix x,
                                            const std::vector<int>& parts) {
  const std::vector<int> start = block_starts(parts);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      GaussianRationalMatrix blk = x.block(start[i], start[j], parts[i], parts[j]);
      GaussianRationalMatrix neg = blk.adjoint();
      for (int r = 0; r < neg.rows(); ++r)
        for (int c = 0; c < neg.cols(); ++c) neg(r, c) = -neg(r, c);
      x.set_block(start[j], start[i], neg);
    }
  return x;
}

inline void require_nonreal_z(const GaussianRational& z) {
  if (z.is_real()) throw PreconditionViolated("witness parameter z must be non-real");
}

inline NonSurjectivityCertificate finish_certificate(NonSurjectivityCertificate cert,
                                                     const Tolerances& tol) {
  const GaussianRationalMatrix q = commutator_blocks(cert.x_matrix, cert.j_matrix, cert.partition);
  auto [poly, real] = loop_charpoly_is_real(q, cert.partition, cert.loop);
  if (real) throw PreconditionViolated("witness produced a real loop polynomial");
  cert.charpoly_exact = std::move(poly);
  EpsilonSearchResult es =
      epsilon_search(cert.j_matrix, cert.x_matrix, cert.partition, cert.loop, tol);
  cert.epsilon = es.epsilon;
  cert.charpoly_numeric = std::move(es.charpoly_numeric);
  cert.flagged_index = es.flagged_index;
  return cert;
}

}  // namespace detail

// First proposition: both sides coarsened to three blocks.
inline NonSurjectivityCertificate witness_three_by_three(
    const TripleSpec& spec, const GaussianRational& z = GaussianRational::i(),
    const Tolerances& tol = default_tolerances()) {
  spec.validate();
  detail::require_nonreal_z(z);
  if (spec.k() < 3 || spec.l() < 3)
    throw SpecActuallySurjective("three-by-three witness needs k >= 3 and l >= 3");
  NonSurjectivityCertificate cert;
  cert.spec = spec;
  cert.witness = "three_by_three";
  cert.z = z;
  cert.partition = detail::coarsen_trailing(spec.l_parts, 3);
  cert.multiplicities = detail::coarsen_trailing(spec.h_parts, 3);
  const int n = spec.n;
  const int n1 = cert.partition[0], n2 = cert.partition[1];
  const auto& m = cert.multiplicities;
  // diagonal J: anchors 1, 2, 3 at the first position of each block, the
  // remaining multiplicities filled in order
  cert.j_matrix = GaussianRationalMatrix(n, n);
  {
    std::vector<int> values;
    values.push_back(0);  // placeholder for position 0
    std::vector<int> rest;
    for (int v = 1; v <= 3; ++v)
      for (int t = 0; t < m[v - 1] - 1; ++t) rest.push_back(v);
    std::vector<int> diag(n, 0);
    diag[0] = 1;
    diag[n1] = 2;
    diag[n1 + n2] = 3;
    std::size_t next = 0;
    for (int pos = 0; pos < n; ++pos) {
      if (pos == 0 || pos == n1 || pos == n1 + n2) continue;
      diag[pos] = rest[next++];
    }
    for (int pos = 0; pos < n; ++pos) cert.j_matrix(pos, pos) = GaussianRational(diag[pos]);
  }
  cert.x_matrix = GaussianRationalMatrix(n, n);
  const std::vector<int> start = detail::block_starts(cert.partition);
  cert.x_matrix(start[0], start[1]) = GaussianRational(1);
  cert.x_matrix(start[1], start[2]) = GaussianRational(1);
  cert.x_matrix(start[0], start[2]) = z;
  cert.x_matrix = detail::skew_complete(std::move(cert.x_matrix), cert.partition);
  cert.loop = LoopWord{{1, 2, 3, 1}};
  return detail::finish_certificate(std::move(cert), tol);
}

// Second proposition: k = 3, all parts >= 2, min(p, q) >= 3.
inline NonSurjectivityCertificate witness_k3_pq_large(
    const TripleSpec& spec, const GaussianRational& z = GaussianRational::i(),
    const Tolerances& tol = default_tolerances()) {
  spec.validate();
  detail::require_nonreal_z(z);
  if (spec.k() != 3 || spec.min_l_part() < 2 || spec.l() != 2 || spec.min_h_part() < 3)
    throw PreconditionViolated("needs k=3, parts >= 2, l=2 and min(p,q) >= 3");
  NonSurjectivityCertificate cert;
  cert.spec = spec;
  cert.witness = "k3_pq_large";
  cert.z = z;
  cert.partition = spec.l_parts;
  cert.multiplicities = spec.h_parts;
  const int n = spec.n;
  const int p = spec.h_parts[0];
  const auto& np = cert.partition;
  // positive split p = p1+p2+p3, q = q1+q2+q3 with p_i + q_i = n_i:
  // one each, remainder greedily subject to q_i >= 1
  std::vector<int> ps(3, 1);
  int rem = p - 3;
  for (int i = 0; i < 3 && rem > 0; ++i) {
    const int take = std::min(rem, np[i] - 2);
    ps[i] += take;
    rem -= take;
  }
  if (rem != 0) throw PreconditionViolated("no positive (p_i, q_i) split exists");
  cert.j_matrix = GaussianRationalMatrix(n, n);
  const std::vector<int> start = detail::block_starts(cert.partition);
  for (int b = 0; b < 3; ++b)
    for (int t = 0; t < ps[b]; ++t) cert.j_matrix(start[b] + t, start[b] + t) = GaussianRational(1);
  cert.x_matrix = GaussianRationalMatrix(n, n);
  auto corner_pair = [&](int bi, int bj, const GaussianRational& low_left) {
    cert.x_matrix(start[bi], start[bj] + np[bj] - 1) = GaussianRational(1);
    cert.x_matrix(start[bi] + np[bi] - 1, start[bj]) = low_left;
  };
  corner_pair(0, 1, GaussianRational(1));
  corner_pair(1, 2, GaussianRational(1));
  corner_pair(0, 2, z);
  cert.x_matrix = detail::skew_complete(std::move(cert.x_matrix), cert.partition);
  cert.loop = LoopWord{{1, 2, 3, 1}};
  return detail::finish_certificate(std::move(cert), tol);
}

// Third proposition: min(p, q) = 2 and k >= 4.
inline NonSurjectivityCertificate witness_k4_pq2(
    const TripleSpec& spec, const GaussianRational& z = GaussianRational::i(),
    const Tolerances& tol = default_tolerances()) {
  spec.validate();
  detail::require_nonreal_z(z);
  if (spec.l() != 2 || spec.min_h_part() != 2 || spec.k() < 4)
    throw PreconditionViolated("needs l=2, min(p,q)=2 and k >= 4");
  NonSurjectivityCertificate cert;
  cert.spec = spec;
  cert.witness = "k4_pq2";
  cert.z = z;
  cert.partition = detail::coarsen_trailing(spec.l_parts, 4);
  cert.multiplicities = {2, spec.n - 2};
  const int n = spec.n;
  const std::vector<int> start = detail::block_starts(cert.partition);
  cert.j_matrix = GaussianRationalMatrix(n, n);
  cert.j_matrix(start[0], start[0]) = GaussianRational(1);
  cert.j_matrix(start[1], start[1]) = GaussianRational(1);
  cert.x_matrix = GaussianRationalMatrix(n, n);
  cert.x_matrix(start[0], start[2]) = GaussianRational(1);  // row vector a
  cert.x_matrix(start[1], start[2]) = GaussianRational(1);  // row vector b
  cert.x_matrix(start[0], start[3]) = GaussianRational(1);  // row vector c
  cert.x_matrix(start[1], start[3]) = z;                    // row vector d
  cert.x_matrix = detail::skew_complete(std::move(cert.x_matrix), cert.partition);
  cert.loop = LoopWord{{1, 3, 2, 4, 1}};
  return detail::finish_certificate(std::move(cert), tol);
}

// Fourth proposition: min(p, q) >= 3 and k >= 4, with the three-way proof
// split; the first two branches delegate by block coarsening.
inline NonSurjectivityCertificate witness_k4_pq_large(
    const TripleSpec& spec, const GaussianRational& z = GaussianRational::i(),
    const Tolerances& tol = default_tolerances()) {
  spec.validate();
  detail::require_nonreal_z(z);
  if (spec.l() != 2 || spec.min_h_part() < 3 || spec.k() < 4)
    throw PreconditionViolated("needs l=2, min(p,q) >= 3 and k >= 4");
  TripleSpec sorted = spec;
  std::sort(sorted.l_parts.begin(), sorted.l_parts.end());
  const int k = sorted.k();
  if (k >= 5 || sorted.l_parts[2] > 1) {
    std::vector<int> coarse;
    if (k >= 5) {
      coarse = {sorted.l_parts[0] + sorted.l_parts[1], sorted.l_parts[2] + sorted.l_parts[3], 0};
      for (int b = 4; b < k; ++b) coarse[2] += sorted.l_parts[b];
    } else {
      coarse = {sorted.l_parts[0] + sorted.l_parts[1], sorted.l_parts[2], sorted.l_parts[3]};
    }
    TripleSpec delegated{spec.n, coarse, spec.h_parts};
    NonSurjectivityCertificate cert = witness_k3_pq_large(delegated, z, tol);
    cert.spec = spec;
    cert.witness = "k4_pq_large(coarsened:" + cert.witness + ")";
    return cert;
  }
  // k = 4 with n1 = n2 = n3 = 1
  NonSurjectivityCertificate cert;
  cert.spec = spec;
  cert.witness = "k4_pq_large";
  cert.z = z;
  cert.partition = sorted.l_parts;  // (1, 1, 1, n-3)
  cert.multiplicities = spec.h_parts;
  const int n = spec.n, p = spec.h_parts[0], q = spec.h_parts[1];
  cert.j_matrix = GaussianRationalMatrix(n, n);
  for (int t = 0; t < p; ++t) cert.j_matrix(t, t) = GaussianRational(1);
  // Y in M(q, p): columns v1 = (1,1,0..), v2 = (1,z,0..), v3 = (1,0,..)
  GaussianRationalMatrix y(q, p);
  y(0, 0) = GaussianRational(1);
  y(1, 0) = GaussianRational(1);
  y(0, 1) = GaussianRational(1);
  y(1, 1) = z;
  y(0, 2) = GaussianRational(1);
  cert.x_matrix = GaussianRationalMatrix(n, n);
  cert.x_matrix.set_block(p, 0, y);
  {
    GaussianRationalMatrix neg = y.adjoint();
    for (int r = 0; r < neg.rows(); ++r)
      for (int c = 0; c < neg.cols(); ++c) neg(r, c) = -neg(r, c);
    cert.x_matrix.set_block(0, p, neg);
  }
  cert.loop = LoopWord{{1, 4, 2, 4, 3, 4, 1}};
  return detail::finish_certificate(std::move(cert), tol);
}

// Dispatch mirroring the propositions' coverage of the complement of the
// classification table.
inline NonSurjectivityCertificate certify_nonsurjective(
    const TripleSpec& spec, const GaussianRational& z = GaussianRational::i(),
    const Tolerances& tol = default_tolerances()) {
  spec.validate();
  if (classify(spec).c != Case::NotSurjective)
    throw SpecActuallySurjective("spec admits a decomposition; nothing to certify");
  const int k = spec.k(), l = spec.l();
  if (k >= 3 && l >= 3) return witness_three_by_three(spec, z, tol);
  if (l == 2) {
    const int M = spec.min_h_part();
    if (k == 3) return witness_k3_pq_large(spec, z, tol);
    if (k >= 4 && M == 2) return witness_k4_pq2(spec, z, tol);
    if (k >= 4 && M >= 3) return witness_k4_pq_large(spec, z, tol);
    throw DispatchGap("uncovered non-surjective spec with l = 2");
  }
  if (k == 2) {
    NonSurjectivityCertificate cert = certify_nonsurjective(spec.swapped(), z, tol);
    cert.spec = spec;
    cert.swapped = true;
    return cert;
  }
  throw DispatchGap("uncovered non-surjective spec");
}

}  // namespace cartan
