#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "cartan/csd.hpp"
#include "cartan/matrix.hpp"
#include "cartan/triple.hpp"
#include "cartan/unitary.hpp"

namespace cartan {

struct DecompositionResult {
  UnitaryMatrix left;
  PlaneRotationWord word;
  UnitaryMatrix right;
  CaseLabel label;
  double residual = 0.0;
};

namespace detail {

struct FactorCore {
  ComplexMatrix left;
  std::vector<RotationLetter> word;
  ComplexMatrix right;
};

// Alternating rank-1 stitches through the chain of symmetric subproblems.
// Decomposes g with respect to a 3-block row partition carrying a designated
// unit block and the 2-block column partition (p, q). Works on index sets, so
// the unit block may sit in any position. Letters are emitted so that the
// final word reads C-letters in stage order, then B-letters reversed.
inline FactorCore herringbone_engine(const ComplexMatrix& g, const std::array<int, 3>& lparts,
                                     int unit_idx, int p, int q) {
  const int n = lparts[0] + lparts[1] + lparts[2];
  if (n != p + q) throw PartitionMismatch("herringbone engine: partition sums differ");
  if (lparts[unit_idx] != 1) throw PartitionMismatch("herringbone engine: unit block is not 1");
  std::vector<int> lpart(n), hpart(n);
  {
    int c = 0;
    for (int b = 0; b < 3; ++b)
      for (int t = 0; t < lparts[b]; ++t) lpart[c++] = b;
    for (c = 0; c < n; ++c) hpart[c] = (c < p) ? 0 : 1;
  }
  // the two non-unit row parts, in order of appearance
  const int part_a = (unit_idx == 0) ? 1 : 0;
  const int part_b = (unit_idx == 2) ? 1 : 2;

  std::vector<bool> alive(n, true);
  auto alive_in = [&](auto pred) {
    std::vector<int> out;
    for (int c = 0; c < n; ++c)
      if (alive[c] && pred(c)) out.push_back(c);
    return out;
  };
  auto farthest = [](const std::vector<int>& set, int from) {
    int best = set.front();
    for (int c : set)
      if (std::abs(c - from) > std::abs(best - from) ||
          (std::abs(c - from) == std::abs(best - from) && c > best))
        best = c;
    return best;
  };

  int u = 0;
  for (int c = 0; c < n; ++c)
    if (lpart[c] == unit_idx) u = c;

  FactorCore out;
  out.left = ComplexMatrix::identity(n);
  out.right = ComplexMatrix::identity(n);
  ComplexMatrix r = g;
  std::vector<RotationLetter> b_letters, c_letters;

  for (;;) {
    // even stitch, consumes u
    std::vector<int> opposite = alive_in([&](int c) { return hpart[c] != hpart[u]; });
    if (opposite.empty()) {
      out.right = r * out.right;  // residual sits inside one H block
      break;
    }
    const int v = farthest(opposite, u);
    std::vector<int> setP = alive_in([&](int c) { return hpart[c] == 0; });
    std::vector<int> setQ = alive_in([&](int c) { return hpart[c] == 1; });
    Rank1Stitch even = rank1_left_stitch(r, setP, setQ, u, v);
    b_letters.push_back(make_letter(u + 1, v + 1, even.theta));
    out.right = even.right * out.right;
    r = std::move(even.left);
    alive[u] = false;

    // odd stitch, consumes v
    std::vector<int> setA = alive_in([&](int c) { return lpart[c] == part_a; });
    std::vector<int> setB = alive_in([&](int c) { return lpart[c] == part_b; });
    if (setA.empty() || setB.empty()) {
      out.left = out.left * r;  // residual sits inside one L block
      break;
    }
    const bool v_in_a = lpart[v] == part_a;
    const int next_u = farthest(v_in_a ? setB : setA, v);
    Rank1Stitch odd = rank1_right_stitch(r, setA, setB, next_u, v);
    c_letters.push_back(make_letter(next_u + 1, v + 1, odd.theta));
    out.left = out.left * odd.left;
    r = std::move(odd.right);
    alive[v] = false;
    u = next_u;
  }
  out.word = std::move(c_letters);
  out.word.insert(out.word.end(), b_letters.rbegin(), b_letters.rend());
  return out;
}

inline int pick_unit_block(const std::vector<int>& parts) {
  if (parts[0] == 1) return 0;
  if (parts[1] == 1) return 1;
  if (parts[2] == 1) return 2;
  throw PartitionMismatch("case I needs a unit block");
}

// Case I, normalized: k = 3 with a unit block, l = 2.
inline FactorCore decompose_case1_core(const ComplexMatrix& g, const TripleSpec& s) {
  const std::array<int, 3> lp{s.l_parts[0], s.l_parts[1], s.l_parts[2]};
  return herringbone_engine(g, lp, pick_unit_block(s.l_parts), s.h_parts[0], s.h_parts[1]);
}

// Case II, normalized: k = 3, min part >= 2, h-parts (2, q).
inline FactorCore decompose_case2_core(const ComplexMatrix& g, const TripleSpec& s,
                                       const Tolerances& tol) {
  const int n = s.n, n1 = s.l_parts[0], n2 = s.l_parts[1], n3 = s.l_parts[2];
  const int m = n2 + n3;
  // Step 1: symmetric decomposition against U(n1) x U(n2+n3); two A1 angles.
  BipartitionPair step1{n, {n1, m}, {2, n - 2}};
  CsdResult csd0 = cs_decompose(UnitaryMatrix::from_matrix(g, tol), step1, tol);
  ComplexMatrix gamma1 = csd0.left.matrix().block(0, 0, n1, n1);
  ComplexMatrix gamma2 = csd0.left.matrix().block(n1, n1, m, m);

  // Step 2: the U(n2+n3) factor against (U(n2) x U(n3)) \ . / (U(m-2) x U(1) x U(1)),
  // run through the herringbone engine on the inverse.
  FactorCore eng = herringbone_engine(gamma2.adjoint(), {m - 2, 1, 1}, 2, n2, n3);
  // gamma2 = eng.right^* . reversed-inverted word . eng.left^*
  std::vector<RotationLetter> wt;
  for (auto it = eng.word.rbegin(); it != eng.word.rend(); ++it)
    wt.push_back({it->i, it->j, -it->theta});

  const ComplexMatrix lambda_adj = eng.left.adjoint();
  const cplx d1 = lambda_adj(m - 2, m - 2);  // phase at ambient coordinate n-1 (1-based)
  const cplx d2 = lambda_adj(m - 1, m - 1);  // phase at ambient coordinate n (1-based)

  FactorCore out;
  out.left = ComplexMatrix(n, n);
  {
    ComplexMatrix g1 = gamma1;
    for (int r = 0; r < n1; ++r) {
      g1(r, 0) *= std::conj(d2);
      g1(r, 1) *= std::conj(d1);
    }
    out.left.set_block(0, 0, g1);
    out.left.set_block(n1, n1, eng.right.adjoint());
  }
  for (const RotationLetter& l : wt)
    out.word.push_back({l.i + n1, l.j + n1, l.theta});
  out.word.push_back({1, n, 0.0});
  out.word.push_back({2, n - 1, 0.0});
  out.word[out.word.size() - 2].theta = csd0.angles[0];
  out.word[out.word.size() - 1].theta = csd0.angles[1];

  ComplexMatrix vhat = ComplexMatrix::identity(n);
  vhat.set_block(n1, n1, lambda_adj.block(0, 0, m - 2, m - 2));
  ComplexMatrix delta = ComplexMatrix::identity(n);
  delta(0, 0) = d2;
  delta(1, 1) = d1;
  delta(n - 2, n - 2) = d1;
  delta(n - 1, n - 1) = d2;
  out.right = vhat * delta * csd0.right.matrix();
  return out;
}

// Case III, normalized: h-parts (1, n-1). Spherical-coordinate solve on the
// block norms of the first column.
inline FactorCore decompose_case3_core(const ComplexMatrix& g, const TripleSpec& s) {
  const int n = s.n, k = s.k();
  std::vector<int> start(k + 1, 0);
  for (int b = 0; b < k; ++b) start[b + 1] = start[b] + s.l_parts[b];
  std::vector<double> a(k, 0.0);
  for (int b = 0; b < k; ++b) {
    double t = 0.0;
    for (int r = start[b]; r < start[b + 1]; ++r) t += std::norm(g(r, 0));
    a[b] = std::sqrt(t);
  }
  std::vector<double> prefix(k + 1, 0.0);  // prefix[j] = norm of (a_1..a_j)
  for (int j = 1; j <= k; ++j) prefix[j] = std::hypot(prefix[j - 1], a[j - 1]);
  std::vector<double> theta(k - 1, 0.0);
  for (int j = k - 1; j >= 1; --j) {
    if (prefix[j + 1] <= 0.0)
      theta[j - 1] = 0.0;  // undetermined angles default to zero
    else
      theta[j - 1] = std::atan2(a[j] / prefix[j + 1], prefix[j] / prefix[j + 1]);
  }
  FactorCore out;
  out.left = ComplexMatrix::identity(n);
  for (int b = 0; b < k; ++b) {
    if (a[b] <= 1e-290) continue;  // zero block keeps the identity factor
    std::vector<int> idx(s.l_parts[b]);
    std::iota(idx.begin(), idx.end(), start[b]);
    std::vector<cplx> col(s.l_parts[b]);
    for (int t = 0; t < s.l_parts[b]; ++t) col[t] = g(start[b] + t, 0) / a[b];
    place_unitary_with_column(out.left, idx, start[b], col);
  }
  for (int j = 1; j < k; ++j) out.word.push_back({1, start[j] + 1, -theta[j - 1]});
  PlaneRotationWord w{n, out.word};
  out.right = (out.left * w.eval()).adjoint() * g;
  return out;
}

inline FactorCore dispatch_core(const ComplexMatrix& g, const TripleSpec& s, Case base,
                                const Tolerances& tol) {
  switch (base) {
    case Case::Zero: {
      BipartitionPair parts{s.n, {s.l_parts[0], s.l_parts[1]}, {s.h_parts[0], s.h_parts[1]}};
      CsdResult c = cs_decompose(UnitaryMatrix::from_matrix(g, tol), parts, tol);
      return {c.left.matrix(), csd_word(s.n, c.angles).letters, c.right.matrix()};
    }
    case Case::I:
      return decompose_case1_core(g, s);
    case Case::II:
      return decompose_case2_core(g, s, tol);
    case Case::III:
      return decompose_case3_core(g, s);
    default:
      throw DispatchGap("no constructive case for this label");
  }
}

inline DecompositionResult package_result(detail::FactorCore core, const UnitaryMatrix& g,
                                          CaseLabel label, const Tolerances& tol) {
  DecompositionResult out;
  out.word = PlaneRotationWord{g.size(), std::move(core.word)};
  out.residual = (core.left * out.word.eval() * core.right - g.matrix()).frobenius_norm();
  out.left = UnitaryMatrix::from_matrix(std::move(core.left), tol);
  out.right = UnitaryMatrix::from_matrix(std::move(core.right), tol);
  out.label = label;
  return out;
}

}  // namespace detail

// Direct Case I entry point on an already normalized spec: k = 3 with a unit
// block, l = 2. The general decompose() handles normalization.
inline DecompositionResult decompose_case1(const UnitaryMatrix& g, const TripleSpec& spec,
                                           const Tolerances& tol = default_tolerances()) {
  spec.validate();
  if (spec.k() != 3 || spec.l() != 2 || spec.min_l_part() != 1)
    throw PartitionMismatch("case I needs k = 3 with a unit block and l = 2");
  return detail::package_result(detail::decompose_case1_core(g.matrix(), spec), g,
                                CaseLabel{Case::I, false, false}, tol);
}

// Direct Case II entry point: k = 3, all parts >= 2, h-parts (2, q).
inline DecompositionResult decompose_case2(const UnitaryMatrix& g, const TripleSpec& spec,
                                           const Tolerances& tol = default_tolerances()) {
  spec.validate();
  if (spec.k() != 3 || spec.min_l_part() < 2 || spec.l() != 2 || spec.h_parts[0] != 2)
    throw PartitionMismatch("case II needs k = 3, parts >= 2 and h-parts (2, q)");
  return detail::package_result(detail::decompose_case2_core(g.matrix(), spec, tol), g,
                                CaseLabel{Case::II, false, false}, tol);
}

// Direct Case III entry point: h-parts (1, n-1), any k >= 2.
inline DecompositionResult decompose_case3(const UnitaryMatrix& g, const TripleSpec& spec,
                                           const Tolerances& tol = default_tolerances()) {
  spec.validate();
  if (spec.l() != 2 || spec.h_parts[0] != 1)
    throw PartitionMismatch("case III needs h-parts (1, n-1)");
  return detail::package_result(detail::decompose_case3_core(g.matrix(), spec), g,
                                CaseLabel{Case::III, false, false}, tol);
}

// Generalized Cartan decomposition g = left * eval(word) * right.
inline DecompositionResult decompose(const UnitaryMatrix& g, const TripleSpec& spec,
                                     const Tolerances& tol = default_tolerances()) {
  spec.validate();
  if (g.size() != spec.n) throw ShapeMismatch("matrix size does not match spec");
  const CaseLabel label = classify(spec);
  if (label.c == Case::NotSurjective)
    throw NotSurjectiveSpec("spec fails the classification; certificates apply instead");

  ComplexMatrix work = g.matrix();
  TripleSpec s = spec;
  if (label.swapped) {
    work = work.adjoint();
    s = s.swapped();
  }
  if (label.flipped) {
    work = detail::reverse_conjugate(work);
    s = s.flipped();
  }
  detail::FactorCore core = detail::dispatch_core(work, s, unprimed(label.c), tol);
  const int n = spec.n;
  if (label.flipped) {
    core.left = detail::reverse_conjugate(core.left);
    core.right = detail::reverse_conjugate(core.right);
    for (RotationLetter& l : core.word) {
      RotationLetter m = make_letter(n + 1 - l.i, n + 1 - l.j, l.theta);
      l = m;
    }
  }
  if (label.swapped) {
    ComplexMatrix new_left = core.right.adjoint();
    core.right = core.left.adjoint();
    core.left = std::move(new_left);
    std::reverse(core.word.begin(), core.word.end());
    for (RotationLetter& l : core.word) l.theta = -l.theta;
  }
  DecompositionResult out;
  out.word = PlaneRotationWord{n, std::move(core.word)};
  const ComplexMatrix b = out.word.eval();
  out.residual = (core.left * b * core.right - g.matrix()).frobenius_norm();
  out.left = UnitaryMatrix::from_matrix(std::move(core.left), tol);
  out.right = UnitaryMatrix::from_matrix(std::move(core.right), tol);
  out.label = label;
  return out;
}

struct VerificationReport {
  double residual = 0.0;
  double left_off_block = 0.0;
  double right_off_block = 0.0;
  double word_orthogonality = 0.0;
  int word_length = 0;
  int expected_word_length = 0;
  bool planes_in_range = false;
  bool residual_ok = false;
  bool left_ok = false;
  bool right_ok = false;
  bool orthogonality_ok = false;
  bool length_ok = false;
  bool pass = false;
};

// Pure recomputation against the spec; trusts nothing inside the result.
inline VerificationReport verify(const UnitaryMatrix& g, const TripleSpec& spec,
                                 const DecompositionResult& result,
                                 const Tolerances& tol = default_tolerances()) {
  spec.validate();
  const int n = spec.n;
  if (g.size() != n || result.left.size() != n || result.right.size() != n ||
      result.word.n != n)
    throw ShapeMismatch("verify: inconsistent shapes");
  VerificationReport rep;
  rep.planes_in_range = true;
  for (const RotationLetter& l : result.word.letters)
    if (!(1 <= l.i && l.i < l.j && l.j <= n)) rep.planes_in_range = false;
  const ComplexMatrix b = rep.planes_in_range ? result.word.eval() : ComplexMatrix::identity(n);
  rep.word_orthogonality = unitarity_defect(b);
  rep.residual = (result.left.matrix() * b * result.right.matrix() - g.matrix()).frobenius_norm();
  rep.left_off_block = off_block_mass(result.left.matrix(), spec.l_parts);
  rep.right_off_block = off_block_mass(result.right.matrix(), spec.h_parts);
  rep.word_length = static_cast<int>(result.word.letters.size());
  const CaseLabel label = classify(spec);
  rep.expected_word_length =
      label.c == Case::NotSurjective ? -1 : b_shape(label.c, spec).length;
  rep.residual_ok = rep.residual <= tol.residual * n;
  rep.left_ok = rep.left_off_block <= tol.membership;
  rep.right_ok = rep.right_off_block <= tol.membership;
  rep.orthogonality_ok = rep.word_orthogonality <= tol.orthogonal;
  rep.length_ok = rep.word_length == rep.expected_word_length;
  rep.pass = rep.planes_in_range && rep.residual_ok && rep.left_ok && rep.right_ok &&
             rep.orthogonality_ok && rep.length_ok;
  return rep;
}

}  // namespace cartan
