#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "cartan/matrix.hpp"
#include "cartan/qr.hpp"
#include "cartan/svd.hpp"
#include "cartan/unitary.hpp"

namespace cartan {

// Row partition (n1, n2) and column partition (p, q) of U(n).
struct BipartitionPair {
  int n = 0;
  std::array<int, 2> row_parts{};
  std::array<int, 2> col_parts{};

  void validate() const {
    if (row_parts[0] < 1 || row_parts[1] < 1 || col_parts[0] < 1 || col_parts[1] < 1)
      throw PartitionMismatch("all four parts must be positive");
    if (row_parts[0] + row_parts[1] != n || col_parts[0] + col_parts[1] != n)
      throw PartitionMismatch("parts must sum to n");
  }
};

// g = left * b(angles) * right with b(angles) the product of rotations in the
// anti-diagonal planes (i, n+1-i). Angles in [0, pi/2], cosines descending.
struct CsdResult {
  UnitaryMatrix left;
  std::vector<double> angles;
  UnitaryMatrix right;
  double residual = 0.0;
};

inline PlaneRotationWord csd_word(int n, const std::vector<double>& angles) {
  PlaneRotationWord w;
  w.n = n;
  for (std::size_t i = 0; i < angles.size(); ++i)
    w.letters.push_back({static_cast<int>(i) + 1, n - static_cast<int>(i), angles[i]});
  return w;
}

namespace detail {

// Unitary on the index set I (within an n x n identity) whose row at anchor
// equals the given unit row vector (values indexed like I).
inline void place_unitary_with_row(ComplexMatrix& dst, const std::vector<int>& idx, int anchor,
                                   const std::vector<cplx>& row) {
  const int k = static_cast<int>(idx.size());
  ComplexMatrix x(k, 1);
  for (int c = 0; c < k; ++c) x(c, 0) = std::conj(row[c]);
  ComplexMatrix y = orthonormal_complement(x);
  int apos = 0;
  while (idx[apos] != anchor) ++apos;
  int t = 0;
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      dst(idx[r], idx[c]) = (r == apos) ? row[c] : std::conj(y(c, t));
    }
    if (r != apos) ++t;
  }
}

inline void place_unitary_with_column(ComplexMatrix& dst, const std::vector<int>& idx, int anchor,
                                      const std::vector<cplx>& col) {
  const int k = static_cast<int>(idx.size());
  ComplexMatrix x(k, 1);
  for (int r = 0; r < k; ++r) x(r, 0) = col[r];
  ComplexMatrix y = orthonormal_complement(x);
  int apos = 0;
  while (idx[apos] != anchor) ++apos;
  int t = 0;
  for (int c = 0; c < k; ++c) {
    for (int r = 0; r < k; ++r) {
      dst(idx[r], idx[c]) = (c == apos) ? col[r] : y(r, t);
    }
    if (c != apos) ++t;
  }
}

// Rotation acting in the (u, v) plane, 0-based, possibly u > v: entries
// (u,u) = (v,v) = cos, (u,v) = sin, (v,u) = -sin.
inline ComplexMatrix planar_rotation_uv(int n, int u, int v, double theta) {
  ComplexMatrix r = ComplexMatrix::identity(n);
  const double c = std::cos(theta), s = std::sin(theta);
  r(u, u) = c;
  r(v, v) = c;
  r(u, v) = s;
  r(v, u) = -s;
  return r;
}

struct Rank1Stitch {
  ComplexMatrix left;  // fixes e_u (left variant) resp. e_v (right variant)
  double theta = 0.0;
  ComplexMatrix right;
};

// r = left * R(u, v, theta) * right, with right block-diagonal w.r.t. the
// column split (setP, setQ) and left fixing e_u. v must lie in the split
// part opposite to u. Matrices are full n x n, identity off the window.
inline Rank1Stitch rank1_left_stitch(const ComplexMatrix& r, const std::vector<int>& setP,
                                     const std::vector<int>& setQ, int u, int v) {
  const int n = r.rows();
  const bool u_in_p = std::find(setP.begin(), setP.end(), u) != setP.end();
  const std::vector<int>& setA = u_in_p ? setP : setQ;
  const std::vector<int>& setB = u_in_p ? setQ : setP;
  std::vector<cplx> rowA(setA.size()), rowB(setB.size());
  double ca = 0.0, sb = 0.0;
  for (std::size_t t = 0; t < setA.size(); ++t) {
    rowA[t] = r(u, setA[t]);
    ca += std::norm(rowA[t]);
  }
  for (std::size_t t = 0; t < setB.size(); ++t) {
    rowB[t] = r(u, setB[t]);
    sb += std::norm(rowB[t]);
  }
  ca = std::sqrt(ca);
  sb = std::sqrt(sb);
  const double theta = std::atan2(sb, ca);
  if (ca > 1e-290)
    for (auto& z : rowA) z /= ca;
  else {
    std::fill(rowA.begin(), rowA.end(), cplx(0.0, 0.0));
    rowA[std::find(setA.begin(), setA.end(), u) - setA.begin()] = 1.0;
  }
  if (sb > 1e-290)
    for (auto& z : rowB) z /= sb;
  else {
    std::fill(rowB.begin(), rowB.end(), cplx(0.0, 0.0));
    rowB[std::find(setB.begin(), setB.end(), v) - setB.begin()] = 1.0;
  }
  ComplexMatrix h = ComplexMatrix::identity(n);
  place_unitary_with_row(h, setA, u, rowA);
  place_unitary_with_row(h, setB, v, rowB);
  ComplexMatrix left = r * h.adjoint() * planar_rotation_uv(n, u, v, -theta);
  // left fixes e_u up to rounding; force it so the window shrinks exactly
  for (int t = 0; t < n; ++t) {
    left(u, t) = (t == u) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    if (t != u) left(t, u) = 0.0;
  }
  return {std::move(left), theta, std::move(h)};
}

// Mirror: r = left * R(u, v, theta) * right with left block-diagonal w.r.t.
// the row split (setT1, setT2) and right fixing e_v. u must lie in the part
// opposite to v.
inline Rank1Stitch rank1_right_stitch(const ComplexMatrix& r, const std::vector<int>& setT1,
                                      const std::vector<int>& setT2, int u, int v) {
  const int n = r.rows();
  const bool v_in_1 = std::find(setT1.begin(), setT1.end(), v) != setT1.end();
  const std::vector<int>& setU = v_in_1 ? setT2 : setT1;  // part containing u
  const std::vector<int>& setV = v_in_1 ? setT1 : setT2;
  std::vector<cplx> colU(setU.size()), colV(setV.size());
  double su = 0.0, cv = 0.0;
  for (std::size_t t = 0; t < setU.size(); ++t) {
    colU[t] = r(setU[t], v);
    su += std::norm(colU[t]);
  }
  for (std::size_t t = 0; t < setV.size(); ++t) {
    colV[t] = r(setV[t], v);
    cv += std::norm(colV[t]);
  }
  su = std::sqrt(su);
  cv = std::sqrt(cv);
  const double theta = std::atan2(su, cv);
  if (su > 1e-290)
    for (auto& z : colU) z /= su;
  else {
    std::fill(colU.begin(), colU.end(), cplx(0.0, 0.0));
    colU[std::find(setU.begin(), setU.end(), u) - setU.begin()] = 1.0;
  }
  if (cv > 1e-290)
    for (auto& z : colV) z /= cv;
  else {
    std::fill(colV.begin(), colV.end(), cplx(0.0, 0.0));
    colV[std::find(setV.begin(), setV.end(), v) - setV.begin()] = 1.0;
  }
  ComplexMatrix l = ComplexMatrix::identity(n);
  place_unitary_with_column(l, setU, u, colU);
  place_unitary_with_column(l, setV, v, colV);
  ComplexMatrix right = planar_rotation_uv(n, u, v, -theta) * l.adjoint() * r;
  for (int t = 0; t < n; ++t) {
    right(v, t) = (t == v) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    if (t != v) right(t, v) = 0.0;
  }
  return {std::move(l), theta, std::move(right)};
}

struct CsdCore {
  ComplexMatrix left;
  std::vector<double> angles;
  ComplexMatrix right;
};

// Base case: n1 <= min(n2, p, q). Corner SVD plus compatible completions.
inline CsdCore csd_base(const ComplexMatrix& g, int n1, int n2, int p, int q,
                        const Tolerances& tol) {
  const int n = n1 + n2;
  SvdResult sv = svd(g.block(0, 0, n1, p));
  std::vector<double> sig(sv.singular_values.begin(), sv.singular_values.begin() + n1);
  std::vector<double> sines(n1);
  std::vector<bool> deg(n1, false);  // sigma within the 1-cluster
  std::vector<double> angles(n1);
  for (int i = 0; i < n1; ++i) {
    double c = std::min(1.0, std::max(0.0, sig[i]));
    double s = std::sqrt(std::max(0.0, (1.0 - c) * (1.0 + c)));
    if (s <= tol.cluster) {
      deg[i] = true;
      s = 0.0;
      c = 1.0;
      angles[i] = 0.0;
    } else {
      angles[i] = std::acos(c);
    }
    sines[i] = s;
  }
  ComplexMatrix u1(n1, n1), v1(p, p);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) u1(i, j) = sv.u(i, j);
  v1 = sv.v;

  const ComplexMatrix K = u1.adjoint() * g.block(0, p, n1, q);
  const ComplexMatrix M = g.block(n1, 0, n2, p) * v1;

  // H2: row q-1-i is K row i normalized (i not degenerate); remaining rows
  // are an orthonormal completion.
  ComplexMatrix h2(q, q);
  std::vector<std::vector<cplx>> fixed_rows;  // for Gram-Schmidt
  std::vector<bool> h2_row_set(q, false);
  auto mgs_row = [&](std::vector<cplx>& w) {
    for (const auto& f : fixed_rows) {
      cplx d = 0.0;
      for (int c = 0; c < q; ++c) d += w[c] * std::conj(f[c]);
      for (int c = 0; c < q; ++c) w[c] -= d * f[c];
    }
    double nn = 0.0;
    for (const cplx& z : w) nn += std::norm(z);
    nn = std::sqrt(nn);
    if (nn < 0.5) return false;
    for (cplx& z : w) z /= nn;
    return true;
  };
  for (int i = n1 - 1; i >= 0; --i) {  // descending sine
    if (deg[i]) continue;
    std::vector<cplx> w(q);
    for (int c = 0; c < q; ++c) w[c] = K(i, c) / sines[i];
    if (!mgs_row(w)) throw ConvergenceFailure("csd: degenerate sine row");
    const int slot = q - 1 - i;
    for (int c = 0; c < q; ++c) h2(slot, c) = w[c];
    h2_row_set[slot] = true;
    fixed_rows.push_back(std::move(w));
  }
  {
    const int k = static_cast<int>(fixed_rows.size());
    ComplexMatrix basis(q, k);
    for (int t = 0; t < k; ++t)
      for (int c = 0; c < q; ++c) basis(c, t) = std::conj(fixed_rows[t][c]);
    ComplexMatrix comp = orthonormal_complement(basis);
    int t = 0;
    for (int r = 0; r < q; ++r) {
      if (h2_row_set[r]) continue;
      for (int c = 0; c < q; ++c) h2(r, c) = std::conj(comp(c, t));
      ++t;
    }
  }

  // L2 determined columns come from M; free columns are read off G22 * H2^*.
  ComplexMatrix l2(n2, n2);
  std::vector<std::vector<cplx>> fixed_cols;
  std::vector<bool> l2_col_set(n2, false);
  auto mgs_col = [&](std::vector<cplx>& w) {
    for (const auto& f : fixed_cols) {
      cplx d = 0.0;
      for (int r = 0; r < n2; ++r) d += std::conj(f[r]) * w[r];
      for (int r = 0; r < n2; ++r) w[r] -= d * f[r];
    }
    double nn = 0.0;
    for (const cplx& z : w) nn += std::norm(z);
    nn = std::sqrt(nn);
    if (nn < 0.5) return false;
    for (cplx& z : w) z /= nn;
    return true;
  };
  auto set_l2_col = [&](int slot, std::vector<cplx> w) {
    if (!mgs_col(w)) throw ConvergenceFailure("csd: dependent left completion column");
    for (int r = 0; r < n2; ++r) l2(r, slot) = w[r];
    l2_col_set[slot] = true;
    fixed_cols.push_back(std::move(w));
  };
  for (int j = n1; j < p; ++j) {  // identity part, unit-norm columns of M
    std::vector<cplx> w(n2);
    for (int r = 0; r < n2; ++r) w[r] = M(r, j);
    set_l2_col(j - n1, std::move(w));
  }
  for (int i = n1 - 1; i >= 0; --i) {  // descending sine
    if (deg[i]) continue;
    std::vector<cplx> w(n2);
    for (int r = 0; r < n2; ++r) w[r] = -M(r, i) / sines[i];
    set_l2_col(n2 - 1 - i, std::move(w));
  }
  const ComplexMatrix g22 = g.block(n1, p, n2, q);
  auto free_col_from = [&](int slot, int hrow) {
    std::vector<cplx> w(n2, cplx(0.0, 0.0));
    for (int r = 0; r < n2; ++r) {
      cplx acc = 0.0;
      for (int c = 0; c < q; ++c) acc += g22(r, c) * std::conj(h2(hrow, c));
      w[r] = acc;
    }
    set_l2_col(slot, std::move(w));
  };
  for (int t = 0; t < q - n1; ++t)
    if (!l2_col_set[p - n1 + t]) free_col_from(p - n1 + t, t);
  for (int i = 0; i < n1; ++i)
    if (deg[i] && !l2_col_set[n2 - 1 - i]) free_col_from(n2 - 1 - i, q - 1 - i);

  CsdCore out;
  out.angles = std::move(angles);
  out.left = ComplexMatrix(n, n);
  out.left.set_block(0, 0, u1);
  out.left.set_block(n1, n1, l2);
  out.right = ComplexMatrix(n, n);
  out.right.set_block(0, 0, v1.adjoint());
  out.right.set_block(p, p, h2);
  return out;
}

inline ComplexMatrix reverse_conjugate(const ComplexMatrix& m) {
  const int n = m.rows();
  ComplexMatrix r(n, m.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(n - 1 - i, m.cols() - 1 - j);
  return r;
}

// diag(-1 x count, 1, ...): absorbs rotation-angle sign flips and lies in
// every block-diagonal subgroup.
inline ComplexMatrix sign_absorber(int n, int count) {
  ComplexMatrix d = ComplexMatrix::identity(n);
  for (int i = 0; i < count; ++i) d(i, i) = -1.0;
  return d;
}

inline CsdCore csd_core(const ComplexMatrix& g, int n1, int n2, int p, int q,
                        const Tolerances& tol) {
  if (n1 <= n2 && n1 <= p && n1 <= q) return csd_base(g, n1, n2, p, q, tol);
  const int l = std::min(std::min(n1, n2), std::min(p, q));
  const int n = n1 + n2;
  if (p == l) {
    // adjoint swaps the row and column roles
    CsdCore inner = csd_core(g.adjoint(), p, q, n1, n2, tol);
    const ComplexMatrix d = sign_absorber(n, l);
    CsdCore out;
    out.angles = inner.angles;
    out.left = inner.right.adjoint() * d;
    out.right = d * inner.left.adjoint();
    return out;
  }
  // reversal conjugation swaps the parts on each side
  CsdCore inner = csd_core(reverse_conjugate(g), n2, n1, q, p, tol);
  const ComplexMatrix d = sign_absorber(n, l);
  CsdCore out;
  out.angles = inner.angles;
  out.left = reverse_conjugate(inner.left) * d;
  out.right = d * reverse_conjugate(inner.right);
  return out;
}

}  // namespace detail

// Two-sided CS decomposition with the anti-diagonal plane convention.
inline CsdResult cs_decompose(const UnitaryMatrix& g, const BipartitionPair& parts,
                              const Tolerances& tol = default_tolerances()) {
  parts.validate();
  if (parts.n != g.size()) throw PartitionMismatch("partition does not match matrix size");
  detail::CsdCore core = detail::csd_core(g.matrix(), parts.row_parts[0], parts.row_parts[1],
                                          parts.col_parts[0], parts.col_parts[1], tol);
  const ComplexMatrix b = csd_word(parts.n, core.angles).eval();
  const double residual = (core.left * b * core.right - g.matrix()).frobenius_norm();
  CsdResult out{UnitaryMatrix::from_matrix(std::move(core.left), tol), std::move(core.angles),
                UnitaryMatrix::from_matrix(std::move(core.right), tol), residual};
  return out;
}

// Direct single-angle decomposition for row parts (1, n-1), driven by the
// first row of g. The rotation acts in the plane (1, n).
inline CsdResult cs_decompose_rank1_left(const UnitaryMatrix& g, const BipartitionPair& parts,
                                         const Tolerances& tol = default_tolerances()) {
  parts.validate();
  if (parts.n != g.size()) throw PartitionMismatch("partition does not match matrix size");
  if (parts.row_parts[0] != 1)
    throw PartitionMismatch("cs_decompose_rank1_left needs row parts (1, n-1)");
  const int n = parts.n, p = parts.col_parts[0];
  std::vector<int> setP(p), setQ(n - p);
  std::iota(setP.begin(), setP.end(), 0);
  std::iota(setQ.begin(), setQ.end(), p);
  detail::Rank1Stitch st = detail::rank1_left_stitch(g.matrix(), setP, setQ, 0, n - 1);
  const ComplexMatrix b = plane_rotation_matrix(n, 1, n, st.theta);
  const double residual = (st.left * b * st.right - g.matrix()).frobenius_norm();
  return {UnitaryMatrix::from_matrix(std::move(st.left), tol), {st.theta},
          UnitaryMatrix::from_matrix(std::move(st.right), tol), residual};
}

// Mirror for column parts (n-1, 1), driven by the last column of g.
inline CsdResult cs_decompose_rank1_right(const UnitaryMatrix& g, const BipartitionPair& parts,
                                          const Tolerances& tol = default_tolerances()) {
  parts.validate();
  if (parts.n != g.size()) throw PartitionMismatch("partition does not match matrix size");
  if (parts.col_parts[1] != 1)
    throw PartitionMismatch("cs_decompose_rank1_right needs column parts (n-1, 1)");
  const int n = parts.n, a = parts.row_parts[0];
  std::vector<int> setT1(a), setT2(n - a);
  std::iota(setT1.begin(), setT1.end(), 0);
  std::iota(setT2.begin(), setT2.end(), a);
  detail::Rank1Stitch st = detail::rank1_right_stitch(g.matrix(), setT1, setT2, 0, n - 1);
  const ComplexMatrix b = plane_rotation_matrix(n, 1, n, st.theta);
  const double residual = (st.left * b * st.right - g.matrix()).frobenius_norm();
  return {UnitaryMatrix::from_matrix(std::move(st.left), tol), {st.theta},
          UnitaryMatrix::from_matrix(std::move(st.right), tol), residual};
}

}  // namespace cartan
