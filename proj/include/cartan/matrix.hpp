#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "cartan/types.hpp"

namespace cartan {

// Dense row-major complex matrix. Indices are 0-based here; the 1-based
// convention of rotation letters and loop words applies only to those types.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw ShapeMismatch("negative matrix dimension");
  }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(const std::vector<cplx>& d) {
    ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  ComplexMatrix operator*(const ComplexMatrix& o) const {
    if (cols_ != o.rows_) throw ShapeMismatch("matrix product shape mismatch");
    ComplexMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int k = 0; k < cols_; ++k) {
        const cplx aik = (*this)(i, k);
        if (aik == cplx(0.0, 0.0)) continue;
        const cplx* src = &o.a_[static_cast<std::size_t>(k) * o.cols_];
        cplx* dst = &r.a_[static_cast<std::size_t>(i) * o.cols_];
        for (int j = 0; j < o.cols_; ++j) dst[j] += aik * src[j];
      }
    }
    return r;
  }

  ComplexMatrix operator+(const ComplexMatrix& o) const {
    check_same_shape(o);
    ComplexMatrix r(rows_, cols_);
    for (std::size_t t = 0; t < a_.size(); ++t) r.a_[t] = a_[t] + o.a_[t];
    return r;
  }

  ComplexMatrix operator-(const ComplexMatrix& o) const {
    check_same_shape(o);
    ComplexMatrix r(rows_, cols_);
    for (std::size_t t = 0; t < a_.size(); ++t) r.a_[t] = a_[t] - o.a_[t];
    return r;
  }

  ComplexMatrix operator*(cplx s) const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t t = 0; t < a_.size(); ++t) r.a_[t] = s * a_[t];
    return r;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : a_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0.0;
    for (const cplx& z : a_) s = std::max(s, std::abs(z));
    return s;
  }

  bool is_finite() const {
    for (const cplx& z : a_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  ComplexMatrix block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_)
      throw ShapeMismatch("block out of range");
    ComplexMatrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(int r0, int c0, const ComplexMatrix& b) {
    if (r0 < 0 || c0 < 0 || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
      throw ShapeMismatch("block out of range");
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  bool operator==(const ComplexMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  void check_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> a_;
};

inline double unitarity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("unitarity defect needs a square matrix");
  ComplexMatrix d = m.adjoint() * m;
  for (int i = 0; i < m.rows(); ++i) d(i, i) -= 1.0;
  return d.frobenius_norm();
}

// Frobenius mass of the entries lying outside the diagonal blocks of the
// given contiguous partition.
inline double off_block_mass(const ComplexMatrix& m, const std::vector<int>& parts) {
  int n = 0;
  for (int p : parts) n += p;
  if (m.rows() != n || m.cols() != n) throw ShapeMismatch("partition does not match matrix");
  double s = 0.0;
  int r0 = 0;
  for (int p : parts) {
    for (int i = r0; i < r0 + p; ++i)
      for (int j = 0; j < n; ++j)
        if (j < r0 || j >= r0 + p) s += std::norm(m(i, j));
    r0 += p;
  }
  return std::sqrt(s);
}

}  // namespace cartan
