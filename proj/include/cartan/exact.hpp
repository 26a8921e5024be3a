#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cartan/matrix.hpp"
#include "cartan/types.hpp"

namespace cartan {

// Complex number with exact rational real and imaginary parts.
struct GaussianRational {
  mpq_class re, im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

  GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
  GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational operator*(const GaussianRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussianRational conj() const { return {re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }

  bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussianRational& o) const { return !(*this == o); }
  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational divided_by_int(long k) const {
    return {mpq_class(re / k), mpq_class(im / k)};
  }

  cplx to_complex() const { return {re.get_d(), im.get_d()}; }
};

class GaussianRationalMatrix {
 public:
  GaussianRationalMatrix() = default;
  GaussianRationalMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static GaussianRationalMatrix identity(int n) {
    GaussianRationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = GaussianRational(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  GaussianRational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const GaussianRational& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  GaussianRationalMatrix operator*(const GaussianRationalMatrix& o) const {
    if (cols_ != o.rows_) throw ShapeMismatch("exact matrix product shape mismatch");
    GaussianRationalMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const GaussianRational& aik = (*this)(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  GaussianRationalMatrix operator+(const GaussianRationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("exact matrix shape mismatch");
    GaussianRationalMatrix r(rows_, cols_);
    for (std::size_t t = 0; t < a_.size(); ++t) r.a_[t] = a_[t] + o.a_[t];
    return r;
  }

  GaussianRationalMatrix operator-(const GaussianRationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("exact matrix shape mismatch");
    GaussianRationalMatrix r(rows_, cols_);
    for (std::size_t t = 0; t < a_.size(); ++t) r.a_[t] = a_[t] - o.a_[t];
    return r;
  }

  GaussianRationalMatrix adjoint() const {
    GaussianRationalMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).conj();
    return r;
  }

  GaussianRational trace() const {
    GaussianRational t;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  GaussianRationalMatrix block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_)
      throw ShapeMismatch("block out of range");
    GaussianRationalMatrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(int r0, int c0, const GaussianRationalMatrix& b) {
    if (r0 < 0 || c0 < 0 || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
      throw ShapeMismatch("block out of range");
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  bool is_real() const {
    for (const auto& z : a_)
      if (z.im != 0) return false;
    return true;
  }

  ComplexMatrix to_complex() const {
    ComplexMatrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).to_complex();
    return m;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<GaussianRational> a_;
};

}  // namespace cartan
