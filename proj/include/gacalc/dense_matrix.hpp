#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gacalc/error.hpp"
#include "gacalc/scalar.hpp"

namespace gacalc {

// Row-major dense matrix over any scalar field.
template <class S>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, ScalarTraits<S>::from_integer(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = ScalarTraits<S>::from_integer(1);
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw MathError("matrix dimension mismatch in product");
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (ScalarTraits<S>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

// Solves A X = B by Gaussian elimination. Exact domains pivot on the first
// nonzero entry; floats use partial pivoting. Throws MathError with
// `singular_message` when A is singular.
template <class S>
DenseMatrix<S> gauss_solve(DenseMatrix<S> a, DenseMatrix<S> b, const std::string& singular_message) {
  using T = ScalarTraits<S>;
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw MathError("gauss_solve: dimension mismatch");
  const std::size_t m = b.cols();
  double scale = 0.0;
  if constexpr (!T::exact)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, T::pivot_weight(a(i, j)));

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    double best = 0.0;
    for (std::size_t r = col; r < n; ++r) {
      double w = T::pivot_weight(a(r, col));
      if (w > best) {
        best = w;
        pivot = r;
        if constexpr (T::exact) break;
      }
    }
    if (pivot == n) throw MathError(singular_message);
    if constexpr (!T::exact) {
      if (best <= scale * 1e-14) throw MathError(singular_message);
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(b(pivot, j), b(col, j));
    }
    const S inv = T::from_integer(1) / a(col, col);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || T::is_zero(a(r, col))) continue;
      const S factor = a(r, col) * inv;
      for (std::size_t j = col; j < n; ++j)
        if (!T::is_zero(a(col, j))) a(r, j) -= factor * a(col, j);
      for (std::size_t j = 0; j < m; ++j)
        if (!T::is_zero(b(col, j))) b(r, j) -= factor * b(col, j);
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    const S inv = T::from_integer(1) / a(r, r);
    for (std::size_t j = 0; j < m; ++j)
      if (!T::is_zero(b(r, j))) b(r, j) *= inv;
  }
  return b;
}

}  // namespace gacalc
