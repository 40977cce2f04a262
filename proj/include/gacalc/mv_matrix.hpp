#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gacalc/analytic.hpp"
#include "gacalc/dense_matrix.hpp"
#include "gacalc/multivector.hpp"

namespace gacalc {

// Row-major matrix whose entries are multivectors of one algebra.
template <class S>
class MvMatrix {
 public:
  using Entry = Multivector<S>;

  MvMatrix(AlgebraPtr alg, std::size_t rows, std::size_t cols)
      : alg_(std::move(alg)), rows_(rows), cols_(cols), e_(rows * cols, Entry(alg_)) {}

  MvMatrix(AlgebraPtr alg, std::size_t rows, std::size_t cols, std::vector<Entry> entries)
      : alg_(std::move(alg)), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_)
      throw MathError("matrix of multivectors needs " + std::to_string(rows_ * cols_) + " entries, got " +
                      std::to_string(e_.size()));
    for (const auto& x : e_)
      if (!x.algebra()->same_signature(*alg_))
        throw MathError("signature mismatch: " + alg_->signature().to_string() + " vs " + x.signature().to_string());
  }

  // Built from nested rows.
  static MvMatrix from_rows(AlgebraPtr alg, const std::vector<std::vector<Entry>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    std::vector<Entry> flat;
    for (const auto& row : rows) {
      if (row.size() != c) throw MathError("ragged rows in matrix of multivectors");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return MvMatrix(std::move(alg), r, c, std::move(flat));
  }

  static MvMatrix identity(AlgebraPtr alg, std::size_t n) {
    MvMatrix out(alg, n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = Entry::scalar(alg, ScalarTraits<S>::from_integer(1));
    return out;
  }

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Entry& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const Entry& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
  const std::vector<Entry>& entries() const { return e_; }

  void require_same_shape(const MvMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw MathError("matrix dimension mismatch: " + shape() + " vs " + o.shape());
    require_same_algebra(o);
  }
  void require_same_algebra(const MvMatrix& o) const {
    if (!alg_->same_signature(*o.alg_))
      throw MathError("signature mismatch: " + alg_->signature().to_string() + " vs " + o.alg_->signature().to_string());
  }
  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  friend MvMatrix operator+(MvMatrix a, const MvMatrix& b) {
    a.require_same_shape(b);
    for (std::size_t i = 0; i < a.e_.size(); ++i) a.e_[i] += b.e_[i];
    return a;
  }
  friend MvMatrix operator-(MvMatrix a, const MvMatrix& b) {
    a.require_same_shape(b);
    for (std::size_t i = 0; i < a.e_.size(); ++i) a.e_[i] -= b.e_[i];
    return a;
  }
  // Entry products keep their order: (MN)_ij = sum_k M_ik N_kj.
  friend MvMatrix operator*(const MvMatrix& a, const MvMatrix& b) {
    a.require_same_algebra(b);
    if (a.cols_ != b.rows_) throw MathError("matrix dimension mismatch in product: " + a.shape() + " * " + b.shape());
    MvMatrix out(a.alg_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j)
        for (std::size_t k = 0; k < a.cols_; ++k) out(i, j) += a(i, k) * b(k, j);
    return out;
  }
  friend bool operator==(const MvMatrix& a, const MvMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

 private:
  AlgebraPtr alg_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Entry> e_;
};

// Scalar matrix with every entry replaced by its left-multiplication matrix.
template <class S>
DenseMatrix<S> block(const MvMatrix<S>& m) {
  const std::size_t n = m.algebra()->size();
  DenseMatrix<S> out(m.rows() * n, m.cols() * n);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const DenseMatrix<S> rep = to_matrix(m(i, j));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out(i * n + r, j * n + c) = rep(r, c);
    }
  return out;
}

namespace detail {
// Reads a stacked coefficient solution back into entries.
template <class S>
MvMatrix<S> unstack(const AlgebraPtr& alg, const DenseMatrix<S>& y, std::size_t rows) {
  const std::size_t n = alg->size();
  MvMatrix<S> out(alg, rows, y.cols());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < y.cols(); ++j)
      for (std::size_t k = 0; k < n; ++k) out(i, j)[k] = y(i * n + k, j);
  return out;
}
}  // namespace detail

// X with M X = b, solved on block(M) against the stacked coefficients of b.
template <class S>
MvMatrix<S> solve(const MvMatrix<S>& m, const MvMatrix<S>& b) {
  m.require_same_algebra(b);
  if (m.rows() != m.cols()) throw MathError("solve needs a square matrix, got " + m.shape());
  if (b.rows() != m.rows()) throw MathError("right-hand side has " + std::to_string(b.rows()) + " rows, expected " +
                                            std::to_string(m.rows()));
  const std::size_t n = m.algebra()->size();
  DenseMatrix<S> rhs(m.rows() * n, b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < n; ++k) rhs(i * n + k, j) = b(i, j)[k];
  DenseMatrix<S> y = gauss_solve(block(m), std::move(rhs), "matrix of multivectors not invertible");
  return detail::unstack(m.algebra(), y, m.rows());
}

// M^-1: solves against the E_0 columns of the block identity.
template <class S>
MvMatrix<S> inverse(const MvMatrix<S>& m) {
  if (m.rows() != m.cols()) throw MathError("inverse needs a square matrix, got " + m.shape());
  return solve(m, MvMatrix<S>::identity(m.algebra(), m.rows()));
}

template <class S>
MvMatrix<S> transpose(const MvMatrix<S>& m) {
  MvMatrix<S> out(m.algebra(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

// Transpose with every entry reversed.
template <class S>
MvMatrix<S> adjoint(const MvMatrix<S>& m) {
  MvMatrix<S> out(m.algebra(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = reverse(m(i, j));
  return out;
}

// Entries rendered like multivectors; columns separated by four spaces,
// rows by newlines.
template <class S>
std::string to_text(const MvMatrix<S>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += "\n";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += "    ";
      out += to_text(m(i, j));
    }
  }
  return out;
}

template <class S>
nlohmann::json to_json(const MvMatrix<S>& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : m.entries()) entries.push_back(to_json(e));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

template <class S>
MvMatrix<S> mv_matrix_from_json(const AlgebraPtr& alg, const nlohmann::json& j) {
  std::vector<Multivector<S>> entries;
  for (const auto& e : j.at("entries")) entries.push_back(multivector_from_json<S>(alg, e));
  return MvMatrix<S>(alg, j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(), std::move(entries));
}

}  // namespace gacalc
