// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef TOEPEIG_MATRIX_HPP
#define TOEPEIG_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace toepeig {

/// Row-major dense matrix. Deliberately minimal: storage, indexing,
/// and the one factorization the extrapolation phases need.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T value = T())
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  T* row(std::size_t i) { return data_.data() + i * cols_; }
  const T* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Solves A x = b by LU with partial pivoting, in place on copies.
/// Throws std::runtime_error on a (numerically) singular pivot.
template <typename T>
std::vector<T> lu_solve(DenseMatrix<T> a, std::vector<T> b) {
  using std::abs;
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("lu_solve: shape mismatch");

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    auto best = abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      auto cand = abs(a(i, k));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (!(best > decltype(best)(0))) throw std::runtime_error("lu_solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const T m = a(i, k) / a(k, k);
      a(i, k) = m;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
      b[i] -= m * b[k];
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    T s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * b[j];
    b[ii] = s / a(ii, ii);
  }
  return b;
}

}  // namespace toepeig

#endif  // TOEPEIG_MATRIX_HPP
