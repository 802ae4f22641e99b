// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef TOEPEIG_TOEPLITZ_HPP
#define TOEPEIG_TOEPLITZ_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "toepeig/matrix.hpp"
#include "toepeig/symbol.hpp"

namespace toepeig {

/// T_n(a) = (a_{j-k}), lazy: only the coefficient band is stored.
/// Lower Hessenberg because a_j = 0 for j < -1.
template <typename Real>
struct ToeplitzOperator {
  using Complex = complex_t<Real>;

  FourierCoefficients<Real> coeffs;
  std::size_t n;

  ToeplitzOperator(FourierCoefficients<Real> c, std::size_t size) : coeffs(std::move(c)), n(size) {
    if (n == 0) throw std::invalid_argument("ToeplitzOperator: n must be positive");
    if (coeffs.j_max() < static_cast<long>(n) - 2)
      throw std::invalid_argument("ToeplitzOperator: coefficients must reach index n-2");
  }

  Complex entry(std::size_t row, std::size_t col) const {
    const long d = static_cast<long>(row) - static_cast<long>(col);
    return d < -1 ? Complex(0) : coeffs.at(d);
  }
};

template <typename Real>
DenseMatrix<complex_t<Real>> build_dense(const ToeplitzOperator<Real>& op) {
  using Complex = complex_t<Real>;
  DenseMatrix<Complex> m(op.n, op.n, Complex(0));
  for (std::size_t j = 0; j < op.n; ++j)
    for (std::size_t k = 0; k < op.n; ++k) {
      const long d = static_cast<long>(j) - static_cast<long>(k);
      if (d >= -1) m(j, k) = op.coeffs.at(d);
    }
  return m;
}

/// Real-part materialization for symbols with real coefficients
/// (feeds the double-shift eigensolver path).
template <typename Real>
DenseMatrix<Real> build_dense_real(const ToeplitzOperator<Real>& op) {
  DenseMatrix<Real> m(op.n, op.n, Real(0));
  for (std::size_t j = 0; j < op.n; ++j)
    for (std::size_t k = 0; k < op.n; ++k) {
      const long d = static_cast<long>(j) - static_cast<long>(k);
      if (d >= -1) m(j, k) = op.coeffs.at(d).real();
    }
  return m;
}

/// y = T_n(a) x via the Hessenberg band, no dense materialization.
template <typename Real>
std::vector<complex_t<Real>> matvec(const ToeplitzOperator<Real>& op,
                                    const std::vector<complex_t<Real>>& x) {
  using Complex = complex_t<Real>;
  if (x.size() != op.n) throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<Complex> y(op.n, Complex(0));
  for (std::size_t j = 0; j < op.n; ++j) {
    Complex acc(0);
    const std::size_t kmax = j + 1 < op.n ? j + 1 : op.n - 1;
    for (std::size_t k = 0; k <= kmax; ++k)
      acc += op.coeffs.at(static_cast<long>(j) - static_cast<long>(k)) * x[k];
    y[j] = acc;
  }
  return y;
}

}  // namespace toepeig

#endif  // TOEPEIG_TOEPLITZ_HPP
