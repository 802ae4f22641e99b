// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef TOEPEIG_EXTREME_HPP
#define TOEPEIG_EXTREME_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "toepeig/eigensolver.hpp"
#include "toepeig/matrix.hpp"
#include "toepeig/symbol.hpp"

namespace toepeig {

/// Per-index power-law coefficients q^_1..q^_k for the extreme eigenvalues,
/// tracked for j0 indices from each spectrum end. Low-end slot j covers
/// absolute index j; high-end slot j covers absolute index n+1-j.
template <typename Real>
struct ExtremeTable {
  using Complex = complex_t<Real>;

  Real alpha{};
  std::size_t j0 = 0;
  std::size_t k = 0;
  std::vector<std::size_t> sizes;    // n_1 < ... < n_k
  DenseMatrix<Complex> q_low;        // (j0 x k): q_low(j-1, m-1) = q^_m(j)
  DenseMatrix<Complex> q_high;       // mirrored end, same layout

  bool complete() const {
    return j0 > 0 && k > 0 && sizes.size() == k && q_low.rows() == j0 && q_low.cols() == k &&
           q_high.rows() == j0 && q_high.cols() == k;
  }
};

/// Solves sum_m q_m h_l^(alpha+m-1) = values_l for q. Rows are divided by
/// h_l^alpha first (pure Vandermonde in h), columns equilibrated, then LU
/// with partial pivoting.
template <typename Real>
std::vector<complex_t<Real>> solve_extreme_system(const Real& alpha,
                                                  const std::vector<std::size_t>& sizes,
                                                  const std::vector<complex_t<Real>>& values,
                                                  std::size_t k) {
  using std::pow;
  using Complex = complex_t<Real>;
  if (sizes.size() != k || values.size() != k)
    throw std::invalid_argument("solve_extreme_system: level count mismatch");
  for (std::size_t l = 1; l < k; ++l)
    if (sizes[l] <= sizes[l - 1])
      throw std::invalid_argument("solve_extreme_system: sizes must be strictly increasing");

  std::vector<Real> h(k), colscale(k);
  for (std::size_t l = 0; l < k; ++l) h[l] = Real(1) / (Real(sizes[l]) + Real(1));
  for (std::size_t m = 0; m < k; ++m) colscale[m] = pow(h[0], Real(m));

  DenseMatrix<Complex> a(k, k);
  std::vector<Complex> rhs(k);
  for (std::size_t l = 0; l < k; ++l) {
    rhs[l] = values[l] / pow(h[l], alpha);  // row / h^alpha
    Real hp(1);
    for (std::size_t m = 0; m < k; ++m) {
      a(l, m) = Complex(hp / colscale[m], Real(0));
      hp *= h[l];
    }
  }
  auto q = lu_solve(std::move(a), std::move(rhs));
  for (std::size_t m = 0; m < k; ++m) q[m] /= colscale[m];
  return q;
}

/// q^_1..q^_k for low-end tracked index j from canonically ordered spectra.
template <typename Real>
std::vector<complex_t<Real>> extrapolate_extreme(const std::vector<Spectrum<Real>>& spectra,
                                                 std::size_t j, const Real& alpha, std::size_t k) {
  using Complex = complex_t<Real>;
  if (spectra.size() < k) throw std::invalid_argument("extrapolate_extreme: missing spectra");
  std::vector<std::size_t> sizes(k);
  std::vector<Complex> values(k);
  for (std::size_t l = 0; l < k; ++l) {
    sizes[l] = spectra[l].n;
    if (j < 1 || j > spectra[l].n)
      throw std::invalid_argument("extrapolate_extreme: index outside spectrum");
    values[l] = spectra[l].values[j - 1];
  }
  return solve_extreme_system(alpha, sizes, values, k);
}

/// Same for the high end: slot j tracks absolute index n_l + 1 - j.
template <typename Real>
std::vector<complex_t<Real>> extrapolate_extreme_high(const std::vector<Spectrum<Real>>& spectra,
                                                      std::size_t j, const Real& alpha,
                                                      std::size_t k) {
  using Complex = complex_t<Real>;
  if (spectra.size() < k) throw std::invalid_argument("extrapolate_extreme: missing spectra");
  std::vector<std::size_t> sizes(k);
  std::vector<Complex> values(k);
  for (std::size_t l = 0; l < k; ++l) {
    sizes[l] = spectra[l].n;
    if (j < 1 || j > spectra[l].n)
      throw std::invalid_argument("extrapolate_extreme: index outside spectrum");
    values[l] = spectra[l].values[spectra[l].n - j];
  }
  return solve_extreme_system(alpha, sizes, values, k);
}

/// Builds both ends. For real symbols the high end is the exact conjugate of
/// the low end (ranked spectra are conjugation-closed, and the Vandermonde is
/// real), so it is derived rather than re-solved; complex symbols solve the
/// top-offset systems independently.
template <typename Real>
ExtremeTable<Real> build_extreme_table(const SymbolParams<Real>& sym,
                                       const std::vector<Spectrum<Real>>& spectra, std::size_t j0,
                                       std::size_t k) {
  using std::conj;
  using Complex = complex_t<Real>;
  ExtremeTable<Real> table;
  table.alpha = sym.alpha;
  table.j0 = j0;
  table.k = k;
  table.sizes.resize(k);
  for (std::size_t l = 0; l < k; ++l) table.sizes[l] = spectra.at(l).n;
  if (j0 > table.sizes[0])
    throw std::invalid_argument("build_extreme_table: j0 exceeds the smallest size");
  table.q_low = DenseMatrix<Complex>(j0, k);
  table.q_high = DenseMatrix<Complex>(j0, k);
  const bool mirror = sym.is_real();
  for (std::size_t j = 1; j <= j0; ++j) {
    auto ql = extrapolate_extreme(spectra, j, sym.alpha, k);
    for (std::size_t m = 0; m < k; ++m) table.q_low(j - 1, m) = ql[m];
    if (mirror) {
      for (std::size_t m = 0; m < k; ++m) table.q_high(j - 1, m) = conj(ql[m]);
    } else {
      auto qh = extrapolate_extreme_high(spectra, j, sym.alpha, k);
      for (std::size_t m = 0; m < k; ++m) table.q_high(j - 1, m) = qh[m];
    }
  }
  return table;
}

/// k-term power-law approximation at absolute index j of size n. j must lie
/// in a tracked window (j <= j0 or j > n - j0).
template <typename Real>
complex_t<Real> approx_extreme_eigenvalue(const ExtremeTable<Real>& table, std::size_t n,
                                          std::size_t j, std::size_t k) {
  using std::pow;
  using Complex = complex_t<Real>;
  if (!table.complete()) throw std::runtime_error("approx_extreme_eigenvalue: incomplete table");
  if (k < 1 || k > table.k) throw std::invalid_argument("approx_extreme_eigenvalue: k exceeds table");

  const DenseMatrix<Complex>* q = nullptr;
  std::size_t slot = 0;
  if (j >= 1 && j <= table.j0) {
    q = &table.q_low;
    slot = j;
  } else if (j <= n && j + table.j0 > n) {
    q = &table.q_high;
    slot = n + 1 - j;
  } else {
    throw std::out_of_range("approx_extreme_eigenvalue: untracked extreme index");
  }
  const Real h = Real(1) / (Real(n) + Real(1));
  const Real ha = pow(h, table.alpha);
  Complex acc(0);
  Real hp = ha;
  for (std::size_t m = 0; m < k; ++m) {
    acc += (*q)(slot - 1, m) * hp;
    hp *= h;
  }
  return acc;
}

}  // namespace toepeig

#endif  // TOEPEIG_EXTREME_HPP
