// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "support/oracles.hpp"
#include "toepeig/extreme.hpp"
#include "toepeig/matrix.hpp"

using namespace toepeig;
using Cx = std::complex<double>;

namespace {

/// plain LU on the unscaled h^(alpha+m-1) matrix; the independent route of
/// the dual-route check
std::vector<Cx> unscaled_solve(double alpha, const std::vector<std::size_t>& sizes,
                               const std::vector<Cx>& values, std::size_t k) {
  DenseMatrix<Cx> a(k, k);
  std::vector<Cx> rhs(k);
  for (std::size_t l = 0; l < k; ++l) {
    const double h = 1.0 / (double(sizes[l]) + 1.0);
    for (std::size_t m = 0; m < k; ++m) a(l, m) = Cx(std::pow(h, alpha + double(m)), 0);
    rhs[l] = values[l];
  }
  return lu_solve(std::move(a), std::move(rhs));
}

}  // namespace

TEST_CASE("single-level solve is the closed form") {
  const double alpha = 0.75;
  const Cx lam(0.3, -0.2);
  const auto q = solve_extreme_system(alpha, {100}, {lam}, 1);
  REQUIRE(q.size() == 1);
  CHECK(std::abs(q[0] - lam * std::pow(101.0, alpha)) < 1e-13 * std::abs(q[0]));
}

TEST_CASE("synthetic power-law data is recovered exactly") {
  const double alpha = 0.75;
  {
    const std::vector<Cx> qtrue = {Cx(1, 1), Cx(-2, 0)};
    std::vector<std::size_t> sizes = {100, 200};
    std::vector<Cx> vals(2);
    for (std::size_t l = 0; l < 2; ++l) {
      const double h = 1.0 / (double(sizes[l]) + 1.0);
      vals[l] = qtrue[0] * std::pow(h, alpha) + qtrue[1] * std::pow(h, alpha + 1);
    }
    const auto q = solve_extreme_system(alpha, sizes, vals, 2);
    CHECK(std::abs(q[0] - qtrue[0]) < 1e-10);
    CHECK(std::abs(q[1] - qtrue[1]) < 1e-10);
  }
  {
    // five levels
    const std::vector<Cx> qtrue = {Cx(1, 0.5), Cx(-2, 1), Cx(0.3, 0), Cx(0, -1), Cx(4, 4)};
    std::vector<std::size_t> sizes = {100, 200, 300, 400, 500};
    std::vector<Cx> vals(5, Cx(0));
    for (std::size_t l = 0; l < 5; ++l) {
      const double h = 1.0 / (double(sizes[l]) + 1.0);
      for (std::size_t m = 0; m < 5; ++m) vals[l] += qtrue[m] * std::pow(h, alpha + double(m));
    }
    const auto q = solve_extreme_system(alpha, sizes, vals, 5);
    for (std::size_t m = 0; m < 5; ++m) CHECK(std::abs(q[m] - qtrue[m]) < 1e-10);
  }
  CHECK_THROWS_AS(solve_extreme_system(0.75, {100, 100}, {Cx(1), Cx(1)}, 2),
                  std::invalid_argument);
}

TEST_CASE("scaled-Vandermonde route agrees with the unscaled LU route") {
  const double alpha = 0.4;
  oracles::Rng rng(23);
  std::vector<std::size_t> sizes = {60, 120, 180, 240};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Cx> vals(4);
    for (auto& v : vals) v = Cx(rng.uniform(-1, 1), rng.uniform(-1, 1)) * 1e-2;
    const auto a = solve_extreme_system(alpha, sizes, vals, 4);
    const auto b = unscaled_solve(alpha, sizes, vals, 4);
    for (std::size_t m = 0; m < 4; ++m)
      CHECK(std::abs(a[m] - b[m]) <= 1e-9 * (1.0 + std::abs(a[m])));
  }
}

TEST_CASE("model symbol: stability, accuracy, and monotone improvement") {
  const double alpha = 0.75;
  const SymbolParams<double> sym(alpha);
  std::vector<Spectrum<double>> spectra;
  for (std::size_t n : {100u, 200u, 300u, 400u, 500u, 600u}) spectra.push_back(spectrum_of(sym, n));

  // leading coefficient is stable across size windows (first 3 vs last 3)
  {
    std::vector<Spectrum<double>> first(spectra.begin(), spectra.begin() + 3);
    std::vector<Spectrum<double>> last(spectra.begin() + 3, spectra.end());
    const auto qa = extrapolate_extreme(first, 1, alpha, 3);
    const auto qb = extrapolate_extreme(last, 1, alpha, 3);
    CHECK(std::abs(qa[0] - qb[0]) <= 0.05 * std::abs(qb[0]));
  }

  const auto oracle = spectrum_of(sym, 512);

  // relative error at n=512: small at j=1, monotone non-increasing in k
  std::vector<double> re1(5, 0.0);
  for (std::size_t k = 1; k <= 4; ++k) {
    double worst_j1 = 0;
    for (std::size_t j = 1; j <= 10; ++j) {
      const auto q = extrapolate_extreme(spectra, j, alpha, k);
      Cx approx(0);
      const double h = 1.0 / 513.0;
      for (std::size_t m = 0; m < k; ++m) approx += q[m] * std::pow(h, alpha + double(m));
      const double re = std::abs(oracle.values[j - 1] - approx) / std::abs(oracle.values[j - 1]);
      if (j == 1) re1[k] = re;
      worst_j1 = std::max(worst_j1, re);
    }
    if (k > 1) CHECK(re1[k] <= re1[k - 1]);
  }
  CHECK(re1[3] <= 1e-3);
}

TEST_CASE("table construction: mirror exactness and approximation") {
  const double alpha = 0.75;
  const SymbolParams<double> sym(alpha);
  std::vector<Spectrum<double>> spectra;
  for (std::size_t n : {48u, 96u, 144u}) spectra.push_back(spectrum_of(sym, n));

  const auto table = build_extreme_table(sym, spectra, 12, 3);
  REQUIRE(table.complete());

  // real symbol: high end is the exact conjugate of the low end
  for (std::size_t j = 1; j <= 12; ++j)
    for (std::size_t m = 0; m < 3; ++m)
      CHECK(table.q_high(j - 1, m) == std::conj(table.q_low(j - 1, m)));

  // approx at the mirrored index is exactly the conjugate
  for (std::size_t j = 1; j <= 12; ++j) {
    const Cx low = approx_extreme_eigenvalue(table, 200, j, 3);
    const Cx high = approx_extreme_eigenvalue(table, 200, 200 + 1 - j, 3);
    CHECK(high == std::conj(low));
  }

  // one-term sum is the closed form
  const Cx one = approx_extreme_eigenvalue(table, 200, 1, 1);
  CHECK(std::abs(one - table.q_low(0, 0) * std::pow(1.0 / 201.0, alpha)) < 1e-15);

  CHECK_THROWS_AS(approx_extreme_eigenvalue(table, 200, 100, 3), std::out_of_range);
  CHECK_THROWS_AS(approx_extreme_eigenvalue(table, 200, 1, 7), std::invalid_argument);
}

TEST_CASE("complex symbols track both ends independently") {
  const SymbolParams<double> sym(0.6, {Cx(1, 0), Cx(0.2, 0.15)});
  std::vector<Spectrum<double>> spectra;
  for (std::size_t n : {32u, 64u, 96u}) spectra.push_back(spectrum_of(sym, n));
  const auto table = build_extreme_table(sym, spectra, 6, 3);
  REQUIRE(table.complete());
  // without conjugate symmetry the two ends genuinely differ
  bool any_differ = false;
  for (std::size_t j = 1; j <= 6 && !any_differ; ++j)
    for (std::size_t m = 0; m < 3; ++m)
      if (std::abs(table.q_high(j - 1, m) - std::conj(table.q_low(j - 1, m))) > 1e-6)
        any_differ = true;
  CHECK(any_differ);
}

TEST_CASE("scaling law of the smallest eigenvalue") {
  const SymbolParams<double> sym(0.75);
  std::vector<Cx> lead;
  for (std::size_t n : {64u, 128u, 256u, 512u})
    lead.push_back(spectrum_of(sym, n).values[0] * std::pow(double(n) + 1.0, 0.75));
  const double d1 = std::abs(lead[1] - lead[0]);
  const double d2 = std::abs(lead[2] - lead[1]);
  const double d3 = std::abs(lead[3] - lead[2]);
  CHECK(d2 < d1);
  CHECK(d3 < d2);
}
