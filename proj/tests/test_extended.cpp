// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0
//
// Smoke coverage of the extended-precision (50-digit) scalar backend behind
// the same operation contracts; sizes stay tiny because software floats are
// two orders slower.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>

#include "toepeig/toepeig.hpp"

using namespace toepeig;
using R = extended_real;
using C = extended_complex;

TEST_CASE("evaluate/invert round trip at 50 digits") {
  const SymbolParams<R> sym(R("0.75"));
  const C t0 = C(R("1.05"), R("0.02"));
  const C lam = evaluate(sym, t0);
  const C back = invert(sym, lam, t0 * R("1.01"));
  using std::abs;
  CHECK(abs(evaluate(sym, back) - lam) <= R("1e-45") * (R(1) + abs(lam)));
  CHECK(abs(back - t0) < R("1e-40"));
}

TEST_CASE("gamma and the leading-coefficient constant at 50 digits") {
  const R g = gamma_fn(R("1.75"));
  // reference digits for Gamma(7/4)
  const R ref("0.91906252684888323384682372752216789513842943608110951");
  using std::abs;
  CHECK(abs(g - ref) < R("1e-48"));
}

TEST_CASE("fourier coefficients agree with the double backend") {
  const SymbolParams<R> sym(R("0.75"));
  const SymbolParams<double> symd(0.75);
  const auto fc = fourier_coefficients(sym, 12);
  const auto fcd = fourier_coefficients(symd, 12);
  using std::abs;
  for (long j = -1; j <= 12; ++j)
    CHECK(abs(fc.at(j) - C(R(fcd.at(j).real()), R(0))) < R("1e-15"));
}

TEST_CASE("small eigensolve matches the double backend") {
  const SymbolParams<R> sym(R("0.75"));
  const SymbolParams<double> symd(0.75);
  const auto spec = spectrum_of(sym, 16);
  const auto specd = spectrum_of(symd, 16);
  using std::abs;
  for (std::size_t j = 0; j < 16; ++j) {
    const double re = static_cast<double>(spec.values[j].real());
    const double im = static_cast<double>(spec.values[j].imag());
    CHECK(std::abs(std::complex<double>(re, im) - specd.values[j]) < 1e-12);
  }
}

TEST_CASE("extrapolation recovers synthetic data to 40+ digits") {
  const R alpha("0.6");
  const auto basis = basis_ordering(alpha, 3);
  const C sigma = unit_polar<R>(-R(2) * pi_v<R>() * R(7) / R(24));
  const std::vector<C> c = {C(R(1), R(1)), C(R(-2), R(0)), C(R("0.5"), R(0))};
  std::vector<std::size_t> sizes = {24, 48, 72};
  std::vector<C> pre(3);
  using std::exp;
  using std::log;
  for (std::size_t l = 0; l < 3; ++l) {
    const R nl(sizes[l]);
    C corr(1);
    for (std::size_t s = 0; s < 3; ++s) corr += c[s] * xi_eval(basis[s], sizes[l]);
    pre[l] = sigma * exp(log(nl) * (alpha + R(1)) / nl) * corr;
  }
  const auto rec = solve_inner_system(alpha, basis, sizes, pre, sigma);
  using std::abs;
  for (std::size_t s = 0; s < 3; ++s) CHECK(abs(rec[s] - c[s]) < R("1e-40"));
}

TEST_CASE("extended cache round trip is exact and tagged") {
  RunConfig<R> cfg;
  cfg.alpha = R("0.75");
  cfg.n1 = 12;
  cfg.k_inner = 3;
  cfg.k_extreme = 2;
  cfg.threads = 1;
  const auto path = (std::filesystem::temp_directory_path() /
                     ("toepeig_ext_" + std::to_string(::getpid()) + ".json"))
                        .string();
  const auto cache = run_precompute(cfg, path);
  const auto reread = read_cache<R>(path);
  for (std::size_t s = 0; s + 1 < cfg.k_inner; ++s)
    for (std::size_t j = 0; j < cfg.n1; ++j)
      CHECK(reread.inner.values(s, j) == cache.inner.values(s, j));
  CHECK_THROWS(read_cache<double>(path));
  std::filesystem::remove(path);
}
