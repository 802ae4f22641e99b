// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "support/oracles.hpp"
#include "toepeig/eigensolver.hpp"

using namespace toepeig;
using Cx = std::complex<double>;

namespace {

ToeplitzOperator<double> model_op(double alpha, std::size_t n,
                                  std::vector<Cx> f = {Cx(1, 0)}) {
  SymbolParams<double> sym(alpha, std::move(f));
  return ToeplitzOperator<double>(fourier_coefficients(sym, long(n)), n);
}

/// greedy nearest-neighbor multiset match; returns the largest pair distance
double multiset_distance(std::vector<Cx> a, std::vector<Cx> b) {
  REQUIRE(a.size() == b.size());
  double worst = 0;
  for (const Cx& x : a) {
    std::size_t best = 0;
    double bd = 1e300;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const double d = std::abs(x - b[i]);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    worst = std::max(worst, bd);
    b.erase(b.begin() + long(best));
  }
  return worst;
}

}  // namespace

TEST_CASE("1x1 and 2x2 closed forms") {
  {
    const auto ev = eigenvalues<double>(build_dense(model_op(0.75, 1)));
    REQUIRE(ev.size() == 1);
    CHECK(std::abs(ev[0] - Cx(-0.75, 0)) < 1e-15);
  }
  {
    const auto ev = eigenvalues<double>(build_dense(model_op(0.75, 2)));
    REQUIRE(ev.size() == 2);
    const double s = std::sqrt(3.0 / 32.0);
    CHECK(multiset_distance(ev, {Cx(-0.75, s), Cx(-0.75, -s)}) < 1e-12);
  }
}

TEST_CASE("small sizes against the characteristic-polynomial oracle") {
  for (std::size_t n : {3u, 6u, 8u}) {
    const auto op = model_op(0.75, n);
    const auto dense = build_dense(op);
    const auto ev = eigenvalues<double>(dense);
    const auto roots = oracles::durand_kerner(oracles::char_poly(dense));
    CHECK(multiset_distance(ev, roots) < 1e-10);
  }
}

TEST_CASE("complex symbols go through the single-shift path") {
  const auto op = model_op(0.6, 6, {Cx(1, 0), Cx(0.3, 0.4)});
  const auto dense = build_dense(op);
  const auto ev = eigenvalues<double>(dense);
  const auto roots = oracles::durand_kerner(oracles::char_poly(dense));
  CHECK(multiset_distance(ev, roots) < 1e-10);

  // trace identity for the complex path at a bigger size
  const auto op2 = model_op(0.6, 96, {Cx(1, 0), Cx(0.3, 0.4)});
  const auto ev2 = eigenvalues<double>(build_dense(op2));
  Cx trace(0);
  for (const auto& l : ev2) trace += l;
  const Cx expected = 96.0 * op2.coeffs.at(0);
  CHECK(std::abs(trace - expected) <= 1e-10 * std::abs(expected));
}

TEST_CASE("trace and determinant identities, conjugation closure") {
  const auto op = model_op(0.75, 256);
  const auto ev = eigenvalues_real_hessenberg(build_dense_real(op));
  Cx trace(0);
  for (const auto& l : ev) trace += l;
  const Cx expected = 256.0 * op.coeffs.at(0);
  CHECK(std::abs(trace - expected) <= 1e-10 * std::abs(expected));

  // conjugation closure (2x2 blocks emit exact pairs)
  std::vector<Cx> conjd;
  conjd.reserve(ev.size());
  for (const auto& l : ev) conjd.push_back(std::conj(l));
  CHECK(multiset_distance(ev, conjd) < 1e-9);

  // determinant for n = 8 against the cofactor oracle
  const auto op8 = model_op(0.75, 8);
  const auto dense8 = build_dense(op8);
  const auto ev8 = eigenvalues<double>(dense8);
  Cx prod(1, 0);
  for (const auto& l : ev8) prod *= l;
  const Cx det8 = oracles::char_poly(dense8)[0];  // det(A - 0 I)
  CHECK(std::abs(prod - det8) <= 1e-9 * std::abs(det8));
}

TEST_CASE("transpose invariance of the spectrum") {
  const auto op = model_op(0.45, 32, {Cx(1, 0), Cx(0.2, 0.1)});
  const auto dense = build_dense(op);
  auto transposed = DenseMatrix<Cx>(32, 32);
  for (std::size_t i = 0; i < 32; ++i)
    for (std::size_t j = 0; j < 32; ++j) transposed(i, j) = dense(j, i);
  CHECK(multiset_distance(eigenvalues<double>(dense), eigenvalues<double>(transposed)) < 1e-10);
}

TEST_CASE("order_spectrum: n=2 example and permutation property") {
  const SymbolParams<double> sym(0.75);
  const auto raw = eigenvalues<double>(build_dense(model_op(0.75, 2)));
  const auto spec = order_spectrum(raw, sym);
  REQUIRE(spec.n == 2);
  CHECK(spec.values[0].imag() > 0);  // upper first
  CHECK(std::abs(spec.values[0] - Cx(-0.75, std::sqrt(3.0 / 32.0))) < 1e-12);
  CHECK(std::abs(spec.angles[0] - 2.7542) < 1e-3);
  CHECK(std::abs(spec.angles[1] - 3.5290) < 1e-3);
  CHECK(multiset_distance(raw, spec.values) == 0.0);
  CHECK(spec.upper_count == 1);
}

TEST_CASE("order_spectrum: preimages stay near their grid nodes (n=64)") {
  const SymbolParams<double> sym(0.75);
  const std::size_t n = 64;
  const auto spec = spectrum_of(sym, n);
  CHECK(spec.preimage_failures == 0);

  const double two_pi = 6.283185307179586;
  double worst = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    const Cx node = std::polar(1.0, -two_pi * double(j) / double(n));
    const Cx t = std::polar(1.0, -double(spec.grid_angles[j - 1]));
    // angular proximity of the preimage direction to its node
    worst = std::max(worst, std::abs(t - node));
  }
  // every preimage direction within a few grid steps of its node
  CHECK(worst <= 3.0 * two_pi / double(n));

  // eigenvalue arguments are monotone along the curve away from the
  // extreme clusters
  for (std::size_t j = 9; j + 9 <= n; ++j) CHECK(spec.angles[j] >= spec.angles[j - 1]);

  // ranks mirror conjugately: values[j-1] = conj(values[n-j])
  for (std::size_t j = 1; j <= n; ++j)
    CHECK(std::abs(spec.values[j - 1] - std::conj(spec.values[n - j])) < 1e-12);
}

TEST_CASE("backward error of computed eigenvalues via inverse iteration") {
  const SymbolParams<double> sym(0.75);
  const std::size_t n = 128;
  ToeplitzOperator<double> op(fourier_coefficients(sym, long(n)), n);
  const auto spec = spectrum_of(sym, n);
  for (std::size_t j : {std::size_t(1), std::size_t(2), std::size_t(17), std::size_t(64),
                        std::size_t(100), std::size_t(128)}) {
    CHECK(backward_error(op, spec.values[j - 1]) <= 1e-10);
  }
}

TEST_CASE("sweep budget failure reports as an error") {
  // a 0-filled Hessenberg matrix deflates instantly; this just pins the
  // happy path of the budget plumbing
  DenseMatrix<Cx> m(4, 4, Cx(0));
  CHECK_NOTHROW(eigenvalues<double>(m));
}
