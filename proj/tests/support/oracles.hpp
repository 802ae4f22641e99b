// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference computations, deliberately independent of the library
// paths they check: determinant/characteristic polynomial by cofactor
// expansion, Durand-Kerner root finding, quadrature Fourier coefficients,
// and central finite differences.

#ifndef TOEPEIG_TESTS_ORACLES_HPP
#define TOEPEIG_TESTS_ORACLES_HPP

#include <algorithm>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "toepeig/matrix.hpp"

namespace oracles {

using Cx = std::complex<double>;
using Poly = std::vector<Cx>;  // coefficients, ascending degree

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Cx(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Poly poly_add(Poly a, const Poly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Cx(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

inline Cx poly_eval(const Poly& p, Cx z) {
  Cx acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
  return acc;
}

/// det(A - lambda I) as a polynomial in lambda, by recursive cofactor
/// expansion along the first remaining column. Exponential cost; n <= 9.
inline Poly char_poly(const toepeig::DenseMatrix<Cx>& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;

  // entry as degree<=1 polynomial in lambda
  auto entry = [&](std::size_t i, std::size_t j) -> Poly {
    Poly p{a(i, j)};
    if (i == j) p.push_back(Cx(-1));
    return p;
  };

  std::function<Poly(std::vector<std::size_t>, std::size_t)> det =
      [&](std::vector<std::size_t> rs, std::size_t col) -> Poly {
    if (rs.size() == 1) return entry(rs[0], col);
    Poly acc{Cx(0)};
    double sign = 1.0;
    for (std::size_t pick = 0; pick < rs.size(); ++pick) {
      std::vector<std::size_t> rest;
      for (std::size_t i = 0; i < rs.size(); ++i)
        if (i != pick) rest.push_back(rs[i]);
      Poly term = poly_mul(entry(rs[pick], col), det(rest, col + 1));
      if (sign < 0)
        for (auto& c : term) c = -c;
      acc = poly_add(acc, term);
      sign = -sign;
    }
    return acc;
  };
  return det(rows, 0);
}

/// All roots of p by Durand-Kerner iteration.
inline std::vector<Cx> durand_kerner(Poly p, int iters = 1000) {
  while (p.size() > 1 && std::abs(p.back()) == 0.0) p.pop_back();
  const std::size_t deg = p.size() - 1;
  for (auto& c : p) c /= p.back();

  double radius = 0.0;
  for (std::size_t i = 0; i < deg; ++i) radius = std::max(radius, std::abs(p[i]));
  radius = 1.0 + radius;

  std::vector<Cx> z(deg);
  for (std::size_t i = 0; i < deg; ++i)
    z[i] = 0.4 * radius * std::polar(1.0, 6.283185307179586 * double(i) / double(deg) + 0.5);

  for (int it = 0; it < iters; ++it) {
    double worst = 0.0;
    for (std::size_t i = 0; i < deg; ++i) {
      Cx denom(1, 0);
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      const Cx delta = poly_eval(p, z[i]) / denom;
      z[i] -= delta;
      worst = std::max(worst, std::abs(delta));
    }
    if (worst < 1e-14 * radius) break;
  }
  return z;
}

/// (1/2pi) \int_0^{2pi} g(e^{i theta}) e^{-i j theta} d theta, uniform
/// samples (offset half a step to stay clear of t = 1).
template <typename Fn>
Cx fourier_quadrature(Fn&& g, long j, std::size_t samples) {
  const double two_pi = 6.283185307179586476925286766559;
  Cx acc(0);
  for (std::size_t m = 0; m < samples; ++m) {
    const double theta = two_pi * (double(m) + 0.5) / double(samples);
    acc += g(std::polar(1.0, theta)) * std::polar(1.0, -double(j) * theta);
  }
  return acc / double(samples);
}

/// Central finite difference in the complex plane with real step h.
template <typename Fn>
Cx central_difference(Fn&& f, Cx t, double h = 1e-6) {
  return (f(t + Cx(h, 0)) - f(t - Cx(h, 0))) / Cx(2 * h, 0);
}

/// Deterministic uniform double in [lo, hi).
class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
  }

 private:
  std::mt19937 gen_;
};

}  // namespace oracles

#endif  // TOEPEIG_TESTS_ORACLES_HPP
