// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef TOEPEIG_ERRORS_HPP
#define TOEPEIG_ERRORS_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "toepeig/scalar.hpp"

namespace toepeig {

/// Exact rational used for the regime split so that floor(eps * n) never
/// suffers binary rounding (eps = 1/30 style fractions are exact).
struct Fraction {
  std::int64_t num = 1;
  std::int64_t den = 8;

  static Fraction parse(const std::string& text);

  std::size_t floor_mul(std::size_t n) const {
    return static_cast<std::size_t>((static_cast<std::int64_t>(n) * num) / den);
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline Fraction Fraction::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::int64_t p = std::stoll(text.substr(0, slash));
    const std::int64_t q = std::stoll(text.substr(slash + 1));
    if (q <= 0) throw std::invalid_argument("Fraction: nonpositive denominator");
    return {p, q};
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return {std::stoll(text), 1};
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < text.size() - dot - 1; ++i) den *= 10;
  return {std::stoll(digits), den};
}

enum class Regime { extreme_low, inner, extreme_high };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::extreme_low: return "extreme-low";
    case Regime::inner: return "inner";
    default: return "extreme-high";
  }
}

/// Partition of 1..n: extreme on [1, w] and [n-w+1, n], inner elsewhere,
/// w = floor(eps n).
inline Regime regime_of(std::size_t j, std::size_t n, std::size_t w) {
  if (j < 1 || j > n) throw std::out_of_range("regime_of: index outside 1..n");
  if (j <= w) return Regime::extreme_low;
  if (j > n - w) return Regime::extreme_high;
  return Regime::inner;
}

template <typename Real>
Real absolute_error(const complex_t<Real>& exact, const complex_t<Real>& approx) {
  using std::abs;
  return abs(exact - approx);
}

template <typename Real>
Real relative_error(const complex_t<Real>& exact, const complex_t<Real>& approx) {
  using std::abs;
  const Real mag = abs(exact);
  if (mag < std::numeric_limits<Real>::min())
    throw std::domain_error("relative_error: exact value is (numerically) zero");
  return abs(exact - approx) / mag;
}

/// max AE over the window j in (w, n-w], w = floor(eps n).
template <typename Real>
Real max_inner_error(const std::vector<complex_t<Real>>& exact,
                     const std::vector<complex_t<Real>>& approx, std::size_t w) {
  const std::size_t n = exact.size();
  if (approx.size() != n) throw std::invalid_argument("max_inner_error: length mismatch");
  if (2 * w >= n) throw std::invalid_argument("max_inner_error: window is empty");
  Real best(0);
  for (std::size_t j = w + 1; j <= n - w; ++j) {
    const Real ae = absolute_error<Real>(exact[j - 1], approx[j - 1]);
    if (ae > best) best = ae;
  }
  return best;
}

/// RE^eps splice: extreme relative errors on [1,w] and [n-w+1,n], inner
/// elsewhere. Both approximation arrays are full length n.
template <typename Real>
std::vector<Real> global_relative_error(const std::vector<complex_t<Real>>& exact,
                                        const std::vector<complex_t<Real>>& inner_approx,
                                        const std::vector<complex_t<Real>>& extreme_approx,
                                        std::size_t w) {
  const std::size_t n = exact.size();
  if (inner_approx.size() != n || extreme_approx.size() != n)
    throw std::invalid_argument("global_relative_error: length mismatch");
  std::vector<Real> re(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const bool ext = regime_of(j, n, w) != Regime::inner;
    re[j - 1] = relative_error<Real>(exact[j - 1], ext ? extreme_approx[j - 1] : inner_approx[j - 1]);
  }
  return re;
}

/// Per-(n, k-pair) error summary; the CSV serializations live in the
/// pipeline layer.
template <typename Real>
struct ErrorReport {
  std::size_t n = 0;
  std::size_t k_inner = 0;
  std::size_t k_extreme = 0;
  Fraction epsilon;
  std::vector<Real> abs_err;    // regime-selected AE_j
  std::vector<Real> rel_err;    // regime-selected RE_j (the RE^eps array)
  std::vector<Regime> regimes;
  Real max_inner_ae{};
  Real normalized_ae{};         // max_inner_ae / xi_{k_inner}(n)
};

}  // namespace toepeig

#endif  // TOEPEIG_ERRORS_HPP
