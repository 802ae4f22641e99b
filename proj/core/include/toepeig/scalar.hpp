// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef TOEPEIG_SCALAR_HPP
#define TOEPEIG_SCALAR_HPP

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>

namespace toepeig {

/// Traits binding a real scalar type to its complex companion, its
/// serialization and the few special functions the library needs.
/// Two backends are provided: hardware doubles ("hw") and a 50-digit
/// software float ("extended"). All library code is templated on the
/// real type and must stay backend-agnostic.
template <typename Real>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  using real = double;
  using complex = std::complex<double>;
  static constexpr const char* tag = "hw";

  static double parse(const std::string& s) { return std::strtod(s.c_str(), nullptr); }
};

using extended_real = boost::multiprecision::cpp_bin_float_50;
using extended_complex = boost::multiprecision::cpp_complex_50;

template <>
struct scalar_traits<extended_real> {
  using real = extended_real;
  using complex = extended_complex;
  static constexpr const char* tag = "extended";

  static extended_real parse(const std::string& s) { return extended_real(s); }
};

template <typename Real>
using complex_t = typename scalar_traits<Real>::complex;

template <typename Real>
Real pi_v() {
  using std::atan;
  return Real(4) * atan(Real(1));
}

template <typename Real>
Real gamma_fn(const Real& x) {
  if constexpr (std::is_floating_point_v<Real>)
    return std::tgamma(x);
  else
    return boost::math::tgamma(x);
}

/// exp(i*theta) without std::polar (which is std::complex-only).
template <typename Real>
complex_t<Real> unit_polar(const Real& theta) {
  using std::cos;
  using std::sin;
  return complex_t<Real>(cos(theta), sin(theta));
}

/// Decimal serialization with enough digits to round-trip exactly.
template <typename Real>
std::string format_real(const Real& x) {
  std::ostringstream os;
  os.precision(std::numeric_limits<Real>::max_digits10);
  os << x;
  return os.str();
}

/// Angle lifted from (-pi, pi] into [0, 2*pi).
template <typename Real>
Real lift_angle(const Real& a) {
  return a < Real(0) ? a + Real(2) * pi_v<Real>() : a;
}

}  // namespace toepeig

#endif  // TOEPEIG_SCALAR_HPP
