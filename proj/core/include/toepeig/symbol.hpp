// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef TOEPEIG_SYMBOL_HPP
#define TOEPEIG_SYMBOL_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "toepeig/scalar.hpp"

namespace toepeig {

/// Generating function a(t) = t^-1 (1-t)^alpha f(t) with alpha in (0,1)
/// and f a polynomial, f(0) != 0. The fractional power uses the principal
/// logarithm, arg(1-t) in (-pi, pi], so the branch cut is {x real : x > 1}.
template <typename Real>
struct SymbolParams {
  using Complex = complex_t<Real>;

  Real alpha;
  std::vector<Complex> f_series;  // f(t) = sum f_series[m] t^m

  explicit SymbolParams(Real a, std::vector<Complex> f = {Complex(1)})
      : alpha(std::move(a)), f_series(std::move(f)) {
    using std::abs;
    if (!(alpha > Real(0) && alpha < Real(1)))
      throw std::domain_error("SymbolParams: alpha must lie in (0,1)");
    if (f_series.empty() || !(abs(f_series[0]) > Real(0)))
      throw std::domain_error("SymbolParams: f(0) must be nonzero");
  }

  bool is_real() const {
    using std::abs;
    for (const auto& c : f_series)
      if (abs(c.imag()) != Real(0)) return false;
    return true;
  }

  Complex f_eval(const Complex& t) const {
    Complex acc(0);
    for (std::size_t m = f_series.size(); m-- > 0;) acc = acc * t + f_series[m];
    return acc;
  }

  Complex f_deriv(const Complex& t) const {
    Complex acc(0);
    for (std::size_t m = f_series.size(); m-- > 1;) acc = acc * t + f_series[m] * Real(m);
    return acc;
  }
};

/// Laurent coefficients a_j, j >= -1 (lower Hessenberg support).
template <typename Real>
struct FourierCoefficients {
  using Complex = complex_t<Real>;

  static constexpr long j_min = -1;
  std::vector<Complex> values;  // values[j+1] = a_j

  long j_max() const { return static_cast<long>(values.size()) - 2; }

  Complex at(long j) const {
    if (j < -1) return Complex(0);
    if (j > j_max()) throw std::out_of_range("FourierCoefficients: index beyond j_max");
    return values[static_cast<std::size_t>(j + 1)];
  }
};

template <typename Real>
complex_t<Real> evaluate(const SymbolParams<Real>& sym, const complex_t<Real>& t) {
  using std::abs;
  using std::exp;
  using std::log;
  using Complex = complex_t<Real>;
  if (!(abs(t) > Real(0))) throw std::domain_error("evaluate: t = 0");
  const Complex one_minus = Complex(1) - t;
  if (!(abs(one_minus) > Real(0))) return Complex(0);  // zero of order alpha at t = 1
  return exp(log(one_minus) * sym.alpha) * sym.f_eval(t) / t;
}

template <typename Real>
complex_t<Real> derivative(const SymbolParams<Real>& sym, const complex_t<Real>& t) {
  using std::abs;
  using std::exp;
  using std::log;
  using Complex = complex_t<Real>;
  if (!(abs(t) > Real(0))) throw std::domain_error("derivative: t = 0");
  const Complex one_minus = Complex(1) - t;
  if (!(abs(one_minus) > Real(0))) throw std::domain_error("derivative: t = 1");
  // a' = (1-t)^(alpha-1) [ -t^-2 (1-t) f - alpha t^-1 f + t^-1 (1-t) f' ]
  const Complex w = exp(log(one_minus) * (sym.alpha - Real(1)));
  const Complex f = sym.f_eval(t);
  const Complex fp = sym.f_deriv(t);
  return w * (-one_minus * f / (t * t) - sym.alpha * f / t + one_minus * fp / t);
}

/// Coefficients of t^-1 (1-t)^alpha f(t): the binomial series of (1-t)^alpha
/// convolved with f and shifted down by one.
template <typename Real>
FourierCoefficients<Real> fourier_coefficients(const SymbolParams<Real>& sym, long j_max) {
  using Complex = complex_t<Real>;
  if (j_max < -1) throw std::invalid_argument("fourier_coefficients: j_max < -1");
  // g_k = (-1)^k binom(alpha, k), via g_k = g_{k-1} (k-1-alpha)/k
  const std::size_t len = static_cast<std::size_t>(j_max + 2);
  std::vector<Real> binom(len, Real(0));
  if (len > 0) binom[0] = Real(1);
  for (std::size_t k = 1; k < len; ++k) binom[k] = binom[k - 1] * (Real(k - 1) - sym.alpha) / Real(k);

  FourierCoefficients<Real> out;
  out.values.assign(len, Complex(0));
  for (long j = -1; j <= j_max; ++j) {
    Complex acc(0);
    const long p = j + 1;  // power of t in b(t) = (1-t)^alpha f(t)
    for (std::size_t m = 0; m < sym.f_series.size(); ++m) {
      const long k = p - static_cast<long>(m);
      if (k < 0) break;
      acc += sym.f_series[m] * binom[static_cast<std::size_t>(k)];
    }
    out.values[static_cast<std::size_t>(p)] = acc;
  }
  return out;
}

/// Thrown by invert when Newton stalls; carries the last iterate so callers
/// can report the failing point.
class no_convergence_error : public std::runtime_error {
 public:
  no_convergence_error(const std::string& what, double residual, std::complex<double> last)
      : std::runtime_error(what), residual_(residual), last_iterate_(last) {}

  double residual() const { return residual_; }
  std::complex<double> last_iterate() const { return last_iterate_; }

 private:
  double residual_;
  std::complex<double> last_iterate_;
};

namespace detail {

template <typename Real>
struct newton_result {
  complex_t<Real> value{};
  Real residual{};
  bool converged = false;
};

/// Damped Newton iteration for a(t) = lambda. The step is halved while the
/// residual fails to decrease (at most 60 times); 100 iterations total.
template <typename Real>
newton_result<Real> newton_invert(const SymbolParams<Real>& sym, const complex_t<Real>& lambda,
                                  complex_t<Real> t, const Real& tol) {
  using std::abs;
  using Complex = complex_t<Real>;
  newton_result<Real> out;
  Complex fv = evaluate(sym, t) - lambda;
  Real res = abs(fv);
  for (int iter = 0; iter < 100; ++iter) {
    if (res <= tol) {
      out.value = t;
      out.residual = res;
      out.converged = true;
      return out;
    }
    const Complex dp = derivative(sym, t);
    if (!(abs(dp) > Real(0))) break;
    Complex step = fv / dp;
    Complex tn = t - step;
    Complex fn = evaluate(sym, tn) - lambda;
    Real rn = abs(fn);
    int halvings = 0;
    while (rn >= res && halvings < 60) {
      step /= Real(2);
      tn = t - step;
      fn = evaluate(sym, tn) - lambda;
      rn = abs(fn);
      ++halvings;
    }
    if (rn >= res) break;  // stalled even after damping
    t = tn;
    fv = fn;
    res = rn;
  }
  out.value = t;
  out.residual = res;
  out.converged = false;
  return out;
}

template <typename Real>
Real invert_tolerance(const Real& lambda_abs) {
  const Real unit = Real(100) * std::numeric_limits<Real>::epsilon();
  const Real spec = Real(1e-13);
  return (unit < spec ? unit : spec) * (Real(1) + lambda_abs);
}

}  // namespace detail

/// a^-1(lambda) by damped Newton from `seed`. The result satisfies
/// |a(t) - lambda| <= 1e-13 (1 + |lambda|) (tighter under the extended
/// backend). Throws no_convergence_error with the last iterate on failure.
template <typename Real>
complex_t<Real> invert(const SymbolParams<Real>& sym, const complex_t<Real>& lambda,
                       const complex_t<Real>& seed) {
  using std::abs;
  if (!(abs(lambda) > Real(0))) throw std::domain_error("invert: lambda = 0 is the singular value");
  const Real tol = detail::invert_tolerance<Real>(abs(lambda));
  auto r = detail::newton_invert(sym, lambda, seed, tol);
  if (!r.converged) {
    throw no_convergence_error(
        "invert: Newton failed to converge (lambda outside the invertible "
        "neighborhood, or bad seed)",
        static_cast<double>(r.residual),
        std::complex<double>(static_cast<double>(r.value.real()),
                             static_cast<double>(r.value.imag())));
  }
  return r.value;
}

/// Winding number of a about lambda, by uniform quadrature of
/// (1/2pi i) \oint a'/(a - lambda). Samples sit at half-step offsets so the
/// singular point t = 1 is never touched. Throws std::domain_error when
/// lambda comes within 1e-8 of the sampled curve.
template <typename Real>
int winding_number(const SymbolParams<Real>& sym, const complex_t<Real>& lambda, int samples = 4096,
                   Real* residual_out = nullptr) {
  using std::abs;
  using std::floor;
  using Complex = complex_t<Real>;
  if (samples < 16) throw std::invalid_argument("winding_number: too few samples");
  const Real two_pi = Real(2) * pi_v<Real>();
  Complex acc(0);
  Real min_dist = std::numeric_limits<Real>::max();
  for (int m = 0; m < samples; ++m) {
    const Real theta = two_pi * (Real(m) + Real(1) / Real(2)) / Real(samples);
    const Complex t = unit_polar<Real>(theta);
    const Complex av = evaluate(sym, t);
    const Real dist = abs(av - lambda);
    if (dist < min_dist) min_dist = dist;
    acc += derivative(sym, t) * Complex(Real(0), Real(1)) * t / (av - lambda);
  }
  if (min_dist < Real(1e-8))
    throw std::domain_error("winding_number: lambda is (numerically) on the range of a");
  // (1/2pi i) * (2pi/N) * sum = sum / (i N)
  const Real integral = (acc / Complex(Real(0), Real(samples))).real();
  const Real rounded = floor(integral + Real(1) / Real(2));
  if (residual_out) *residual_out = abs(integral - rounded);
  return static_cast<int>(rounded);
}

template <typename Real>
bool is_inside_range(const SymbolParams<Real>& sym, const complex_t<Real>& lambda,
                     int samples = 4096) {
  return winding_number(sym, lambda, samples) != 0;
}

}  // namespace toepeig

#endif  // TOEPEIG_SYMBOL_HPP
