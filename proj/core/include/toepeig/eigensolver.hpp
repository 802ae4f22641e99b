// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef TOEPEIG_EIGENSOLVER_HPP
#define TOEPEIG_EIGENSOLVER_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "toepeig/matrix.hpp"
#include "toepeig/symbol.hpp"
#include "toepeig/toeplitz.hpp"

namespace toepeig {

/// Canonically ordered spectrum. `values[j-1]` is the eigenvalue of rank j,
/// ranked by the angle of its symbol preimage a^-1(lambda) on the grid
/// orientation (clockwise, matching omega_n = exp(-2 pi i / n)). `angles`
/// keeps the lifted argument of the eigenvalue itself for reporting; it is
/// monotone along the curve but genuinely not monotone inside the extreme
/// clusters, where eigenvalues leave the symbol's range.
template <typename Real>
struct Spectrum {
  using Complex = complex_t<Real>;

  std::size_t n = 0;
  std::vector<Complex> values;
  std::vector<Real> angles;       // lifted Arg(lambda) in [0, 2pi)
  std::vector<Real> grid_angles;  // preimage angle in [0, 2pi), the ranking key
  std::size_t upper_count = 0;    // ranks with grid angle <= pi (conjugate fold)
  std::size_t preimage_failures = 0;
};

namespace detail {

template <typename Matrix>
void balance(Matrix& a) {
  using std::abs;
  using Real = decltype(abs(a(0, 0)));
  const std::size_t n = a.rows();
  const Real radix(2), sqrdx(4);
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      Real r(0), c(0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) {
          c += abs(a(j, i));
          r += abs(a(i, j));
        }
      if (c > Real(0) && r > Real(0)) {
        Real g = r / radix, f(1), s = c + r;
        while (c < g) {
          f *= radix;
          c *= sqrdx;
        }
        g = r * radix;
        while (c > g) {
          f /= radix;
          c /= sqrdx;
        }
        if ((c + r) / f < Real(0.95) * s) {
          done = false;
          const Real ginv = Real(1) / f;
          for (std::size_t j = 0; j < n; ++j) a(i, j) *= ginv;
          for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
        }
      }
    }
  }
}

/// Francis double-shift QR on a real upper Hessenberg matrix (in place).
/// Deflates when a subdiagonal drops below eps * (|h_ii| + |h_jj|).
template <typename Real>
std::vector<complex_t<Real>> francis_qr(DenseMatrix<Real>& h, long sweep_budget) {
  using std::abs;
  using std::sqrt;
  using Complex = complex_t<Real>;
  const int n = static_cast<int>(h.rows());
  const Real eps = std::numeric_limits<Real>::epsilon();
  std::vector<Complex> eig;
  eig.reserve(n);

  Real anorm(0);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += abs(h(i, j));

  int nn = n - 1;
  Real shift_total(0);
  long sweeps = 0;
  while (nn >= 0) {
    int its = 0;
    for (;;) {
      int l;
      for (l = nn; l >= 1; --l) {
        Real s = abs(h(l - 1, l - 1)) + abs(h(l, l));
        if (s == Real(0)) s = anorm;
        if (abs(h(l, l - 1)) <= eps * s) {
          h(l, l - 1) = Real(0);
          break;
        }
      }
      if (l < 0) l = 0;
      Real x = h(nn, nn);
      if (l == nn) {
        eig.emplace_back(x + shift_total, Real(0));
        --nn;
        break;
      }
      Real y = h(nn - 1, nn - 1);
      Real w = h(nn, nn - 1) * h(nn - 1, nn);
      if (l == nn - 1) {
        Real p = (y - x) / Real(2);
        Real q = p * p + w;
        Real z = sqrt(abs(q));
        x += shift_total;
        if (q >= Real(0)) {
          z = p + (p >= Real(0) ? z : -z);
          eig.emplace_back(x + z, Real(0));
          eig.emplace_back(abs(z) > Real(0) ? x - w / z : x + z, Real(0));
        } else {
          eig.emplace_back(x + p, z);
          eig.emplace_back(x + p, -z);
        }
        nn -= 2;
        break;
      }
      if (++sweeps > sweep_budget)
        throw std::runtime_error("eigenvalues: QR sweep budget exhausted (100 n)");
      if (its == 10 || its == 20 || its == 30) {
        shift_total += x;
        for (int i = 0; i <= nn; ++i) h(i, i) -= x;
        const Real s = abs(h(nn, nn - 1)) + abs(h(nn - 1, nn - 2));
        y = x = Real(0.75) * s;
        w = Real(-0.4375) * s * s;
      }
      if (++its > 40) throw std::runtime_error("eigenvalues: block failed to deflate");

      Real p(0), q(0), r(0), z(0);
      int m;
      for (m = nn - 2; m >= l; --m) {
        z = h(m, m);
        const Real rr = x - z;
        const Real ss = y - z;
        p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - z - rr - ss;
        r = h(m + 2, m + 1);
        const Real sc = abs(p) + abs(q) + abs(r);
        p /= sc;
        q /= sc;
        r /= sc;
        if (m == l) break;
        const Real u = abs(h(m, m - 1)) * (abs(q) + abs(r));
        const Real v = abs(p) * (abs(h(m - 1, m - 1)) + abs(z) + abs(h(m + 1, m + 1)));
        if (u <= eps * v) break;
      }
      for (int i = m + 2; i <= nn; ++i) {
        h(i, i - 2) = Real(0);
        if (i != m + 2) h(i, i - 3) = Real(0);
      }
      for (int k = m; k <= nn - 1; ++k) {
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = (k != nn - 1) ? h(k + 2, k - 1) : Real(0);
          x = abs(p) + abs(q) + abs(r);
          if (x != Real(0)) {
            p /= x;
            q /= x;
            r /= x;
          }
        }
        Real s = sqrt(p * p + q * q + r * r);
        if (p < Real(0)) s = -s;
        if (s == Real(0)) continue;
        if (k == m) {
          if (l != m) h(k, k - 1) = -h(k, k - 1);
        } else {
          h(k, k - 1) = -s * x;
        }
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= nn; ++j) {
          Real pp = h(k, j) + q * h(k + 1, j);
          if (k != nn - 1) {
            pp += r * h(k + 2, j);
            h(k + 2, j) -= pp * z;
          }
          h(k + 1, j) -= pp * y;
          h(k, j) -= pp * x;
        }
        const int mmin = nn < k + 3 ? nn : k + 3;
        for (int i = l; i <= mmin; ++i) {
          Real pp = x * h(i, k) + y * h(i, k + 1);
          if (k != nn - 1) {
            pp += z * h(i, k + 2);
            h(i, k + 2) -= pp * r;
          }
          h(i, k + 1) -= pp * q;
          h(i, k) -= pp;
        }
      }
    }
  }
  return eig;
}

/// Single-shift (Wilkinson) QR with complex Givens rotations for complex
/// upper Hessenberg matrices.
template <typename Real>
std::vector<complex_t<Real>> wilkinson_qr(DenseMatrix<complex_t<Real>>& h, long sweep_budget) {
  using std::abs;
  using std::conj;
  using std::sqrt;
  using Complex = complex_t<Real>;
  const int n = static_cast<int>(h.rows());
  const Real eps = std::numeric_limits<Real>::epsilon();
  std::vector<Complex> eig;
  eig.reserve(n);

  Real anorm(0);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += abs(h(i, j));

  std::vector<Real> cs(n);
  std::vector<Complex> sn(n);
  int nn = n - 1;
  long sweeps = 0;
  while (nn >= 0) {
    int its = 0;
    for (;;) {
      int l;
      for (l = nn; l >= 1; --l) {
        Real s = abs(h(l - 1, l - 1)) + abs(h(l, l));
        if (s == Real(0)) s = anorm;
        if (abs(h(l, l - 1)) <= eps * s) {
          h(l, l - 1) = Complex(0);
          break;
        }
      }
      if (l < 0) l = 0;
      if (l == nn) {
        eig.push_back(h(nn, nn));
        --nn;
        break;
      }
      if (++sweeps > sweep_budget)
        throw std::runtime_error("eigenvalues: QR sweep budget exhausted (100 n)");

      Complex shift;
      if (its == 10 || its == 20 || its == 30) {
        const Real s = abs(h(nn, nn - 1)) + (nn >= 2 ? abs(h(nn - 1, nn - 2)) : Real(0));
        shift = Complex(s, Real(0));
      } else {
        const Complex a = h(nn - 1, nn - 1), b = h(nn - 1, nn);
        const Complex c = h(nn, nn - 1), d = h(nn, nn);
        const Complex tr = a + d;
        const Complex disc = sqrt(tr * tr - Real(4) * (a * d - b * c));
        const Complex r1 = (tr + disc) / Real(2);
        const Complex r2 = (tr - disc) / Real(2);
        shift = abs(r1 - d) < abs(r2 - d) ? r1 : r2;
      }
      if (++its > 40) throw std::runtime_error("eigenvalues: block failed to deflate");

      for (int i = l; i <= nn; ++i) h(i, i) -= shift;
      for (int i = l; i < nn; ++i) {
        const Complex x = h(i, i);
        const Complex yv = h(i + 1, i);
        const Real ax = abs(x), ay = abs(yv);
        const Real r = sqrt(ax * ax + ay * ay);
        if (!(r > Real(0))) {
          cs[i] = Real(1);
          sn[i] = Complex(0);
          continue;
        }
        if (!(ax > Real(0))) {
          cs[i] = Real(0);
          sn[i] = conj(yv) / ay;
        } else {
          cs[i] = ax / r;
          sn[i] = (x / ax) * conj(yv) / r;
        }
        for (int j = i; j <= nn; ++j) {
          const Complex hi = h(i, j), hj = h(i + 1, j);
          h(i, j) = cs[i] * hi + sn[i] * hj;
          h(i + 1, j) = -conj(sn[i]) * hi + cs[i] * hj;
        }
        h(i + 1, i) = Complex(0);
      }
      for (int i = l; i < nn; ++i) {
        const Real c = cs[i];
        const Complex s = sn[i];
        const int top = std::min(i + 1, nn);
        for (int rr = l; rr <= top; ++rr) {
          const Complex u = h(rr, i), v = h(rr, i + 1);
          h(rr, i) = u * c + v * conj(s);
          h(rr, i + 1) = -u * s + v * c;
        }
      }
      for (int i = l; i <= nn; ++i) h(i, i) += shift;
    }
  }
  return eig;
}

template <typename Real>
DenseMatrix<Real> transpose_real(const DenseMatrix<complex_t<Real>>& m) {
  DenseMatrix<Real> h(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) h(i, j) = m(j, i).real();
  return h;
}

template <typename T>
DenseMatrix<T> transpose(const DenseMatrix<T>& m) {
  DenseMatrix<T> h(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) h(j, i) = m(i, j);
  return h;
}

}  // namespace detail

/// All eigenvalues of a dense lower Hessenberg matrix. The matrix is
/// transposed to upper Hessenberg (spectrum invariant), balanced, and run
/// through shifted QR: Francis double-shift when every entry is real,
/// complex single-shift otherwise.
template <typename Real>
std::vector<complex_t<Real>> eigenvalues(const DenseMatrix<complex_t<Real>>& matrix) {
  using std::abs;
  const std::size_t n = matrix.rows();
  if (n == 0 || matrix.cols() != n) throw std::invalid_argument("eigenvalues: square input required");
  const long budget = 100L * static_cast<long>(n);

  bool real_input = true;
  for (const auto& v : matrix.data())
    if (abs(v.imag()) != Real(0)) {
      real_input = false;
      break;
    }
  if (real_input) {
    auto h = detail::transpose_real<Real>(matrix);
    detail::balance(h);
    return detail::francis_qr(h, budget);
  }
  auto h = detail::transpose(matrix);
  detail::balance(h);
  return detail::wilkinson_qr<Real>(h, budget);
}

/// Real-storage fast path (used by the pipeline for real symbols).
template <typename Real>
std::vector<complex_t<Real>> eigenvalues_real_hessenberg(DenseMatrix<Real> lower) {
  const std::size_t n = lower.rows();
  if (n == 0) throw std::invalid_argument("eigenvalues: empty matrix");
  auto h = detail::transpose(lower);
  detail::balance(h);
  return detail::francis_qr(h, 100L * static_cast<long>(n));
}

namespace detail {

/// Preimage of one eigenvalue, attempted from the singularity-local seed
/// t ~ 1 - (lambda/f(1))^(1/alpha) and from a grid seed at the rough angular
/// position. Accepts only preimages outside the unit disk.
template <typename Real>
bool eigen_preimage(const SymbolParams<Real>& sym, const complex_t<Real>& lambda,
                    const Real& rough_theta, std::size_t n, bool singular_first,
                    complex_t<Real>& out) {
  using std::abs;
  using std::exp;
  using std::log;
  using Complex = complex_t<Real>;
  const Real tol = detail::invert_tolerance<Real>(abs(lambda));

  const Complex seed_grid =
      unit_polar<Real>(-rough_theta) *
      exp(Complex(log(Real(n)) * (sym.alpha + Real(1)) / Real(n), Real(0)));
  Complex seed_sing;
  bool have_sing = abs(lambda) > Real(0);
  if (have_sing) seed_sing = Complex(1) - exp(log(lambda / sym.f_series[0]) / sym.alpha);

  Complex seeds[2];
  int count = 0;
  if (singular_first && have_sing) seeds[count++] = seed_sing;
  seeds[count++] = seed_grid;
  if (!singular_first && have_sing) seeds[count++] = seed_sing;

  for (int i = 0; i < count; ++i) {
    auto r = newton_invert(sym, lambda, seeds[i], tol);
    if (r.converged && abs(r.value) > Real(1) - Real(1e-6)) {
      out = r.value;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Ranks raw eigenvalues canonically: ascending angle of the symbol
/// preimage (grid orientation), ties by modulus. Preimages are found by
/// Newton; an eigenvalue whose inversion fails keeps its position from the
/// argument ordering (counted in `preimage_failures`).
template <typename Real>
Spectrum<Real> order_spectrum(std::vector<complex_t<Real>> raw, const SymbolParams<Real>& sym) {
  using std::abs;
  using std::arg;
  using Complex = complex_t<Real>;
  const std::size_t n = raw.size();
  const Real two_pi = Real(2) * pi_v<Real>();

  // rough order: lifted argument, ties by modulus
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<Real> lifted(n), mod(n);
  for (std::size_t i = 0; i < n; ++i) {
    lifted[i] = lift_angle(arg(raw[i]));
    mod[i] = abs(raw[i]);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (lifted[a] != lifted[b]) return lifted[a] < lifted[b];
    return mod[a] < mod[b];
  });

  // modulus scale separating "near the singularity" from "on the curve"
  std::vector<Real> mods_sorted = mod;
  std::nth_element(mods_sorted.begin(), mods_sorted.begin() + n / 2, mods_sorted.end());
  const Real small_cut = mods_sorted[n / 2] / Real(2);

  Spectrum<Real> spec;
  spec.n = n;
  spec.values.resize(n);
  spec.angles.resize(n);
  spec.grid_angles.resize(n);

  std::vector<Real> key(n);
  std::vector<std::size_t> order(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = idx[r];
    const Real rough = two_pi * Real(r + 1) / Real(n);
    Complex t;
    if (detail::eigen_preimage(sym, raw[i], rough, n, mod[i] < small_cut, t)) {
      key[r] = lift_angle(-arg(t));
    } else {
      key[r] = rough;
      ++spec.preimage_failures;
    }
    order[r] = r;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (key[a] != key[b]) return key[a] < key[b];
    return mod[idx[a]] < mod[idx[b]];
  });

  const Real pi = pi_v<Real>();
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = idx[order[j]];
    spec.values[j] = raw[i];
    spec.angles[j] = lifted[i];
    spec.grid_angles[j] = key[order[j]];
    if (spec.grid_angles[j] <= pi) ++spec.upper_count;
  }
  return spec;
}

/// Convenience: spectrum of T_n(a) in canonical order.
template <typename Real>
Spectrum<Real> spectrum_of(const SymbolParams<Real>& sym, std::size_t n) {
  auto coeffs = fourier_coefficients(sym, static_cast<long>(n));
  ToeplitzOperator<Real> op(std::move(coeffs), n);
  std::vector<complex_t<Real>> raw;
  if (sym.is_real())
    raw = eigenvalues_real_hessenberg(build_dense_real(op));
  else
    raw = eigenvalues<Real>(build_dense(op));
  return order_spectrum(std::move(raw), sym);
}

/// Residual ||T v - lambda v|| / ||T||_F with v from one inverse-iteration
/// step on the transposed (upper Hessenberg) matrix; Givens elimination in
/// O(n^2). Diagnostic used by tests and `validate`.
template <typename Real>
Real backward_error(const ToeplitzOperator<Real>& op, const complex_t<Real>& lambda) {
  using std::abs;
  using std::conj;
  using std::sqrt;
  using Complex = complex_t<Real>;
  const std::size_t n = op.n;

  // rows of H - lambda I, H = T^T (upper Hessenberg)
  DenseMatrix<Complex> h(n, n, Complex(0));
  Real hnorm2(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = (i == 0 ? 0 : i - 1); j < n; ++j) {
      Complex v = op.entry(j, i);
      hnorm2 += abs(v) * abs(v);
      if (i == j) v -= lambda;
      h(i, j) = v;
    }
  const Real hnorm = sqrt(hnorm2);

  // Givens QR sweep, then back substitution against an all-ones rhs
  std::vector<Complex> rhs(n, Complex(1));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Complex x = h(i, i), y = h(i + 1, i);
    const Real ax = abs(x), ay = abs(y);
    const Real r = sqrt(ax * ax + ay * ay);
    if (!(r > Real(0))) continue;
    Real c;
    Complex s;
    if (!(ax > Real(0))) {
      c = Real(0);
      s = conj(y) / ay;
    } else {
      c = ax / r;
      s = (x / ax) * conj(y) / r;
    }
    const std::size_t jmax = std::min(n - 1, i + 2);
    for (std::size_t j = i; j <= jmax; ++j) {
      const Complex u = h(i, j), v = h(i + 1, j);
      h(i, j) = c * u + s * v;
      h(i + 1, j) = -conj(s) * u + c * v;
    }
    const Complex u = rhs[i], v = rhs[i + 1];
    rhs[i] = c * u + s * v;
    rhs[i + 1] = -conj(s) * u + c * v;
  }
  std::vector<Complex> vvec(n, Complex(0));
  const Real tiny = std::numeric_limits<Real>::min();
  for (std::size_t ii = n; ii-- > 0;) {
    Complex ssum = rhs[ii];
    const std::size_t jmax = std::min(n - 1, ii + 2);
    for (std::size_t j = ii + 1; j <= jmax; ++j) ssum -= h(ii, j) * vvec[j];
    Complex d = h(ii, ii);
    if (abs(d) < tiny) d = Complex(tiny);
    vvec[ii] = ssum / d;
  }
  Real vnorm(0);
  for (const auto& v : vvec) vnorm += abs(v) * abs(v);
  vnorm = sqrt(vnorm);

  // residual on the transpose: rows of T^T are columns of T
  Real rnorm(0);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc(0);
    for (std::size_t j = (i == 0 ? 0 : i - 1); j < n; ++j) acc += op.entry(j, i) * vvec[j];
    acc -= lambda * vvec[i];
    rnorm += abs(acc) * abs(acc);
  }
  return sqrt(rnorm) / (hnorm * vnorm);
}

}  // namespace toepeig

#endif  // TOEPEIG_EIGENSOLVER_HPP
