// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef TOEPEIG_INNER_HPP
#define TOEPEIG_INNER_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "toepeig/eigensolver.hpp"
#include "toepeig/matrix.hpp"
#include "toepeig/symbol.hpp"

namespace toepeig {

/// One decay class log^ell(n) / n^(alpha r + m) of the inner expansion.
template <typename Real>
struct BasisTerm {
  int r = 0;
  int m = 1;
  int ell = 0;
  Real exponent{};  // alpha * r + m
};

/// Enumerates the decay classes and orders them slowest-first: exponent
/// ascending, higher log power first at equal exponent. Classes colliding in
/// (exponent, ell) at rational alpha are merged (keeping the smallest (r,m)),
/// since duplicates would make the extrapolation matrix singular.
template <typename Real>
std::vector<BasisTerm<Real>> basis_ordering(const Real& alpha, std::size_t count) {
  using std::abs;
  if (count == 0) throw std::invalid_argument("basis_ordering: count must be positive");
  Real emax(4);
  for (;;) {
    std::vector<BasisTerm<Real>> terms;
    for (int r = 0; alpha * Real(r) + Real(1) <= emax; ++r)
      for (int m = 1; alpha * Real(r) + Real(m) <= emax; ++m)
        for (int ell = 0; ell < m; ++ell)
          terms.push_back({r, m, ell, alpha * Real(r) + Real(m)});
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
      if (a.exponent != b.exponent) return a.exponent < b.exponent;
      if (a.ell != b.ell) return a.ell > b.ell;
      if (a.r != b.r) return a.r < b.r;
      return a.m < b.m;
    });
    std::vector<BasisTerm<Real>> unique;
    const Real tol = Real(1e-12);
    for (const auto& t : terms) {
      if (!unique.empty() && unique.back().ell == t.ell &&
          abs(unique.back().exponent - t.exponent) <= tol * (Real(1) + abs(t.exponent)))
        continue;
      unique.push_back(t);
    }
    if (unique.size() >= count) {
      unique.resize(count);
      return unique;
    }
    emax *= Real(2);
  }
}

/// xi_s(n) = log^ell(n) / n^exponent (natural logarithm).
template <typename Real>
Real xi_eval(const BasisTerm<Real>& term, std::size_t n) {
  using std::log;
  using std::pow;
  if (n < 2) throw std::invalid_argument("xi_eval: n must be >= 2");
  const Real ln = log(Real(n));
  Real num(1);
  for (int i = 0; i < term.ell; ++i) num *= ln;
  return num / pow(Real(n), term.exponent);
}

/// Extrapolated inner coefficients on the n1-grid: values(s-1, j1-1) holds
/// c^_s(sigma_j1) for s = 1..k-1, j1 = 1..n1. For real symbols the table is
/// conjugate-symmetric across j1 <-> n1-j1 (within the extrapolation
/// residual). The j1 = n1 column sits at the symbol's singularity; it is
/// stored for completeness but carries no approximation power
/// (interpolation never consults it).
template <typename Real>
struct CoefficientTable {
  using Complex = complex_t<Real>;

  Real alpha{};
  std::size_t n1 = 0;
  std::size_t k = 0;  // levels; k-1 stored coefficient rows
  bool real_symbol = true;
  std::vector<BasisTerm<Real>> basis;
  DenseMatrix<Complex> values;

  bool complete() const {
    return n1 > 0 && k >= 2 && basis.size() == k - 1 && values.rows() == k - 1 &&
           values.cols() == n1;
  }
};

/// Core linear solve of the extrapolation phase: given the preimages
/// t_{j_l, n_l} for sizes n_l, recovers the coefficients from
///   sigma^-1 n_l^-((alpha+1)/n_l) t_l - 1 = sum_s c_s xi_s(n_l).
/// Columns are equilibrated before the LU solve.
template <typename Real>
std::vector<complex_t<Real>> solve_inner_system(const Real& alpha,
                                                const std::vector<BasisTerm<Real>>& basis,
                                                const std::vector<std::size_t>& sizes,
                                                const std::vector<complex_t<Real>>& preimages,
                                                const complex_t<Real>& sigma) {
  using std::exp;
  using std::log;
  using Complex = complex_t<Real>;
  const std::size_t k1 = basis.size();
  if (sizes.size() != k1 || preimages.size() != k1)
    throw std::invalid_argument("solve_inner_system: level count mismatch");

  DenseMatrix<Complex> a(k1, k1);
  std::vector<Complex> rhs(k1);
  std::vector<Real> colscale(k1);
  for (std::size_t s = 0; s < k1; ++s) colscale[s] = xi_eval(basis[s], sizes[0]);
  for (std::size_t l = 0; l < k1; ++l) {
    const Real nl(sizes[l]);
    const Real radial = exp(log(nl) * (alpha + Real(1)) / nl);
    rhs[l] = preimages[l] / (sigma * radial) - Complex(1);
    for (std::size_t s = 0; s < k1; ++s)
      a(l, s) = Complex(xi_eval(basis[s], sizes[l]) / colscale[s], Real(0));
  }
  auto scaled = lu_solve(std::move(a), std::move(rhs));
  for (std::size_t s = 0; s < k1; ++s) scaled[s] /= colscale[s];
  return scaled;
}

namespace detail {

/// Rank of the eigenvalue owned by grid node jl. On the upper half-curve
/// rank = node; past the conjugate fold rank = node + 1 (ranks pair as
/// (j, n+1-j) while node angles pair as (j, n-j)). Node n_l has no owner:
/// its would-be expansion sits on the singularity; the deepest lower rank
/// stands in so the table column exists. Complex symbols pick the candidate
/// whose preimage angle is nearest the node.
template <typename Real>
std::size_t node_owner_rank(const Spectrum<Real>& spec, std::size_t jl, bool real_symbol) {
  const std::size_t nl = spec.n;
  if (real_symbol) {
    const std::size_t r = jl <= spec.upper_count ? jl : jl + 1;
    return r > nl ? nl : r;
  }
  const Real two_pi = Real(2) * pi_v<Real>();
  const Real target = two_pi * Real(jl) / Real(nl);
  std::size_t best = jl;
  Real best_dist = std::numeric_limits<Real>::max();
  for (std::size_t r = (jl > 1 ? jl - 1 : 1); r <= std::min(jl + 1, nl); ++r) {
    Real d = spec.grid_angles[r - 1] - target;
    if (d < Real(0)) d = -d;
    if (d > pi_v<Real>()) d = two_pi - d;
    if (d < best_dist) {
      best_dist = d;
      best = r;
    }
  }
  return best;
}

}  // namespace detail

/// Extrapolation at grid node j1: pulls the node-owned eigenvalue
/// lambda_{j_l}(T_{n_l}) from each spectrum (grid trick j_l = l j1,
/// n_l = l n1), inverts it, and solves for c^_1..c^_{k-1}.
template <typename Real>
std::vector<complex_t<Real>> extrapolate_inner(const SymbolParams<Real>& sym,
                                               const std::vector<Spectrum<Real>>& spectra,
                                               std::size_t j1, std::size_t k) {
  using std::abs;
  using Complex = complex_t<Real>;
  if (k < 2) throw std::invalid_argument("extrapolate_inner: k must be >= 2");
  if (spectra.size() < k - 1) throw std::invalid_argument("extrapolate_inner: missing spectra");
  const std::size_t n1 = spectra[0].n;
  if (j1 < 1 || j1 > n1) throw std::invalid_argument("extrapolate_inner: j1 out of range");

  const Real two_pi = Real(2) * pi_v<Real>();
  const bool real_symbol = sym.is_real();
  auto basis = basis_ordering(sym.alpha, k - 1);
  std::vector<std::size_t> sizes(k - 1);
  std::vector<Complex> preimages(k - 1);
  for (std::size_t l = 1; l <= k - 1; ++l) {
    const std::size_t nl = l * n1;
    const std::size_t jl = l * j1;
    if (spectra[l - 1].n != nl)
      throw std::invalid_argument("extrapolate_inner: spectra sizes must be n1, 2 n1, ...");
    const std::size_t rank = detail::node_owner_rank(spectra[l - 1], jl, real_symbol);
    const Complex lambda = spectra[l - 1].values[rank - 1];
    const Real theta = two_pi * Real(jl) / Real(nl);
    Complex t;
    if (!detail::eigen_preimage(sym, lambda, theta, nl, abs(lambda) < Real(1) / Real(2), t))
      throw no_convergence_error("extrapolate_inner: preimage inversion failed",
                                 0.0, std::complex<double>(0, 0));
    sizes[l - 1] = nl;
    preimages[l - 1] = t;
  }
  const Complex sigma = unit_polar<Real>(-two_pi * Real(j1) / Real(n1));
  return solve_inner_system(sym.alpha, basis, sizes, preimages, sigma);
}

/// Builds the full table (all grid nodes) with k levels from spectra at
/// sizes n1, 2 n1, ..., (k-1) n1.
template <typename Real>
CoefficientTable<Real> build_coefficient_table(const SymbolParams<Real>& sym,
                                               const std::vector<Spectrum<Real>>& spectra,
                                               std::size_t k) {
  CoefficientTable<Real> table;
  table.alpha = sym.alpha;
  table.n1 = spectra.at(0).n;
  table.k = k;
  table.real_symbol = sym.is_real();
  table.basis = basis_ordering(sym.alpha, k - 1);
  table.values = DenseMatrix<complex_t<Real>>(k - 1, table.n1);
  for (std::size_t j1 = 1; j1 <= table.n1; ++j1) {
    auto c = extrapolate_inner(sym, spectra, j1, k);
    for (std::size_t s = 0; s < k - 1; ++s) table.values(s, j1 - 1) = c[s];
  }
  return table;
}

/// Leading coefficient of the inner expansion in closed form,
///   p(z) = Log(a^2(z) / (c a'(z) z^2)),  c = f(1) Gamma(alpha+1) sin(alpha pi) / pi,
/// principal branch. Validation target for c^_1 (agreement holds modulo
/// 2 pi i: the extrapolated branch follows the curve continuously).
template <typename Real>
complex_t<Real> exact_first_coefficient(const SymbolParams<Real>& sym, const complex_t<Real>& z) {
  using std::abs;
  using std::log;
  using std::sin;
  using Complex = complex_t<Real>;
  if (!(abs(z) > Real(0)) || !(abs(Complex(1) - z) > Real(0)))
    throw std::domain_error("exact_first_coefficient: z in {0, 1}");
  const Complex da = derivative(sym, z);
  if (!(abs(da) > Real(0)))
    throw std::domain_error("exact_first_coefficient: a'(z) = 0");
  const Complex c = sym.f_eval(Complex(1)) * gamma_fn(sym.alpha + Real(1)) *
                    sin(sym.alpha * pi_v<Real>()) / pi_v<Real>();
  const Complex av = evaluate(sym, z);
  return log(av * av / (c * da * z * z));
}

namespace detail {

/// The `count` grid indices closest in circular angle to theta, drawn from
/// j1 = 1..n1-1 (the singular node n1 carries no approximation power);
/// exact midpoints resolve to the smaller index.
inline std::vector<std::size_t> select_nodes(std::size_t n1, std::size_t count, double theta) {
  const double two_pi = 6.283185307179586476925286766559;
  count = std::min(count, n1 - 1);
  if (2 * (count + 2) >= n1) {
    std::vector<std::pair<double, std::size_t>> d;
    d.reserve(n1 - 1);
    for (std::size_t j = 1; j < n1; ++j) {
      double dd = std::abs(two_pi * double(j) / double(n1) - theta);
      dd = std::min(dd, two_pi - dd);
      d.emplace_back(dd, j);
    }
    std::sort(d.begin(), d.end());
    std::vector<std::size_t> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = d[i].second;
    return out;
  }
  // two-pointer expansion about the fractional grid position
  const double p = theta * double(n1) / two_pi;
  auto node_id = [n1](long c) {
    long m = c % static_cast<long>(n1);
    if (m <= 0) m += static_cast<long>(n1);
    return static_cast<std::size_t>(m);  // in 1..n1
  };
  long lo = static_cast<long>(std::floor(p));
  long hi = lo + 1;
  std::vector<std::size_t> out;
  out.reserve(count);
  while (out.size() < count) {
    while (node_id(lo) == n1) --lo;
    while (node_id(hi) == n1) ++hi;
    const double dlo = p - double(lo);
    const double dhi = double(hi) - p;
    bool take_lo;
    if (dlo != dhi)
      take_lo = dlo < dhi;
    else
      take_lo = node_id(lo) < node_id(hi);  // exact midpoint: smaller index
    if (take_lo) {
      out.push_back(node_id(lo));
      --lo;
    } else {
      out.push_back(node_id(hi));
      ++hi;
    }
  }
  return out;
}

/// Closest `count` nodes to theta among the closed upper half-curve
/// 1..floor(n1/2). Used for real symbols, whose stored coefficients carry a
/// principal-branch wrap across sigma = -1 and a log singularity at
/// sigma = 1; one-branch stencils keep the interpolated data smooth.
inline std::vector<std::size_t> select_nodes_upper(std::size_t n1, std::size_t count,
                                                   double theta) {
  const double two_pi = 6.283185307179586476925286766559;
  const std::size_t hi_node = n1 / 2;
  count = std::min(count, hi_node);
  const double p = theta * double(n1) / two_pi;
  long lo = std::min<long>(static_cast<long>(hi_node), std::max<long>(1, static_cast<long>(std::floor(p))));
  long hi = lo + 1;
  std::vector<std::size_t> out;
  out.reserve(count);
  while (out.size() < count) {
    const bool lo_ok = lo >= 1;
    const bool hi_ok = hi <= static_cast<long>(hi_node);
    bool take_lo;
    if (lo_ok && hi_ok) {
      const double dlo = std::abs(p - double(lo));
      const double dhi = std::abs(double(hi) - p);
      take_lo = dlo != dhi ? dlo < dhi : true;  // midpoint: smaller index
    } else {
      take_lo = lo_ok;
    }
    if (take_lo) {
      out.push_back(static_cast<std::size_t>(lo));
      --lo;
    } else {
      out.push_back(static_cast<std::size_t>(hi));
      ++hi;
    }
  }
  return out;
}

template <typename Real>
complex_t<Real> lagrange_at(const CoefficientTable<Real>& table, std::size_t s,
                            const std::vector<std::size_t>& nodes, const complex_t<Real>& omega) {
  using Complex = complex_t<Real>;
  const Real two_pi = Real(2) * pi_v<Real>();
  std::vector<Complex> xs(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    xs[i] = unit_polar<Real>(-two_pi * Real(nodes[i]) / Real(table.n1));
  Complex total(0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Complex li(1);
    for (std::size_t m = 0; m < nodes.size(); ++m)
      if (m != i) li *= (omega - xs[m]) / (xs[i] - xs[m]);
    total += table.values(s - 1, nodes[i] - 1) * li;
  }
  return total;
}

}  // namespace detail

/// Lagrange interpolation of c^_s at a point of the unit circle through the
/// k-s+8 closest stored nodes (complex node variable). A target within
/// 1e-12 rad of a stored node returns that node's value directly. Real
/// symbols interpolate on the upper half-curve and reach the lower half by
/// Schwarz reflection, conj(c^_s(conj omega)).
template <typename Real>
complex_t<Real> interpolate_coefficient(const CoefficientTable<Real>& table, std::size_t s,
                                        const complex_t<Real>& omega) {
  using std::arg;
  using std::conj;
  using std::round;
  using Complex = complex_t<Real>;
  if (!table.complete()) throw std::runtime_error("interpolate_coefficient: incomplete table");
  if (s < 1 || s > table.k - 1) throw std::invalid_argument("interpolate_coefficient: s out of range");

  const Real two_pi = Real(2) * pi_v<Real>();
  const Real theta = lift_angle(-arg(omega));
  const std::size_t n1 = table.n1;

  // node hit
  const Real pos = theta * Real(n1) / two_pi;
  const long nearest = static_cast<long>(round(static_cast<double>(pos)));
  Real dist = theta - two_pi * Real(nearest) / Real(n1);
  if (dist < Real(0)) dist = -dist;
  if (dist < Real(1e-12)) {
    long j = nearest % static_cast<long>(n1);
    if (j <= 0) j += static_cast<long>(n1);
    return table.values(s - 1, static_cast<std::size_t>(j) - 1);
  }

  const std::size_t count = table.k - s + 8;
  if (table.real_symbol) {
    if (theta > pi_v<Real>())
      return conj(interpolate_coefficient(table, s, conj(omega)));
    const auto nodes = detail::select_nodes_upper(n1, count, static_cast<double>(theta));
    return detail::lagrange_at(table, s, nodes, omega);
  }
  const auto nodes = detail::select_nodes(n1, count, static_cast<double>(theta));
  return detail::lagrange_at(table, s, nodes, omega);
}

/// k-term inner approximation at grid node j of size n:
///   a( omega_n^j n^((alpha+1)/n) (1 + sum_{s<k} c^_s(omega_n^j) xi_s(n)) ).
template <typename Real>
complex_t<Real> approx_inner_eigenvalue(const SymbolParams<Real>& sym,
                                        const CoefficientTable<Real>& table, std::size_t n,
                                        std::size_t j, std::size_t k) {
  using std::exp;
  using std::log;
  using Complex = complex_t<Real>;
  if (n < 2 || n < table.n1) throw std::invalid_argument("approx_inner_eigenvalue: need n >= n1");
  if (k < 1 || k > table.k) throw std::invalid_argument("approx_inner_eigenvalue: k exceeds table");
  if (j < 1 || j > n) throw std::invalid_argument("approx_inner_eigenvalue: j out of range");

  const Real two_pi = Real(2) * pi_v<Real>();
  const Complex omega = unit_polar<Real>(-two_pi * Real(j) / Real(n));
  Complex corr(1);
  for (std::size_t s = 1; s < k; ++s)
    corr += interpolate_coefficient(table, s, omega) * xi_eval(table.basis[s - 1], n);
  const Real radial = exp(log(Real(n)) * (sym.alpha + Real(1)) / Real(n));
  return evaluate(sym, omega * radial * corr);
}

}  // namespace toepeig

#endif  // TOEPEIG_INNER_HPP
