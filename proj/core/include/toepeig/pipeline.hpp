// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef TOEPEIG_PIPELINE_HPP
#define TOEPEIG_PIPELINE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <fstream>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "toepeig/cache.hpp"
#include "toepeig/errors.hpp"
#include "toepeig/extreme.hpp"
#include "toepeig/inner.hpp"

namespace toepeig {

namespace detail {

/// Static-chunk-free parallel loop; tasks pull indices from a shared
/// counter. Results must go to disjoint slots for determinism.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned nt = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

constexpr std::size_t oracle_hard_cap = 8192;

/// One run's worth of knobs. `k_inner`/`k_extreme` size the precompute
/// tables; `k1`/`k2` are the terms actually consumed by approximations
/// (0 = largest sensible default, min(5, available)).
template <typename Real>
struct RunConfig {
  Real alpha{};
  std::vector<complex_t<Real>> f_series{complex_t<Real>(1)};
  std::size_t n1 = 100;
  std::size_t k_inner = 7;
  std::size_t k_extreme = 6;
  std::size_t j0 = 0;  // 0: track all of 1..n1
  Fraction epsilon{1, 8};
  std::vector<std::size_t> target_sizes{256, 512, 1024};
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  std::size_t oracle_cap = 2048;
  unsigned threads = 0;

  SymbolParams<Real> symbol() const { return SymbolParams<Real>(alpha, f_series); }

  void validate() const {
    if (n1 < 8) throw std::invalid_argument("config: n1 too small");
    if (k_inner < 2) throw std::invalid_argument("config: k_inner must be >= 2");
    if (k_extreme < 1) throw std::invalid_argument("config: k_extreme must be >= 1");
    if (j0 > n1) throw std::invalid_argument("config: j0 must be <= n1");
    if (!(epsilon.num > 0) || 2 * epsilon.num >= epsilon.den)
      throw std::invalid_argument("config: epsilon must lie in (0, 1/2)");
  }

  std::size_t effective_j0() const { return j0 == 0 ? n1 : j0; }
  std::size_t effective_k1(std::size_t table_k) const {
    return k1 == 0 ? std::min<std::size_t>(5, table_k) : k1;
  }
  std::size_t effective_k2(std::size_t table_k) const {
    return k2 == 0 ? std::min<std::size_t>(5, table_k) : k2;
  }
};

/// Spectra for the precompute ladder n1, 2 n1, ..., levels n1, solved
/// concurrently (each dense solve stays single-threaded).
template <typename Real>
std::vector<Spectrum<Real>> precompute_spectra(const SymbolParams<Real>& sym, std::size_t n1,
                                               std::size_t levels, unsigned threads) {
  std::vector<Spectrum<Real>> spectra(levels);
  detail::parallel_for(levels, threads,
                       [&](std::size_t i) { spectra[i] = spectrum_of(sym, (i + 1) * n1); });
  return spectra;
}

/// Precompute -> extrapolate for both regimes; returns the cache content and
/// writes it when `path` is nonempty. Deterministic for a fixed config and
/// precision backend.
template <typename Real>
CacheFile<Real> run_precompute(const RunConfig<Real>& cfg, const std::string& path) {
  cfg.validate();
  const auto sym = cfg.symbol();
  const std::size_t levels = std::max(cfg.k_inner - 1, cfg.k_extreme);
  auto spectra = precompute_spectra(sym, cfg.n1, levels, cfg.threads);

  CoefficientTable<Real> table;
  table.alpha = sym.alpha;
  table.n1 = cfg.n1;
  table.k = cfg.k_inner;
  table.real_symbol = sym.is_real();
  table.basis = basis_ordering(sym.alpha, cfg.k_inner - 1);
  table.values = DenseMatrix<complex_t<Real>>(cfg.k_inner - 1, cfg.n1);
  std::vector<Spectrum<Real>> inner_spectra(spectra.begin(), spectra.begin() + (cfg.k_inner - 1));
  detail::parallel_for(cfg.n1, cfg.threads, [&](std::size_t i) {
    auto c = extrapolate_inner(sym, inner_spectra, i + 1, cfg.k_inner);
    for (std::size_t s = 0; s + 1 < cfg.k_inner; ++s) table.values(s, i) = c[s];
  });

  std::vector<Spectrum<Real>> extreme_spectra(spectra.begin(), spectra.begin() + cfg.k_extreme);
  auto extreme = build_extreme_table(sym, extreme_spectra, cfg.effective_j0(), cfg.k_extreme);

  CacheFile<Real> cache{sym, std::move(table), std::move(extreme)};
  if (!path.empty()) write_cache(path, cache);
  return cache;
}

/// One output row of the approximation phase.
template <typename Real>
struct ApproxRow {
  std::size_t j;
  complex_t<Real> value;
  Regime regime;
};

/// Matrix-less approximation of the full spectrum at size n: extreme
/// power laws on [1, w] and [n-w+1, n], interpolated inner expansion
/// elsewhere; O(k) work per eigenvalue. For real symbols the rows are
/// computed on the upper half and mirrored by conjugation (pairing
/// j <-> n+1-j), so the output is conjugate-symmetric by construction.
template <typename Real>
std::vector<ApproxRow<Real>> approximate_all(const CacheFile<Real>& cache, std::size_t n,
                                             std::size_t k1, std::size_t k2, Fraction epsilon,
                                             unsigned threads = 0) {
  using std::conj;
  using Complex = complex_t<Real>;
  if (n < cache.inner.n1) throw std::invalid_argument("approximate_all: n must be >= n1");
  const std::size_t w = epsilon.floor_mul(n);
  if (w > cache.extreme.j0)
    throw std::out_of_range("approximate_all: untracked extreme index (floor(eps n) > j0)");
  if (k1 < 1 || k1 > cache.inner.k) throw std::invalid_argument("approximate_all: bad k1");
  if (k2 < 1 || k2 > cache.extreme.k) throw std::invalid_argument("approximate_all: bad k2");

  std::vector<ApproxRow<Real>> rows(n);
  const bool mirror = cache.symbol.is_real();
  const std::size_t head = mirror ? (n + 1) / 2 : n;

  detail::parallel_for(head, threads, [&](std::size_t i) {
    const std::size_t j = i + 1;
    ApproxRow<Real>& row = rows[i];
    row.j = j;
    row.regime = regime_of(j, n, w);
    if (row.regime == Regime::inner)
      row.value = approx_inner_eigenvalue(cache.symbol, cache.inner, n, j, k1);
    else
      row.value = approx_extreme_eigenvalue(cache.extreme, n, j, k2);
  });
  if (mirror) {
    for (std::size_t j = head + 1; j <= n; ++j) {
      const std::size_t src = n + 1 - j;
      rows[j - 1] = {j, conj(rows[src - 1].value), regime_of(j, n, w)};
    }
    if (n % 2 == 1 && head >= 1 && regime_of(head, n, w) == Regime::inner) {
      // self-paired middle row of an odd-size real spectrum is real
      rows[head - 1].value = Complex(rows[head - 1].value.real(), Real(0));
    }
  } else {
    detail::parallel_for(n - head, threads, [&](std::size_t i) {
      const std::size_t j = head + i + 1;
      ApproxRow<Real>& row = rows[j - 1];
      row.j = j;
      row.regime = regime_of(j, n, w);
      if (row.regime == Regime::inner)
        row.value = approx_inner_eigenvalue(cache.symbol, cache.inner, n, j, k1);
      else
        row.value = approx_extreme_eigenvalue(cache.extreme, n, j, k2);
    });
  }
  return rows;
}

/// Inner approximation paired to the ranked eigenvalue j of an exact
/// spectrum: node j on the upper half-curve, conjugated mirror node on the
/// lower half (the pairing that reproduces the reference error tables).
template <typename Real>
complex_t<Real> approx_for_rank(const CacheFile<Real>& cache, const Spectrum<Real>& exact,
                                std::size_t n, std::size_t j, std::size_t k1) {
  using std::conj;
  if (!cache.symbol.is_real())
    return approx_inner_eigenvalue(cache.symbol, cache.inner, n, j, k1);
  if (j <= exact.upper_count)
    return approx_inner_eigenvalue(cache.symbol, cache.inner, n, j, k1);
  return conj(approx_inner_eigenvalue(cache.symbol, cache.inner, n, n + 1 - j, k1));
}

/// Max inner AE over the window (floor(eps n), n - floor(eps n)] plus its
/// normalization by xi_k1(n); needs no extreme tracking (the spec's error
/// tables at large n use windows wider than the tracked extreme range).
template <typename Real>
std::pair<Real, Real> inner_window_error(const CacheFile<Real>& cache, const Spectrum<Real>& exact,
                                         std::size_t k1, Fraction epsilon, unsigned threads = 0) {
  const std::size_t n = exact.n;
  const std::size_t w = epsilon.floor_mul(n);
  if (2 * w >= n) throw std::invalid_argument("inner_window_error: window is empty");
  std::vector<Real> ae(n - 2 * w);
  detail::parallel_for(n - 2 * w, threads, [&](std::size_t i) {
    const std::size_t j = w + 1 + i;
    ae[i] = absolute_error<Real>(exact.values[j - 1], approx_for_rank(cache, exact, n, j, k1));
  });
  Real best(0);
  for (const Real& v : ae)
    if (v > best) best = v;
  return {best, best / xi_eval(cache.inner.basis[k1 - 1], n)};
}

/// Full error report against the dense oracle at size n.
template <typename Real>
ErrorReport<Real> error_report(const CacheFile<Real>& cache, const Spectrum<Real>& exact,
                               std::size_t k1, std::size_t k2, Fraction epsilon,
                               unsigned threads = 0) {
  using Complex = complex_t<Real>;
  const std::size_t n = exact.n;
  const std::size_t w = epsilon.floor_mul(n);
  if (w > cache.extreme.j0)
    throw std::out_of_range("error_report: untracked extreme index (floor(eps n) > j0)");

  ErrorReport<Real> rep;
  rep.n = n;
  rep.k_inner = k1;
  rep.k_extreme = k2;
  rep.epsilon = epsilon;
  rep.abs_err.resize(n);
  rep.rel_err.resize(n);
  rep.regimes.resize(n);

  detail::parallel_for(n, threads, [&](std::size_t i) {
    const std::size_t j = i + 1;
    rep.regimes[i] = regime_of(j, n, w);
    Complex approx;
    if (rep.regimes[i] == Regime::inner)
      approx = approx_for_rank(cache, exact, n, j, k1);
    else
      approx = approx_extreme_eigenvalue(cache.extreme, n, j, k2);
    rep.abs_err[i] = absolute_error<Real>(exact.values[i], approx);
    rep.rel_err[i] = relative_error<Real>(exact.values[i], approx);
  });

  rep.max_inner_ae = Real(0);
  for (std::size_t j = w + 1; j <= n - w; ++j)
    if (rep.abs_err[j - 1] > rep.max_inner_ae) rep.max_inner_ae = rep.abs_err[j - 1];
  rep.normalized_ae = rep.max_inner_ae / xi_eval(cache.inner.basis[k1 - 1], n);
  return rep;
}

/// Dense oracle spectrum with the size caps from the config.
template <typename Real>
Spectrum<Real> oracle_spectrum(const SymbolParams<Real>& sym, std::size_t n,
                               std::size_t oracle_cap) {
  if (n > oracle_hard_cap)
    throw std::invalid_argument("oracle: size exceeds the hard cap 8192");
  if (n > oracle_cap)
    throw std::invalid_argument("oracle: size exceeds the configured cap; raise --oracle-cap");
  return spectrum_of(sym, n);
}

// ---- CSV emission -------------------------------------------------------

namespace detail {

inline std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw std::runtime_error("cannot open output file " + path);
  return out;
}

}  // namespace detail

template <typename Real>
void write_approx_csv(const std::string& path, const std::vector<ApproxRow<Real>>& rows) {
  auto out = detail::open_csv(path);
  out << "j,re(lambda),im(lambda),regime\n";
  for (const auto& r : rows)
    out << r.j << ',' << format_real<Real>(r.value.real()) << ','
        << format_real<Real>(r.value.imag()) << ',' << regime_name(r.regime) << '\n';
  if (!out) throw std::runtime_error("write failed on " + path);
}

/// Long-format rows `k,n,AE_max,AE_normalized` across a k-sweep and sizes.
template <typename Real>
void write_table_csv(const std::string& path,
                     const std::vector<std::tuple<std::size_t, std::size_t, Real, Real>>& rows) {
  auto out = detail::open_csv(path);
  out << "k,n,AE_max,AE_normalized\n";
  for (const auto& [k, n, ae, norm] : rows)
    out << k << ',' << n << ',' << format_real<Real>(ae) << ',' << format_real<Real>(norm) << '\n';
  if (!out) throw std::runtime_error("write failed on " + path);
}

/// Per-index figure data over the abscissa 2 pi j / (n+1).
template <typename Real>
void write_figure_csv(const std::string& path, std::size_t n, const std::vector<std::size_t>& js,
                      const std::vector<Real>& re_values) {
  using std::log10;
  auto out = detail::open_csv(path);
  out << "j,abscissa,log10_RE\n";
  const Real two_pi = Real(2) * pi_v<Real>();
  for (std::size_t i = 0; i < js.size(); ++i) {
    const Real abscissa = two_pi * Real(js[i]) / (Real(n) + Real(1));
    out << js[i] << ',' << format_real<Real>(abscissa) << ','
        << format_real<Real>(log10(re_values[i])) << '\n';
  }
  if (!out) throw std::runtime_error("write failed on " + path);
}

}  // namespace toepeig

#endif  // TOEPEIG_PIPELINE_HPP
