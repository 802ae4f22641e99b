// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: precompute coefficient caches, emit matrix-less
// spectrum approximations, reproduce error tables/figure data, and validate
// a cache against the library's self-checks.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "toepeig/toepeig.hpp"

namespace {

struct Options {
  std::string precision = "hw";
  std::string alpha;
  std::string f_list = "1";
  std::size_t n1 = 100;
  std::size_t levels_inner = 7;
  std::size_t levels_extreme = 6;
  std::size_t j0 = 0;
  std::string eps = "1/8";
  std::string n_list;
  std::string k_list;
  std::size_t kmax = 6;
  std::size_t oracle_cap = 2048;
  unsigned threads = 0;
  std::string cache_path;
  std::string out_path;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

template <typename Real>
std::vector<toepeig::complex_t<Real>> parse_f(const std::string& list) {
  std::vector<toepeig::complex_t<Real>> f;
  for (const auto& item : split(list, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      f.emplace_back(toepeig::scalar_traits<Real>::parse(item), Real(0));
    else
      f.emplace_back(toepeig::scalar_traits<Real>::parse(item.substr(0, colon)),
                     toepeig::scalar_traits<Real>::parse(item.substr(colon + 1)));
  }
  return f;
}

std::vector<std::size_t> parse_sizes(const std::string& list) {
  std::vector<std::size_t> out;
  for (const auto& item : split(list, ',')) out.push_back(std::stoul(item));
  return out;
}

std::pair<std::size_t, std::size_t> parse_k(const std::string& list) {
  if (list.empty()) return {0, 0};
  const auto parts = split(list, ',');
  const std::size_t k1 = std::stoul(parts[0]);
  return {k1, parts.size() > 1 ? std::stoul(parts[1]) : k1};
}

template <typename Real>
toepeig::RunConfig<Real> make_config(const Options& o) {
  toepeig::RunConfig<Real> cfg;
  cfg.alpha = toepeig::scalar_traits<Real>::parse(o.alpha);
  cfg.f_series = parse_f<Real>(o.f_list);
  cfg.n1 = o.n1;
  cfg.k_inner = o.levels_inner;
  cfg.k_extreme = o.levels_extreme;
  cfg.j0 = o.j0;
  cfg.epsilon = toepeig::Fraction::parse(o.eps);
  if (!o.n_list.empty()) cfg.target_sizes = parse_sizes(o.n_list);
  std::tie(cfg.k1, cfg.k2) = parse_k(o.k_list);
  cfg.oracle_cap = o.oracle_cap;
  cfg.threads = o.threads;
  return cfg;
}

template <typename Real>
int cmd_precompute(const Options& o) {
  if (o.alpha.empty() || o.cache_path.empty()) {
    std::cerr << "precompute: --alpha and --cache are required\n";
    return 2;
  }
  const auto cfg = make_config<Real>(o);
  const auto t0 = std::chrono::steady_clock::now();
  auto cache = toepeig::run_precompute(cfg, o.cache_path);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "precompute: n1=" << cache.inner.n1 << " levels_inner=" << cache.inner.k
            << " levels_extreme=" << cache.extreme.k << " j0=" << cache.extreme.j0 << " ("
            << std::fixed << std::setprecision(1) << secs << " s)\n"
            << "cache written to " << o.cache_path << "\n";
  return 0;
}

template <typename Real>
int cmd_approx(const Options& o) {
  if (o.cache_path.empty() || o.n_list.empty() || o.out_path.empty()) {
    std::cerr << "approx: --cache, --n and --out are required\n";
    return 2;
  }
  auto cache = toepeig::read_cache<Real>(o.cache_path);
  const auto [k1_raw, k2_raw] = parse_k(o.k_list);
  const std::size_t k1 = k1_raw ? k1_raw : std::min<std::size_t>(5, cache.inner.k);
  const std::size_t k2 = k2_raw ? k2_raw : std::min<std::size_t>(5, cache.extreme.k);
  const auto eps = toepeig::Fraction::parse(o.eps);
  const std::size_t n = parse_sizes(o.n_list).at(0);
  auto rows = toepeig::approximate_all(cache, n, k1, k2, eps, o.threads);
  toepeig::write_approx_csv(o.out_path, rows);
  std::cout << "approx: n=" << n << " k1=" << k1 << " k2=" << k2 << " eps=" << eps.num << "/"
            << eps.den << " -> " << o.out_path << "\n";
  return 0;
}

template <typename Real>
int cmd_errors(const Options& o) {
  if (o.cache_path.empty() || o.out_path.empty()) {
    std::cerr << "errors: --cache and --out are required\n";
    return 2;
  }
  auto cache = toepeig::read_cache<Real>(o.cache_path);
  const auto eps = toepeig::Fraction::parse(o.eps);
  const auto [k1_raw, k2_raw] = parse_k(o.k_list);
  const std::size_t k1 = k1_raw ? k1_raw : std::min<std::size_t>(5, cache.inner.k);
  const std::size_t k2 = k2_raw ? k2_raw : std::min<std::size_t>(5, cache.extreme.k);
  std::vector<std::size_t> sizes =
      o.n_list.empty() ? std::vector<std::size_t>{256, 512, 1024} : parse_sizes(o.n_list);

  std::filesystem::create_directories(o.out_path);
  std::vector<std::tuple<std::size_t, std::size_t, Real, Real>> table_rows;
  std::cout << "k     n       AE_max        AE_normalized\n";
  for (const std::size_t n : sizes) {
    auto exact = toepeig::oracle_spectrum(cache.symbol, n, o.oracle_cap);
    const std::size_t ksweep = std::min(o.kmax, cache.inner.k);
    for (std::size_t k = 1; k <= ksweep; ++k) {
      const auto [ae, norm] = toepeig::inner_window_error(cache, exact, k, eps, o.threads);
      table_rows.emplace_back(k, n, ae, norm);
      std::cout << std::left << std::setw(6) << k << std::setw(8) << n << std::scientific
                << std::setprecision(4) << double(ae) << "    " << double(norm) << "\n"
                << std::defaultfloat;
    }
    // figure data at the configured k1/k2; the global splice needs the
    // extreme window inside the tracked range
    if (eps.floor_mul(n) <= cache.extreme.j0) {
      auto rep = toepeig::error_report(cache, exact, std::min(k1, cache.inner.k),
                                       std::min(k2, cache.extreme.k), eps, o.threads);
      std::vector<std::size_t> all_js(n), inner_js, extreme_js;
      std::vector<Real> re_all(n), re_inner, re_extreme;
      for (std::size_t j = 1; j <= n; ++j) {
        all_js[j - 1] = j;
        re_all[j - 1] = rep.rel_err[j - 1];
        if (rep.regimes[j - 1] == toepeig::Regime::inner) {
          inner_js.push_back(j);
          re_inner.push_back(rep.rel_err[j - 1]);
        } else {
          extreme_js.push_back(j);
          re_extreme.push_back(rep.rel_err[j - 1]);
        }
      }
      const std::string base = o.out_path + "/";
      toepeig::write_figure_csv(base + "figure_global_n" + std::to_string(n) + ".csv", n, all_js,
                                re_all);
      toepeig::write_figure_csv(base + "figure_inner_k" + std::to_string(k1) + "_n" +
                                    std::to_string(n) + ".csv",
                                n, inner_js, re_inner);
      if (!extreme_js.empty())
        toepeig::write_figure_csv(base + "figure_extreme_k" + std::to_string(k2) + "_n" +
                                      std::to_string(n) + ".csv",
                                  n, extreme_js, re_extreme);
    } else {
      std::cout << "(n=" << n << ": floor(eps n) exceeds tracked j0=" << cache.extreme.j0
                << "; figure data skipped, pick a smaller --eps for the splice)\n";
    }
  }
  toepeig::write_table_csv(o.out_path + "/table.csv", table_rows);
  std::cout << "error tables and figure data written under " << o.out_path << "\n";
  return 0;
}

template <typename Real>
int cmd_validate(const Options& o) {
  using Complex = toepeig::complex_t<Real>;
  using std::abs;
  if (o.cache_path.empty()) {
    std::cerr << "validate: --cache is required\n";
    return 2;
  }
  auto cache = toepeig::read_cache<Real>(o.cache_path);
  const auto& sym = cache.symbol;
  const Real two_pi = Real(2) * toepeig::pi_v<Real>();
  int failures = 0;
  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << (detail.empty() ? "" : " (" + detail + ")")
              << "\n";
    if (!ok) ++failures;
  };

  check("cache shape", cache.inner.complete() && cache.extreme.complete(), "");

  {
    bool sorted = true;
    for (std::size_t s = 0; s + 1 < cache.inner.basis.size(); ++s) {
      const auto &a = cache.inner.basis[s], &b = cache.inner.basis[s + 1];
      if (!(a.exponent < b.exponent || (a.exponent == b.exponent && a.ell > b.ell))) sorted = false;
    }
    check("basis ordering strictly decreasing in decay", sorted, "");
  }

  {
    // c^_1 against the closed-form leading coefficient (principal branch);
    // the singular node is excluded (z = 1 is its domain-error point).
    Real worst(0);
    for (std::size_t j1 = 1; j1 < cache.inner.n1; ++j1) {
      const Complex sigma = toepeig::unit_polar<Real>(-two_pi * Real(j1) / Real(cache.inner.n1));
      const Complex p = toepeig::exact_first_coefficient(sym, sigma);
      const Real dev = abs(cache.inner.values(0, j1 - 1) - p) / abs(p);
      if (dev > worst) worst = dev;
    }
    check("leading coefficient matches closed form to 1e-2",
          worst <= Real(1) / Real(100), "max rel dev " + toepeig::format_real<Real>(worst));
  }

  {
    // conjugate symmetry of the stored table for real symbols, tolerance
    // scaled by the truncation residual of the last stored coefficient
    bool ok = true;
    std::string detail;
    if (sym.is_real() && cache.inner.k >= 3) {
      const std::size_t n1 = cache.inner.n1;
      const std::size_t last = cache.inner.k - 2;  // row index of c^_{k-1}
      Real worst(0);
      for (std::size_t s = 1; s + 1 <= cache.inner.k - 1; ++s) {
        const Real xs = toepeig::xi_eval(cache.inner.basis[s - 1], n1);
        const Real xlast = toepeig::xi_eval(cache.inner.basis[last], n1);
        for (std::size_t j1 = 1; j1 < n1; ++j1) {
          if (2 * j1 == n1) continue;  // self-paired axis node stores the upper pair member
          const Complex v = cache.inner.values(s - 1, j1 - 1);
          const Complex w = conj(cache.inner.values(s - 1, (n1 - j1) - 1));
          const Real resid = (abs(cache.inner.values(last, j1 - 1)) +
                              abs(cache.inner.values(last, (n1 - j1) - 1))) *
                             xlast / xs;
          const Real dev = abs(v - w) / (Real(10) * resid + Real(1e-12));
          if (dev > worst) worst = dev;
        }
      }
      ok = worst <= Real(1);
      detail = "worst dev / (10 residual) = " + toepeig::format_real<Real>(worst);
    }
    check("table conjugate symmetry within 10x residual (real symbol)", ok, detail);
  }

  {
    Real worst(0);
    const int samples = 200;
    for (int i = 1; i <= samples; ++i) {
      const Real rho = Real(1) + Real(1) / Real(1000) + (Real(2) / Real(10) - Real(1) / Real(1000)) * Real(i) / Real(samples);
      const Complex t = rho * toepeig::unit_polar<Real>(-two_pi * Real(i) / Real(samples + 1));
      const Complex lambda = toepeig::evaluate(sym, t);
      const Complex back = toepeig::invert(sym, lambda, t * Real(1.01));
      const Real res = abs(toepeig::evaluate(sym, back) - lambda) / (Real(1) + abs(lambda));
      if (res > worst) worst = res;
    }
    check("inversion round trip within 1e-13 (relative)", worst <= Real(1e-13),
          "max residual " + toepeig::format_real<Real>(worst));
  }

  {
    bool ok = true;
    std::string detail;
    try {
      const Complex mid = toepeig::evaluate(
          sym, toepeig::unit_polar<Real>(-toepeig::pi_v<Real>()) * Real(1.0001));
      ok = toepeig::is_inside_range(sym, mid * Real(0.5), 4096) ||
           toepeig::winding_number(sym, mid * Real(0.5), 4096) != 0;
    } catch (const std::exception& e) {
      detail = e.what();
      ok = false;
    }
    check("winding check at a mid-range point", ok, detail);
  }

  std::cout << (failures == 0 ? "validate: all checks passed\n"
                              : "validate: " + std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? 0 : 1;
}

template <typename Real>
int dispatch(const std::string& cmd, const Options& o) {
  if (cmd == "precompute") return cmd_precompute<Real>(o);
  if (cmd == "approx") return cmd_approx<Real>(o);
  if (cmd == "errors") return cmd_errors<Real>(o);
  return cmd_validate<Real>(o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix-less eigenvalue approximation for Hessenberg Toeplitz matrices "
               "generated by t^-1 (1-t)^alpha f(t)"};
  app.require_subcommand(1);

  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--alpha", o.alpha, "singularity exponent alpha in (0,1)");
    sub->add_option("--f", o.f_list, "polynomial coefficients of f, e.g. '1' or '1,0.5' or 're:im,...'");
    sub->add_option("--n1", o.n1, "precompute grid size");
    sub->add_option("--levels-inner", o.levels_inner, "inner extrapolation levels k");
    sub->add_option("--levels-extreme", o.levels_extreme, "extreme extrapolation levels k");
    sub->add_option("--j0", o.j0, "tracked extreme indices per end (default n1)");
    sub->add_option("--eps", o.eps, "regime split fraction, rational '1/8' or decimal");
    sub->add_option("--n", o.n_list, "target size(s), comma separated");
    sub->add_option("--k", o.k_list, "approximation terms k (or 'k1,k2')");
    sub->add_option("--kmax", o.kmax, "largest k in error-table sweeps");
    sub->add_option("--oracle-cap", o.oracle_cap, "largest size the dense oracle accepts (<= 8192)");
    sub->add_option("--threads", o.threads, "worker threads (0 = hardware)");
    sub->add_option("--cache", o.cache_path, "coefficient cache file");
    sub->add_option("--out", o.out_path, "output file or directory");
    sub->add_option("--precision", o.precision, "scalar backend: hw | extended")
        ->check(CLI::IsMember({"hw", "extended"}));
  };
  add_common(app.add_subcommand("precompute", "solve the small-size spectra and extrapolate the "
                                              "expansion coefficients into a cache file"));
  add_common(app.add_subcommand("approx", "matrix-less approximation of the full spectrum at size n"));
  add_common(app.add_subcommand("errors", "error tables and figure data against the dense oracle"));
  add_common(app.add_subcommand("validate", "self-checks of a coefficient cache"));

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    if (o.precision == "extended") return dispatch<toepeig::extended_real>(cmd, o);
    return dispatch<double>(cmd, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
