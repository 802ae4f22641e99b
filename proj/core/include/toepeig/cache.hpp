// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef TOEPEIG_CACHE_HPP
#define TOEPEIG_CACHE_HPP

#include <nlohmann/json.hpp>

#include <fstream>
#include <string>
#include <vector>

#include "toepeig/extreme.hpp"
#include "toepeig/inner.hpp"
#include "toepeig/symbol.hpp"

namespace toepeig {

/// Persisted product of the precompute phase. All scalar payloads are
/// serialized as decimal strings with round-trip precision, so a cache
/// written under one precision backend reloads bit-identically under the
/// same backend.
template <typename Real>
struct CacheFile {
  SymbolParams<Real> symbol;
  CoefficientTable<Real> inner;
  ExtremeTable<Real> extreme;
};

namespace detail {

constexpr int cache_version = 1;

template <typename Real>
nlohmann::ordered_json complex_json(const complex_t<Real>& z) {
  return nlohmann::ordered_json::array({format_real<Real>(z.real()), format_real<Real>(z.imag())});
}

template <typename Real>
complex_t<Real> complex_from_json(const nlohmann::json& j) {
  return complex_t<Real>(scalar_traits<Real>::parse(j.at(0).template get<std::string>()),
                         scalar_traits<Real>::parse(j.at(1).template get<std::string>()));
}

}  // namespace detail

template <typename Real>
void write_cache(const std::string& path, const CacheFile<Real>& cache) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["format"] = "toepeig-cache";
  j["version"] = detail::cache_version;
  j["precision"] = scalar_traits<Real>::tag;
  j["alpha"] = format_real<Real>(cache.symbol.alpha);
  j["f_series"] = ordered_json::array();
  for (const auto& c : cache.symbol.f_series) j["f_series"].push_back(detail::complex_json<Real>(c));

  ordered_json inner;
  inner["n1"] = cache.inner.n1;
  inner["k"] = cache.inner.k;
  inner["basis"] = ordered_json::array();
  for (const auto& t : cache.inner.basis) {
    ordered_json bt;
    bt["r"] = t.r;
    bt["m"] = t.m;
    bt["ell"] = t.ell;
    bt["exponent"] = format_real<Real>(t.exponent);
    inner["basis"].push_back(bt);
  }
  inner["grid_values"] = ordered_json::array();
  for (std::size_t s = 0; s + 1 < cache.inner.k; ++s) {
    ordered_json row = ordered_json::array();
    for (std::size_t j1 = 0; j1 < cache.inner.n1; ++j1)
      row.push_back(detail::complex_json<Real>(cache.inner.values(s, j1)));
    inner["grid_values"].push_back(row);
  }
  j["inner"] = inner;

  ordered_json ext;
  ext["j0"] = cache.extreme.j0;
  ext["k"] = cache.extreme.k;
  ext["sizes"] = cache.extreme.sizes;
  auto dump_q = [&](const DenseMatrix<complex_t<Real>>& q) {
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < q.rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (std::size_t m = 0; m < q.cols(); ++m) row.push_back(detail::complex_json<Real>(q(r, m)));
      rows.push_back(row);
    }
    return rows;
  };
  ext["q_low"] = dump_q(cache.extreme.q_low);
  ext["q_high"] = dump_q(cache.extreme.q_high);
  j["extreme"] = ext;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_cache: cannot open " + path);
  out << j.dump(1) << '\n';
  if (!out) throw std::runtime_error("write_cache: write failed on " + path);
}

template <typename Real>
CacheFile<Real> read_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_cache: cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.value("format", "") != "toepeig-cache")
    throw std::runtime_error("read_cache: not a coefficient cache: " + path);
  if (j.value("version", 0) != detail::cache_version)
    throw std::runtime_error("read_cache: unsupported cache version");
  const std::string tag = j.value("precision", "");
  if (tag != scalar_traits<Real>::tag)
    throw std::runtime_error("read_cache: cache precision '" + tag + "' does not match backend '" +
                             std::string(scalar_traits<Real>::tag) + "'");

  const Real alpha = scalar_traits<Real>::parse(j.at("alpha").template get<std::string>());
  std::vector<complex_t<Real>> f;
  for (const auto& c : j.at("f_series")) f.push_back(detail::complex_from_json<Real>(c));
  SymbolParams<Real> sym(alpha, std::move(f));

  CoefficientTable<Real> table;
  const auto& inner = j.at("inner");
  table.alpha = alpha;
  table.n1 = inner.at("n1").template get<std::size_t>();
  table.k = inner.at("k").template get<std::size_t>();
  table.real_symbol = sym.is_real();
  for (const auto& bt : inner.at("basis")) {
    BasisTerm<Real> t;
    t.r = bt.at("r").template get<int>();
    t.m = bt.at("m").template get<int>();
    t.ell = bt.at("ell").template get<int>();
    t.exponent = scalar_traits<Real>::parse(bt.at("exponent").template get<std::string>());
    table.basis.push_back(t);
  }
  table.values = DenseMatrix<complex_t<Real>>(table.k - 1, table.n1);
  const auto& rows = inner.at("grid_values");
  for (std::size_t s = 0; s + 1 < table.k; ++s)
    for (std::size_t j1 = 0; j1 < table.n1; ++j1)
      table.values(s, j1) = detail::complex_from_json<Real>(rows.at(s).at(j1));
  if (!table.complete()) throw std::runtime_error("read_cache: inner table incomplete");

  ExtremeTable<Real> ext;
  const auto& e = j.at("extreme");
  ext.alpha = alpha;
  ext.j0 = e.at("j0").template get<std::size_t>();
  ext.k = e.at("k").template get<std::size_t>();
  ext.sizes = e.at("sizes").template get<std::vector<std::size_t>>();
  auto load_q = [&](const nlohmann::json& rows_j) {
    DenseMatrix<complex_t<Real>> q(ext.j0, ext.k);
    for (std::size_t r = 0; r < ext.j0; ++r)
      for (std::size_t m = 0; m < ext.k; ++m)
        q(r, m) = detail::complex_from_json<Real>(rows_j.at(r).at(m));
    return q;
  };
  ext.q_low = load_q(e.at("q_low"));
  ext.q_high = load_q(e.at("q_high"));
  if (!ext.complete()) throw std::runtime_error("read_cache: extreme table incomplete");

  return CacheFile<Real>{std::move(sym), std::move(table), std::move(ext)};
}

}  // namespace toepeig

#endif  // TOEPEIG_CACHE_HPP
