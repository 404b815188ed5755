// Test-only oracles, independent of the Groebner path they cross-check.
#pragma once

#include <algorithm>
#include <functional>
#include <map>

#include "chp/fp_matrix.hpp"
#include "chp/module.hpp"

namespace chp::oracles {

inline void monomials_up_to(const Ring& r, uint32_t maxdeg, std::vector<Monomial>& out) {
  Monomial m(r.nvars);
  std::function<void(size_t, uint32_t)> rec = [&](size_t i, uint32_t rem) {
    if (i + 1 == r.nvars) {
      for (uint32_t e = 0; e <= rem; ++e) {
        m[i] = e;
        out.push_back(m);
      }
      m[i] = 0;
      return;
    }
    for (uint32_t e = 0; e <= rem; ++e) {
      m[i] = e;
      rec(i + 1, rem - e);
    }
    m[i] = 0;
  };
  rec(0, maxdeg);
}

// Brute-force cumulative standard-monomial table of R^rank / <gens> up to
// total degree d_count: echelonize every product (monomial * generator) of
// degree <= d_work with coordinates in descending POT order, so pivot rows
// are exactly the achieved leading terms.  Converges to the true table from
// above as d_work grows; callers compare two d_work values.
inline std::vector<uint64_t> brute_force_standard_table(
    const Ring& r, size_t rank, const std::vector<ModuleVector>& gens, uint32_t d_count,
    uint32_t d_work) {
  std::vector<Monomial> monos;
  monomials_up_to(r, d_work, monos);
  std::vector<std::pair<size_t, Monomial>> keys;
  for (size_t pos = 0; pos < rank; ++pos)
    for (const auto& m : monos) keys.push_back({pos, m});
  std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    return pot_greater({a.first, a.second}, {b.first, b.second});
  });
  std::map<std::pair<size_t, Monomial>, size_t> index;
  for (size_t i = 0; i < keys.size(); ++i) index[keys[i]] = i;

  ColSpace span(keys.size(), r.p);
  for (const auto& g : gens) {
    uint64_t gdeg = 0;
    for (size_t pos = 0; pos < rank; ++pos)
      if (!g[pos].is_zero()) gdeg = std::max(gdeg, g[pos].degree());
    for (const auto& m : monos) {
      if (m.degree() + gdeg > d_work) continue;
      std::vector<uint32_t> v(keys.size(), 0);
      for (size_t pos = 0; pos < rank; ++pos)
        for (const auto& [mm, c] : g[pos].terms()) v[index.at({pos, m * mm})] = c;
      span.insert(std::move(v));
    }
  }

  std::vector<bool> nonstandard(keys.size(), false);
  for (size_t piv : span.pivots()) nonstandard[piv] = true;
  std::vector<uint64_t> table(d_count + 1, 0);
  for (size_t i = 0; i < keys.size(); ++i) {
    uint64_t deg = keys[i].second.degree();
    if (deg <= d_count && !nonstandard[i]) ++table[deg];
  }
  uint64_t acc = 0;
  for (auto& t : table) {
    acc += t;
    t = acc;
  }
  return table;
}

}  // namespace chp::oracles
