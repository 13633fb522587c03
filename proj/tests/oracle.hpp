// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "chowkit/rational.hpp"

namespace chowkit::testing {

// Independent Hilbert-function oracle. It lists monomials itself, spans the
// degree-d ideal by multiplying every relation with every cofactor monomial,
// and row-reduces with its own elimination loop. Nothing here calls the
// engine's basis machinery.
namespace oracle {

using Mono = std::vector<int>;
using Pol = std::map<Mono, Rational>;

inline std::vector<Mono> monomials(const std::vector<int>& deg, int d) {
  std::vector<Mono> out;
  Mono m(deg.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == deg.size()) {
      if (left == 0) out.push_back(m);
      return;
    }
    for (int e = 0; e * deg[i] <= left; ++e) {
      m[i] = e;
      self(self, i + 1, left - e * deg[i]);
    }
    m[i] = 0;
  };
  rec(rec, 0, d);
  return out;
}

inline int degree(const Mono& m, const std::vector<int>& deg) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * deg[i];
  return d;
}

inline std::size_t rank_of(std::vector<std::vector<Rational>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

inline std::vector<std::size_t> hilbert(const std::vector<int>& deg, const std::vector<Pol>& rels, int top) {
  std::vector<std::size_t> h;
  for (int d = 0; d <= top; ++d) {
    const auto monos = monomials(deg, d);
    std::map<Mono, std::size_t> col;
    for (std::size_t i = 0; i < monos.size(); ++i) col[monos[i]] = i;
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : rels) {
      const int rd = degree(r.begin()->first, deg);
      if (rd > d) continue;
      for (const auto& m : monomials(deg, d - rd)) {
        std::vector<Rational> row(monos.size());
        for (const auto& [e, c] : r) {
          Mono prod = e;
          for (std::size_t i = 0; i < prod.size(); ++i) prod[i] += m[i];
          row[col.at(prod)] += c;
        }
        rows.push_back(std::move(row));
      }
    }
    h.push_back(monos.size() - rank_of(std::move(rows)));
  }
  return h;
}

}  // namespace oracle

}  // namespace chowkit::testing
