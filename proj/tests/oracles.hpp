// Copyright 2026 The chromasum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference implementations used only by tests. They favour obviousness over
// speed and share no code with the library algorithms they check.

#ifndef CHROMASUM_TESTS_ORACLES_HPP
#define CHROMASUM_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "chromasum/coloring.hpp"
#include "chromasum/graph.hpp"
#include "chromasum/graph_io.hpp"

namespace oracle {

using chromasum::Color;
using chromasum::Graph;
using chromasum::Vertex;

inline std::vector<std::vector<int>> distances(const Graph& g) {
  const int n = static_cast<int>(g.vertex_count());
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

inline std::vector<std::int64_t> sums(const Graph& g,
                                      const std::vector<Color>& c) {
  std::vector<std::int64_t> s(g.vertex_count(), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    s[g.edges()[e].u] += c[e];
    s[g.edges()[e].v] += c[e];
  }
  return s;
}

inline bool proper(const Graph& g, const std::vector<Color>& c,
                   std::int64_t modulus = 0) {
  for (std::size_t a = 0; a < g.edge_count(); ++a) {
    for (std::size_t b = a + 1; b < g.edge_count(); ++b) {
      const auto& x = g.edges()[a];
      const auto& y = g.edges()[b];
      if (x.u != y.u && x.u != y.v && x.v != y.u && x.v != y.v) continue;
      if (modulus == 0 ? c[a] == c[b]
                       : ((c[a] - c[b]) % modulus + modulus) % modulus == 0) {
        return false;
      }
    }
  }
  return true;
}

inline bool distinguishing(const Graph& g, const std::vector<Color>& c, int r,
                           const std::vector<std::vector<int>>& d) {
  const auto s = sums(g, c);
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v = u + 1; v < g.vertex_count(); ++v)
      if (d[u][v] >= 1 && d[u][v] <= r && s[u] == s[v]) return false;
  return true;
}

// Enumerates every proper colouring with colours 1..k in edge-id order and
// tests each complete one; the only pruning is properness.
inline bool feasible(const Graph& g, int r, int k) {
  const auto d = distances(g);
  std::vector<Color> c(g.edge_count(), 0);
  const std::size_t m = g.edge_count();
  auto clash = [&](std::size_t e, Color col) {
    for (std::size_t f = 0; f < e; ++f) {
      if (c[f] != col) continue;
      const auto& x = g.edges()[e];
      const auto& y = g.edges()[f];
      if (x.u == y.u || x.u == y.v || x.v == y.u || x.v == y.v) return true;
    }
    return false;
  };
  // Iterative DFS so the call depth stays trivial.
  std::size_t e = 0;
  if (m == 0) return distinguishing(g, c, r, d);
  c[0] = 0;
  while (true) {
    ++c[e];
    while (c[e] <= k && clash(e, c[e])) ++c[e];
    if (c[e] > k) {
      c[e] = 0;
      if (e == 0) return false;
      --e;
      continue;
    }
    if (e + 1 == m) {
      if (distinguishing(g, c, r, d)) return true;
      continue;
    }
    ++e;
  }
}

inline int naive_index(const Graph& g, int r) {
  int k = std::max<int>(1, static_cast<int>(g.max_degree()));
  while (!feasible(g, r, k)) ++k;
  return k;
}

inline std::string data_path(const std::string& name) {
  return std::string(CHROMASUM_TEST_DATA) + "/" + name;
}

inline std::vector<Graph> small_catalog() {
  return chromasum::parse_graph6_catalog(
      chromasum::read_file(data_path("connected_le6.g6")));
}

struct ParamRow {
  std::int64_t delta;
  int r;
  std::int64_t q;
  std::int64_t big_q;
};

// Table computed offline with 60-digit arithmetic.
inline std::vector<ParamRow> param_table() {
  std::ifstream in(data_path("params_table.txt"));
  std::vector<ParamRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    ParamRow row{};
    ss >> row.delta >> row.r >> row.q >> row.big_q;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace oracle

#endif  // CHROMASUM_TESTS_ORACLES_HPP
