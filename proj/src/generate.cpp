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

#include "chromasum/generate.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "chromasum/error.hpp"
#include "chromasum/rng.hpp"

namespace chromasum {

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidParams("cycle needs n >= 3");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex i = 0; i < n; ++i) {
    pairs.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  }
  return Graph(n, pairs);
}

Graph path_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return Graph(n, pairs);
}

Graph complete_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return Graph(n, pairs);
}

Graph star_graph(std::size_t leaves) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex i = 1; i <= leaves; ++i) pairs.emplace_back(0, i);
  return Graph(leaves + 1, pairs);
}

Graph petersen_graph() {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex i = 0; i < 5; ++i) {
    pairs.emplace_back(i, (i + 1) % 5);          // outer cycle
    pairs.emplace_back(i, i + 5);                // spokes
    pairs.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return Graph(10, pairs);
}

namespace {

// One Steger-Wormald attempt; returns false when it gets stuck.
bool try_regular(std::size_t n, std::size_t d, Rng& rng,
                 std::vector<std::pair<Vertex, Vertex>>& pairs) {
  pairs.clear();
  std::vector<Vertex> stubs;
  stubs.reserve(n * d);
  for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
  std::set<std::pair<Vertex, Vertex>> present;

  auto suitable = [&](Vertex a, Vertex b) {
    return a != b && !present.contains(std::minmax(a, b));
  };

  std::size_t misses = 0;
  while (!stubs.empty()) {
    std::size_t i = uniform_below(rng, stubs.size());
    std::size_t j = uniform_below(rng, stubs.size());
    if (i != j && suitable(stubs[i], stubs[j])) {
      const std::pair<Vertex, Vertex> key = std::minmax(stubs[i], stubs[j]);
      present.insert(key);
      pairs.push_back(key);
      if (i < j) std::swap(i, j);
      stubs[i] = stubs.back();
      stubs.pop_back();
      stubs[j] = stubs.back();
      stubs.pop_back();
      misses = 0;
      continue;
    }
    if (++misses < 64) continue;
    bool any = false;
    for (std::size_t a = 0; a < stubs.size() && !any; ++a) {
      for (std::size_t b = a + 1; b < stubs.size() && !any; ++b) {
        any = suitable(stubs[a], stubs[b]);
      }
    }
    if (!any) return false;
    misses = 0;
  }
  return true;
}

}  // namespace

Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                     int budget) {
  if ((n * d) % 2 != 0 || d >= n) {
    throw InvalidParams("random_regular needs n*d even and d < n");
  }
  Rng rng = make_rng(derive_seed(seed, "random_regular"));
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (int attempt = 0; attempt < budget; ++attempt) {
    if (try_regular(n, d, rng, pairs)) return Graph(n, pairs);
  }
  throw GenerationBudgetExhausted("random_regular(" + std::to_string(n) + "," +
                                  std::to_string(d) + ") failed after " +
                                  std::to_string(budget) + " attempts");
}

Graph gnp(std::size_t n, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParams("gnp needs 0 < p < 1");
  Rng rng = make_rng(derive_seed(seed, "gnp"));
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (uniform_unit(rng) < p) pairs.emplace_back(i, j);
    }
  }
  return Graph(n, pairs);
}

Graph gnp_min_degree(std::size_t n, double p, std::size_t min_degree,
                     std::uint64_t seed, int budget) {
  for (int attempt = 0; attempt < budget; ++attempt) {
    Graph g = gnp(n, p, derive_seed(seed, "gnp_min_degree", attempt));
    if (g.min_degree() >= min_degree) return g;
  }
  throw GenerationBudgetExhausted("gnp_min_degree: no sample reached minimum degree " +
                                  std::to_string(min_degree));
}

}  // namespace chromasum
