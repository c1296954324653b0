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

#include "chromasum/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "chromasum/error.hpp"

namespace chromasum {

Graph::Graph(std::size_t n,
             const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  edges_.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) {
      throw InvalidParams("edge (" + std::to_string(a) + "," +
                          std::to_string(b) + ") out of range for n=" +
                          std::to_string(n));
    }
    if (a == b) throw LoopEdge("loop at vertex " + std::to_string(a));
    edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw DuplicateEdge("duplicate edge (" + std::to_string(dup->u) + "," +
                        std::to_string(dup->v) + ")");
  }
  adjacency_.assign(n, {});
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    adjacency_[edges_[e].u].push_back({edges_[e].v, e});
    adjacency_[edges_[e].v].push_back({edges_[e].u, e});
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const Incidence& x, const Incidence& y) {
                return x.neighbor < y.neighbor;
              });
  }
  if (n > 0) {
    auto [lo, hi] = std::minmax_element(
        adjacency_.begin(), adjacency_.end(),
        [](const auto& x, const auto& y) { return x.size() < y.size(); });
    min_degree_ = lo->size();
    max_degree_ = hi->size();
  }
}

std::optional<EdgeId> Graph::find_edge(Vertex a, Vertex b) const {
  if (a >= adjacency_.size() || b >= adjacency_.size()) return std::nullopt;
  const auto& list = adjacency_[a];
  auto it = std::lower_bound(
      list.begin(), list.end(), b,
      [](const Incidence& x, Vertex key) { return x.neighbor < key; });
  if (it == list.end() || it->neighbor != b) return std::nullopt;
  return it->edge;
}

bool Graph::has_isolated_edge() const {
  return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) {
    return degree(e.u) == 1 && degree(e.v) == 1;
  });
}

bool RNeighborhood::contains(Vertex u) const {
  return std::binary_search(members.begin(), members.end(), u);
}

namespace {

// Truncated BFS; `dist` must be all -1 on entry and is restored on exit.
void collect_within(const Graph& g, Vertex v, int r, std::vector<int>& dist,
                    std::vector<Vertex>& out) {
  out.clear();
  std::deque<Vertex> frontier{v};
  dist[v] = 0;
  std::vector<Vertex> touched{v};
  while (!frontier.empty()) {
    Vertex x = frontier.front();
    frontier.pop_front();
    if (dist[x] == r) continue;
    for (const Incidence& inc : g.incident(x)) {
      if (dist[inc.neighbor] >= 0) continue;
      dist[inc.neighbor] = dist[x] + 1;
      touched.push_back(inc.neighbor);
      out.push_back(inc.neighbor);
      frontier.push_back(inc.neighbor);
    }
  }
  for (Vertex x : touched) dist[x] = -1;
  std::sort(out.begin(), out.end());
}

}  // namespace

RNeighborhood r_neighbors(const Graph& g, Vertex v, int r) {
  if (v >= g.vertex_count() || r < 1) {
    throw InvalidParams("r_neighbors: bad vertex or radius");
  }
  RNeighborhood result{v, r, {}};
  std::vector<int> dist(g.vertex_count(), -1);
  collect_within(g, v, r, dist, result.members);
  return result;
}

RNeighborhoodCache::RNeighborhoodCache(const Graph& g, int r)
    : radius_(r), members_(g.vertex_count()) {
  if (r < 1) throw InvalidParams("r_neighbors: radius must be >= 1");
  std::vector<int> dist(g.vertex_count(), -1);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    collect_within(g, v, r, dist, members_[v]);
  }
}

InducedSubgraph induced_subgraph(const Graph& g,
                                 std::span<const Vertex> vertices) {
  InducedSubgraph sub;
  sub.to_host.assign(vertices.begin(), vertices.end());
  std::vector<std::int64_t> local(g.vertex_count(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    local[vertices[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (const Edge& e : g.edges()) {
    if (local[e.u] >= 0 && local[e.v] >= 0) {
      pairs.emplace_back(static_cast<Vertex>(local[e.u]),
                         static_cast<Vertex>(local[e.v]));
    }
  }
  sub.graph = Graph(vertices.size(), pairs);
  sub.host_edge.reserve(sub.graph.edge_count());
  for (const Edge& e : sub.graph.edges()) {
    sub.host_edge.push_back(*g.find_edge(sub.to_host[e.u], sub.to_host[e.v]));
  }
  return sub;
}

}  // namespace chromasum
