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

#ifndef CHROMASUM_GRAPH_HPP
#define CHROMASUM_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace chromasum {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

// Canonical undirected edge, always u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Vertex other(Vertex x) const noexcept { return x == u ? v : u; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex neighbor;
  EdgeId edge;
};

// Immutable simple undirected graph on vertices 0..n-1. Edge ids follow the
// lexicographic order of the canonical (min, max) pairs.
class Graph {
 public:
  Graph() = default;

  // Throws LoopEdge, DuplicateEdge, or InvalidParams for out-of-range ids.
  Graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& pairs);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Incidence> incident(Vertex v) const {
    return adjacency_[v];
  }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  std::size_t max_degree() const noexcept { return max_degree_; }
  std::size_t min_degree() const noexcept { return min_degree_; }

  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;
  bool adjacent(Vertex a, Vertex b) const { return find_edge(a, b).has_value(); }

  // An edge whose endpoints both have degree one (a K2 component).
  bool has_isolated_edge() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::size_t max_degree_ = 0;
  std::size_t min_degree_ = 0;
};

// Vertices u with 1 <= dist(source, u) <= radius, sorted ascending.
struct RNeighborhood {
  Vertex source = 0;
  int radius = 1;
  std::vector<Vertex> members;

  bool contains(Vertex u) const;
};

RNeighborhood r_neighbors(const Graph& g, Vertex v, int r);

// All r-neighbourhoods of a graph, computed once.
class RNeighborhoodCache {
 public:
  RNeighborhoodCache(const Graph& g, int r);

  int radius() const noexcept { return radius_; }
  std::span<const Vertex> of(Vertex v) const { return members_[v]; }

 private:
  int radius_;
  std::vector<std::vector<Vertex>> members_;
};

// Subgraph induced by `vertices`; local vertex i corresponds to vertices[i].
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_host;
  std::vector<EdgeId> host_edge;  // host edge id of each local edge
};

InducedSubgraph induced_subgraph(const Graph& g,
                                 std::span<const Vertex> vertices);

}  // namespace chromasum

#endif  // CHROMASUM_GRAPH_HPP
