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

#ifndef CHROMASUM_LEMMAS_HPP
#define CHROMASUM_LEMMAS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "chromasum/graph.hpp"
#include "chromasum/params.hpp"

namespace chromasum {

enum class Band : std::uint8_t { kA, kB, kC };

std::string_view to_string(Band band);

// Random values X_v, the induced vertex order, and the A/B/C bands
// A = {X < 1/lambda2}, C = {X > 1 - 1/lambda3} (minus A), B the rest.
struct OrderingPartition {
  std::vector<double> x;
  std::vector<Vertex> order;          // ascending in x, ties by vertex id
  std::vector<std::size_t> position;  // inverse of order
  std::vector<Band> band;
  double a_threshold = 0.0;
  double c_threshold = 1.0;

  bool precedes(Vertex u, Vertex v) const { return position[u] < position[v]; }
  bool in(Vertex v, Band b) const { return band[v] == b; }
  // Members of a band in processing order.
  std::vector<Vertex> members(Band b) const;
};

OrderingPartition make_partition(std::vector<double> x, double a_threshold,
                                 double c_threshold);

// Neighbour counts used by the ordering properties.
std::size_t backward_degree(const Graph& g, const OrderingPartition& part,
                            Vertex v);
std::size_t forward_degree(const Graph& g, const OrderingPartition& part,
                           Vertex v);
std::size_t band_degree(const Graph& g, const OrderingPartition& part, Vertex v,
                        Band b);
std::size_t backward_r_degree(const RNeighborhoodCache& rn,
                              const OrderingPartition& part, Vertex v);
std::size_t band_r_degree(const RNeighborhoodCache& rn,
                          const OrderingPartition& part, Vertex v, Band b);

enum class LemmaProperty { kI, kII, kIII, kIV, kV, kVI, kSparse, kStructure };

std::string_view to_string(LemmaProperty p);

struct LemmaFailure {
  Vertex vertex;
  LemmaProperty property;
  double observed;
  double bound;
  bool lower;  // observed must be >= bound (else <=)
};

struct LemmaCheckReport {
  std::vector<LemmaFailure> failures;

  bool passed() const { return failures.empty(); }
};

std::string to_json(const LemmaCheckReport& report, int indent = 2);

OrderingPartition sample_ordering(const Graph& g, int r,
                                  const ScaleProfile& profile,
                                  std::uint64_t seed);

LemmaCheckReport check_ordering(const Graph& g, const OrderingPartition& part,
                                int r, const ScaleProfile& profile);
LemmaCheckReport check_ordering(const Graph& g, const OrderingPartition& part,
                                const RNeighborhoodCache& rn,
                                const ScaleProfile& profile);

// Appends extra failures for a caller-specific acceptance condition.
using ExtraCheck =
    std::function<void(const OrderingPartition&, LemmaCheckReport&)>;

struct OrderingSample {
  OrderingPartition partition;
  LemmaCheckReport report;
  int iterations = 0;
};

// Fresh global resampling until the checker accepts. On exhaustion, strict
// mode throws BudgetExhausted; otherwise the sample with fewest failures is
// returned with its report.
OrderingSample sample_until_ordering(const Graph& g, int r,
                                     const ScaleProfile& profile,
                                     std::uint64_t seed, int budget,
                                     bool strict, const ExtraCheck& extra = {});
OrderingSample sample_until_ordering(const Graph& g,
                                     const RNeighborhoodCache& rn,
                                     const ScaleProfile& profile,
                                     std::uint64_t seed, int budget,
                                     bool strict, const ExtraCheck& extra = {});

// Spanning subgraph of g_prime given by edge ids of g_prime.
struct SparseSubgraph {
  std::vector<EdgeId> edges;         // sorted, unique
  std::vector<EdgeId> choice;        // edge picked by each vertex
  std::vector<std::size_t> degree;   // degree in the subgraph

  bool contains(EdgeId e) const;
};

// Every vertex picks one incident edge uniformly. Throws IsolatedVertex.
SparseSubgraph sample_sparse_once(const Graph& g_prime, std::uint64_t seed);

// d_F(v) <= max(1, relax * d(v) / lambda3(delta_max)) for every v.
LemmaCheckReport check_sparse_subgraph(const Graph& g_prime,
                                       const SparseSubgraph& sub,
                                       std::int64_t delta_max,
                                       const ScaleProfile& profile);

using SparseExtraCheck =
    std::function<void(const SparseSubgraph&, LemmaCheckReport&)>;

struct SparseSample {
  SparseSubgraph subgraph;
  LemmaCheckReport report;
  int iterations = 0;
};

SparseSample sample_sparse_subgraph(const Graph& g_prime,
                                    std::int64_t delta_max,
                                    const ScaleProfile& profile,
                                    std::uint64_t seed, int budget, bool strict,
                                    const SparseExtraCheck& extra = {});

}  // namespace chromasum

#endif  // CHROMASUM_LEMMAS_HPP
