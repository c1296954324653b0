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

#ifndef CHROMASUM_EXACT_HPP
#define CHROMASUM_EXACT_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chromasum/coloring.hpp"
#include "chromasum/graph.hpp"

namespace chromasum {

struct ExactResult {
  int k = 0;
  EdgeColoring witness;
  std::uint64_t nodes_explored = 0;
  bool timed_out = false;
};

// Least k admitting a proper colouring with colours in 1..k whose weighted
// degrees differ on every pair of r-neighbours. Iterative deepening from
// k = Delta; on timeout k is the best known upper bound (a greedy witness)
// and timed_out is set. Throws IsolatedEdge. Supports k <= 64.
ExactResult exact_index(const Graph& g, int r,
                        std::chrono::milliseconds time_budget);

// Decides a single k; nullopt when infeasible. `deadline` and `nodes` as in
// exact_index; throws nothing on timeout but sets *timed_out.
std::optional<EdgeColoring> distinguishing_coloring_with(
    const Graph& g, const RNeighborhoodCache& rn, int k,
    std::chrono::steady_clock::time_point deadline, std::uint64_t& nodes,
    bool& timed_out);

// Greedy smallest-colour assignment with a one-step look-ahead; always
// succeeds on graphs without isolated edges.
EdgeColoring greedy_distinguishing(const Graph& g, int r);

using BoundFn = std::function<double(const Graph&, int)>;

double theorem2_bound(const Graph& g, int r);     // 6 Delta^(r-1)
double conjecture1_bound(const Graph& g, int r);  // Delta^(r-1)

BoundFn bound_by_name(const std::string& name);

struct ScanRecord {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t delta_max = 0;
  std::size_t delta_min = 0;
  std::optional<int> k;
  double bound = 0.0;
  double ratio = 0.0;
  std::string status;  // ok | timeout | skipped
};

struct ScanReport {
  std::vector<ScanRecord> records;
  double max_ratio = 0.0;
};

ScanReport conjecture_scan(std::span<const Graph> catalog, int r,
                           const BoundFn& bound,
                           std::chrono::milliseconds per_graph);

// Columns: n,m,delta_max,delta_min,k,bound,ratio,status
std::string to_csv(const ScanReport& report);

}  // namespace chromasum

#endif  // CHROMASUM_EXACT_HPP
