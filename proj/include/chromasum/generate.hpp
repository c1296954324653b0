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

#ifndef CHROMASUM_GENERATE_HPP
#define CHROMASUM_GENERATE_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "chromasum/graph.hpp"

namespace chromasum {

Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph petersen_graph();

// Uniform-ish simple d-regular graph by random stub matching with restarts
// (Steger-Wormald). Requires n*d even and d < n.
Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                     int budget = 1000);

// G(n, p) resampled until the minimum degree reaches min_degree.
Graph gnp_min_degree(std::size_t n, double p, std::size_t min_degree,
                     std::uint64_t seed, int budget = 1000);

// Plain G(n, p), no resampling.
Graph gnp(std::size_t n, double p, std::uint64_t seed);

}  // namespace chromasum

#endif  // CHROMASUM_GENERATE_HPP
