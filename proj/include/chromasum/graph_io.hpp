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

#ifndef CHROMASUM_GRAPH_IO_HPP
#define CHROMASUM_GRAPH_IO_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "chromasum/graph.hpp"

namespace chromasum {

enum class GraphFormat { kGraph6, kEdgeList };

// Parses "graph6" / "g6" / "edgelist" / "el".
GraphFormat parse_format_name(std::string_view name);

// Guesses from a file name: .g6/.graph6 is graph6, anything else edge list.
GraphFormat format_from_path(std::string_view path);

Graph parse_graph(std::string_view input, GraphFormat format);

// One graph6 string, without trailing newline handling.
Graph parse_graph6(std::string_view line);
std::string to_graph6(const Graph& g);

// "n m" header followed by m "u v" lines.
Graph parse_edge_list(std::string_view input);
std::string to_edge_list(const Graph& g);

// A file of graph6 lines; blank lines and an optional ">>graph6<<" header are
// skipped.
std::vector<Graph> parse_graph6_catalog(std::string_view input);

std::string read_file(const std::string& path);

}  // namespace chromasum

#endif  // CHROMASUM_GRAPH_IO_HPP
