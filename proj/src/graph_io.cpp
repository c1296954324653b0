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

#include "chromasum/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "chromasum/error.hpp"

namespace chromasum {

GraphFormat parse_format_name(std::string_view name) {
  if (name == "graph6" || name == "g6") return GraphFormat::kGraph6;
  if (name == "edgelist" || name == "el" || name == "edge-list") {
    return GraphFormat::kEdgeList;
  }
  throw InvalidParams("unknown graph format '" + std::string(name) + "'");
}

GraphFormat format_from_path(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.substr(path.size() - suffix.size()) == suffix;
  };
  return ends_with(".g6") || ends_with(".graph6") ? GraphFormat::kGraph6
                                                  : GraphFormat::kEdgeList;
}

Graph parse_graph(std::string_view input, GraphFormat format) {
  if (format == GraphFormat::kEdgeList) return parse_edge_list(input);
  auto catalog = parse_graph6_catalog(input);
  if (catalog.size() != 1) {
    throw ParseError("expected exactly one graph6 record, found " +
                         std::to_string(catalog.size()),
                     1, 0);
  }
  return std::move(catalog.front());
}

Graph parse_graph6(std::string_view line) {
  std::size_t pos = 0;
  auto next = [&]() -> unsigned {
    if (pos >= line.size()) {
      throw ParseError("graph6 record truncated", 1, pos);
    }
    unsigned char c = static_cast<unsigned char>(line[pos]);
    if (c < 63 || c > 126) {
      throw ParseError("graph6 byte out of range", 1, pos);
    }
    ++pos;
    return c - 63u;
  };

  std::size_t n = next();
  if (n == 63) {
    std::size_t groups = 3;
    if (pos < line.size() && line[pos] == '~') {
      ++pos;
      groups = 6;
    }
    n = 0;
    for (std::size_t i = 0; i < groups; ++i) n = (n << 6) | next();
  }

  std::vector<std::pair<Vertex, Vertex>> pairs;
  unsigned chunk = 0;
  int bits_left = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (bits_left == 0) {
        chunk = next();
        bits_left = 6;
      }
      --bits_left;
      if ((chunk >> bits_left) & 1u) {
        pairs.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  if (pos != line.size()) {
    throw ParseError("trailing bytes after graph6 record", 1, pos);
  }
  return Graph(n, pairs);
}

std::string to_graph6(const Graph& g) {
  std::string out;
  const std::size_t n = g.vertex_count();
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
  } else {
    out += "~~";
    for (int shift = 30; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
  }
  unsigned chunk = 0;
  int filled = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      chunk = (chunk << 1) |
              (g.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(j)) ? 1u
                                                                          : 0u);
      if (++filled == 6) {
        out.push_back(static_cast<char>(chunk + 63));
        chunk = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) {
    out.push_back(static_cast<char>((chunk << (6 - filled)) + 63));
  }
  return out;
}

namespace {

struct Token {
  std::string_view text;
  std::size_t offset;
};

std::vector<Token> split_tokens(std::string_view line, std::size_t base) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) tokens.push_back({line.substr(start, i - start), base + start});
  }
  return tokens;
}

std::uint64_t parse_uint(const Token& t, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
    throw ParseError("expected a non-negative integer, got '" +
                         std::string(t.text) + "'",
                     line, t.offset);
  }
  return value;
}

}  // namespace

Graph parse_edge_list(std::string_view input) {
  std::size_t line_no = 0;
  std::size_t offset = 0;
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::set<std::pair<Vertex, Vertex>> seen;

  while (offset <= input.size()) {
    std::size_t end = input.find('\n', offset);
    if (end == std::string_view::npos) end = input.size();
    std::string_view line = input.substr(offset, end - offset);
    ++line_no;
    auto tokens = split_tokens(line, offset);
    if (!tokens.empty() && tokens.front().text.front() != '#') {
      if (tokens.size() != 2) {
        throw ParseError("expected two integers", line_no, tokens.front().offset);
      }
      std::uint64_t a = parse_uint(tokens[0], line_no);
      std::uint64_t b = parse_uint(tokens[1], line_no);
      if (!have_header) {
        n = a;
        m = b;
        have_header = true;
      } else {
        if (a >= n || b >= n) {
          throw ParseError("vertex id out of range", line_no, tokens[0].offset);
        }
        if (a == b) {
          throw LoopEdge("line " + std::to_string(line_no) + ": loop at vertex " +
                         std::to_string(a));
        }
        const auto lo = static_cast<Vertex>(std::min(a, b));
        const auto hi = static_cast<Vertex>(std::max(a, b));
        const std::pair<Vertex, Vertex> key{lo, hi};
        if (!seen.insert(key).second) {
          throw DuplicateEdge("line " + std::to_string(line_no) +
                              ": duplicate edge (" + std::to_string(key.first) +
                              "," + std::to_string(key.second) + ")");
        }
        pairs.push_back(key);
      }
    }
    offset = end + 1;
  }
  if (!have_header) throw ParseError("missing 'n m' header", 1, 0);
  if (pairs.size() != m) {
    throw ParseError("header declares " + std::to_string(m) +
                         " edges but found " + std::to_string(pairs.size()),
                     line_no, input.size());
  }
  return Graph(n, pairs);
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

std::vector<Graph> parse_graph6_catalog(std::string_view input) {
  std::vector<Graph> graphs;
  std::size_t offset = 0;
  std::size_t line_no = 0;
  while (offset < input.size()) {
    std::size_t end = input.find('\n', offset);
    if (end == std::string_view::npos) end = input.size();
    std::string_view line = input.substr(offset, end - offset);
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.remove_suffix(1);
    }
    if (line.starts_with(">>graph6<<")) line.remove_prefix(10);
    if (!line.empty()) {
      try {
        graphs.push_back(parse_graph6(line));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line_no, offset + e.offset());
      }
    }
    offset = end + 1;
  }
  return graphs;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace chromasum
