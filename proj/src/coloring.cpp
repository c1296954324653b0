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

#include "chromasum/coloring.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "chromasum/error.hpp"
#include "chromasum/params.hpp"
#include "json.hpp"

namespace chromasum {

void require_total(const Graph& g, const EdgeColoring& c) {
  if (c.size() != g.edge_count()) {
    throw InvalidParams("coloring has " + std::to_string(c.size()) +
                        " entries for " + std::to_string(g.edge_count()) +
                        " edges");
  }
  for (EdgeId e = 0; e < c.size(); ++e) {
    if (c[e] < 1) {
      throw NonPositiveColor("edge " + std::to_string(e) + " has colour " +
                             std::to_string(c[e]));
    }
  }
}

SumProfile weighted_degrees(const Graph& g, const EdgeColoring& c) {
  if (c.size() != g.edge_count()) {
    throw InvalidParams("coloring is not total on the graph");
  }
  SumProfile profile{std::vector<std::int64_t>(g.vertex_count(), 0)};
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    for (Vertex x : {g.edge(e).u, g.edge(e).v}) {
      if (__builtin_add_overflow(profile.sums[x], c[e], &profile.sums[x])) {
        throw ArithmeticOverflow("weighted degree of vertex " +
                                 std::to_string(x) + " overflows");
      }
    }
  }
  return profile;
}

namespace {

constexpr std::int64_t kNone = -1;

// Misra and Gries, "A constructive proof of Vizing's theorem" (1992).
class MisraGries {
 public:
  explicit MisraGries(const Graph& g)
      : g_(g),
        max_color_(static_cast<int>(g.max_degree()) + 1),
        color_(g.edge_count(), 0),
        at_(g.vertex_count(),
            std::vector<std::int64_t>(static_cast<std::size_t>(max_color_) + 1,
                                      kNone)) {}

  EdgeColoring run() {
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      color_edge(g_.edge(e).u, g_.edge(e).v);
    }
    EdgeColoring out;
    out.colors.assign(color_.begin(), color_.end());
    return out;
  }

 private:
  int color_of(Vertex a, Vertex b) const { return color_[*g_.find_edge(a, b)]; }

  bool is_free(Vertex v, int c) const { return at_[v][c] == kNone; }

  int first_free(Vertex v) const {
    for (int c = 1; c <= max_color_; ++c) {
      if (is_free(v, c)) return c;
    }
    return 0;  // unreachable: degree < max_color_
  }

  void uncolor(Vertex a, Vertex b) {
    EdgeId e = *g_.find_edge(a, b);
    if (int c = color_[e]; c != 0) {
      at_[a][c] = kNone;
      at_[b][c] = kNone;
      color_[e] = 0;
    }
  }

  void paint(Vertex a, Vertex b, int c) {
    uncolor(a, b);
    color_[*g_.find_edge(a, b)] = c;
    at_[a][c] = b;
    at_[b][c] = a;
  }

  std::vector<Vertex> maximal_fan(Vertex x, Vertex y) const {
    std::vector<Vertex> fan{y};
    std::vector<bool> in_fan(g_.vertex_count(), false);
    in_fan[y] = true;
    bool extended = true;
    while (extended) {
      extended = false;
      for (const Incidence& inc : g_.incident(x)) {
        Vertex z = inc.neighbor;
        int c = color_[inc.edge];
        if (!in_fan[z] && c != 0 && is_free(fan.back(), c)) {
          fan.push_back(z);
          in_fan[z] = true;
          extended = true;
          break;
        }
      }
    }
    return fan;
  }

  // Swaps colours c and d along the alternating path leaving x by colour d.
  void invert_path(Vertex x, int c, int d) {
    std::vector<std::pair<Vertex, Vertex>> path;
    std::vector<int> colors;
    Vertex cur = x;
    int col = d;
    while (at_[cur][col] != kNone) {
      Vertex next = static_cast<Vertex>(at_[cur][col]);
      path.emplace_back(cur, next);
      colors.push_back(col);
      cur = next;
      col = (col == d) ? c : d;
    }
    for (auto [a, b] : path) uncolor(a, b);
    for (std::size_t i = 0; i < path.size(); ++i) {
      paint(path[i].first, path[i].second, colors[i] == d ? c : d);
    }
  }

  void color_edge(Vertex x, Vertex y) {
    std::vector<Vertex> fan = maximal_fan(x, y);
    int c = first_free(x);
    int d = first_free(fan.back());
    invert_path(x, c, d);

    std::size_t w = 0;
    for (std::size_t i = 0; i < fan.size(); ++i) {
      if (i > 0 && !is_free(fan[i - 1], color_of(x, fan[i]))) break;
      if (is_free(fan[i], d)) {
        w = i;
        break;
      }
    }
    for (std::size_t j = 0; j < w; ++j) {
      int next = color_of(x, fan[j + 1]);
      uncolor(x, fan[j + 1]);
      paint(x, fan[j], next);
    }
    paint(x, fan[w], d);
  }

  const Graph& g_;
  int max_color_;
  std::vector<int> color_;
  std::vector<std::vector<std::int64_t>> at_;
};

// Records a clash for every pair of edges at a vertex whose keys coincide.
template <typename KeyFn>
bool collect_clashes(const Graph& g, KeyFn key, ViolationKind kind,
                     std::vector<Violation>& out) {
  bool clean = true;
  std::vector<std::pair<std::int64_t, EdgeId>> keyed;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    keyed.clear();
    for (const Incidence& inc : g.incident(v)) {
      keyed.emplace_back(key(inc.edge), inc.edge);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      for (std::size_t j = i + 1;
           j < keyed.size() && keyed[j].first == keyed[i].first; ++j) {
        clean = false;
        out.push_back({kind, keyed[i].second, keyed[j].second});
      }
    }
  }
  return clean;
}

}  // namespace

EdgeColoring vizing_color(const Graph& g) { return MisraGries(g).run(); }

EdgeColoring shift(const EdgeColoring& c, Color offset) {
  EdgeColoring out = c;
  for (Color& x : out.colors) {
    if (__builtin_add_overflow(x, offset, &x)) {
      throw ArithmeticOverflow("colour shift overflows");
    }
    if (x < 1) {
      throw NonPositiveColor("shift by " + std::to_string(offset) +
                             " yields colour " + std::to_string(x));
    }
  }
  return out;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kColorClash: return "color_clash";
    case ViolationKind::kResidueClash: return "residue_clash";
    case ViolationKind::kSumConflict: return "sum_conflict";
  }
  return "unknown";
}

bool proper_modulo(const Graph& g, const EdgeColoring& c,
                   std::int64_t modulus) {
  std::vector<Violation> sink;
  return collect_clashes(
      g, [&](EdgeId e) { return floor_mod(c[e], modulus); },
      ViolationKind::kResidueClash, sink);
}

VerifyReport verify(const Graph& g, const EdgeColoring& c, int r,
                    std::optional<std::int64_t> modulus) {
  return verify(g, c, RNeighborhoodCache(g, r), modulus);
}

VerifyReport verify(const Graph& g, const EdgeColoring& c,
                    const RNeighborhoodCache& neighborhoods,
                    std::optional<std::int64_t> modulus) {
  if (c.size() != g.edge_count()) {
    throw InvalidParams("coloring is not total on the graph");
  }
  VerifyReport report;
  report.r = neighborhoods.radius();
  if (!c.colors.empty()) {
    auto [lo, hi] = std::minmax_element(c.colors.begin(), c.colors.end());
    report.min_color = *lo;
    report.max_color = *hi;
  }
  report.proper = collect_clashes(
      g, [&](EdgeId e) { return c[e]; }, ViolationKind::kColorClash,
      report.violations);
  if (modulus) {
    if (*modulus < 1) throw InvalidParams("modulus must be positive");
    bool ok = collect_clashes(
        g, [&](EdgeId e) { return floor_mod(c[e], *modulus); },
        ViolationKind::kResidueClash, report.violations);
    report.proper_mod = ModCheck{*modulus, ok};
  }
  SumProfile sums = weighted_degrees(g, c);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (Vertex u : neighborhoods.of(v)) {
      if (u > v && sums[u] == sums[v]) {
        report.distinguishing_r = false;
        report.violations.push_back({ViolationKind::kSumConflict, v, u});
      }
    }
  }
  return report;
}

std::string to_text(const Graph& g, const EdgeColoring& c) {
  std::ostringstream out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out << g.edge(e).u << ' ' << g.edge(e).v << ' ' << c[e] << '\n';
  }
  return out.str();
}

EdgeColoring parse_coloring(const Graph& g, std::string_view text) {
  EdgeColoring c{std::vector<Color>(g.edge_count(), 0)};
  std::vector<bool> seen(g.edge_count(), false);
  std::size_t offset = 0;
  std::size_t line_no = 0;
  while (offset < text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(offset, end - offset));
    ++line_no;
    std::istringstream in(line);
    long long u = 0, v = 0, color = 0;
    std::string rest;
    if (in >> u) {
      if (!(in >> v >> color) || (in >> rest)) {
        throw ParseError("expected 'u v color'", line_no, offset);
      }
      if (u < 0 || v < 0) throw ParseError("negative vertex id", line_no, offset);
      auto e = g.find_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
      if (!e) throw ParseError("not an edge of the graph", line_no, offset);
      if (seen[*e]) throw DuplicateEdge("line " + std::to_string(line_no) +
                                        ": edge coloured twice");
      seen[*e] = true;
      c[*e] = color;
    }
    offset = end + 1;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw ParseError("coloring does not cover every edge", line_no, text.size());
  }
  require_total(g, c);
  return c;
}

std::string to_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["proper"] = report.proper;
  if (report.proper_mod) {
    j["proper_mod"] = {{"modulus", report.proper_mod->modulus},
                       {"proper", report.proper_mod->proper}};
  } else {
    j["proper_mod"] = nullptr;
  }
  j["r"] = report.r;
  j["distinguishing_r"] = report.distinguishing_r;
  j["max_color"] = report.max_color;
  j["min_color"] = report.min_color;
  auto pairs = nlohmann::ordered_json::array();
  for (const Violation& v : report.violations) {
    pairs.push_back({{"a", v.a}, {"b", v.b}, {"reason", to_string(v.kind)}});
  }
  j["violating_pairs"] = std::move(pairs);
  return j.dump(2);
}

}  // namespace chromasum
