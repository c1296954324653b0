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

#include "chromasum/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "chromasum/error.hpp"
#include "chromasum/params.hpp"

namespace chromasum {

namespace {

class Search {
 public:
  Search(const Graph& g, const RNeighborhoodCache& rn, int k,
         std::chrono::steady_clock::time_point deadline, std::uint64_t& nodes)
      : g_(g),
        rn_(rn),
        k_(k),
        all_colors_(k >= 64 ? ~0ULL : ((1ULL << k) - 1)),
        deadline_(deadline),
        nodes_(nodes),
        color_(g.edge_count(), 0),
        used_(g.vertex_count(), 0),
        sum_(g.vertex_count(), 0),
        remaining_(g.vertex_count(), 0) {
    order_.resize(g.edge_count());
    std::iota(order_.begin(), order_.end(), EdgeId{0});
    std::stable_sort(order_.begin(), order_.end(), [&](EdgeId a, EdgeId b) {
      return weight(a) > weight(b);
    });
    for (Vertex v = 0; v < g.vertex_count(); ++v) remaining_[v] = g.degree(v);
  }

  std::optional<EdgeColoring> run() {
    if (!dfs(0)) return std::nullopt;
    EdgeColoring out;
    out.colors.assign(color_.begin(), color_.end());
    return out;
  }

  bool timed_out() const { return timed_out_; }

 private:
  std::size_t weight(EdgeId e) const {
    return g_.degree(g_.edge(e).u) + g_.degree(g_.edge(e).v);
  }

  bool collides_with_closed(Vertex x, std::int64_t value) const {
    for (Vertex y : rn_.of(x)) {
      if (remaining_[y] == 0 && sum_[y] == value) return true;
    }
    return false;
  }

  // Properness and sum feasibility of x after its latest assignment.
  bool vertex_ok(Vertex x) const {
    if (remaining_[x] == 0) return !collides_with_closed(x, sum_[x]);
    std::uint64_t free = all_colors_ & ~used_[x];
    auto available = static_cast<std::size_t>(std::popcount(free));
    if (available < remaining_[x]) return false;
    if (available == remaining_[x]) {
      // The final sum is forced.
      std::int64_t forced = sum_[x];
      for (std::uint64_t bits = free; bits; bits &= bits - 1) {
        forced += std::countr_zero(bits) + 1;
      }
      for (Vertex y : rn_.of(x)) {
        if (remaining_[y] == 0 && sum_[y] == forced) return false;
      }
    }
    return true;
  }

  bool dfs(std::size_t index) {
    if (timed_out_) return false;
    if ((++nodes_ & 1023) == 0 &&
        std::chrono::steady_clock::now() > deadline_) {
      timed_out_ = true;
      return false;
    }
    if (index == order_.size()) return true;
    const EdgeId e = order_[index];
    const Vertex u = g_.edge(e).u;
    const Vertex v = g_.edge(e).v;
    std::uint64_t candidates = all_colors_ & ~(used_[u] | used_[v]);
    for (std::uint64_t bits = candidates; bits; bits &= bits - 1) {
      const int c = std::countr_zero(bits) + 1;
      const std::uint64_t mask = 1ULL << (c - 1);
      color_[e] = c;
      used_[u] |= mask;
      used_[v] |= mask;
      sum_[u] += c;
      sum_[v] += c;
      --remaining_[u];
      --remaining_[v];
      if (vertex_ok(u) && vertex_ok(v) && dfs(index + 1)) return true;
      ++remaining_[u];
      ++remaining_[v];
      sum_[u] -= c;
      sum_[v] -= c;
      used_[u] &= ~mask;
      used_[v] &= ~mask;
      color_[e] = 0;
      if (timed_out_) return false;
    }
    return false;
  }

  const Graph& g_;
  const RNeighborhoodCache& rn_;
  int k_;
  std::uint64_t all_colors_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t& nodes_;
  std::vector<EdgeId> order_;
  std::vector<Color> color_;
  std::vector<std::uint64_t> used_;
  std::vector<std::int64_t> sum_;
  std::vector<std::size_t> remaining_;
  bool timed_out_ = false;
};

}  // namespace

std::optional<EdgeColoring> distinguishing_coloring_with(
    const Graph& g, const RNeighborhoodCache& rn, int k,
    std::chrono::steady_clock::time_point deadline, std::uint64_t& nodes,
    bool& timed_out) {
  if (k < 1 || k > 64) throw InvalidParams("exact search supports 1 <= k <= 64");
  Search search(g, rn, k, deadline, nodes);
  auto result = search.run();
  timed_out = search.timed_out();
  return result;
}

ExactResult exact_index(const Graph& g, int r,
                        std::chrono::milliseconds time_budget) {
  if (g.has_isolated_edge()) {
    throw IsolatedEdge("the index is undefined for graphs with an isolated edge");
  }
  ExactResult result;
  if (g.edge_count() == 0) return result;
  const RNeighborhoodCache rn(g, r);
  const auto deadline = std::chrono::steady_clock::now() + time_budget;
  for (int k = static_cast<int>(std::max<std::size_t>(g.max_degree(), 1));
       k <= 64; ++k) {
    bool timed_out = false;
    auto witness = distinguishing_coloring_with(g, rn, k, deadline,
                                                result.nodes_explored, timed_out);
    if (witness) {
      result.k = k;
      result.witness = std::move(*witness);
      return result;
    }
    if (timed_out) {
      result.timed_out = true;
      result.witness = greedy_distinguishing(g, r);
      result.k = static_cast<int>(*std::max_element(
          result.witness.colors.begin(), result.witness.colors.end()));
      return result;
    }
  }
  throw InvalidParams("exact search exceeded 64 colours");
}

EdgeColoring greedy_distinguishing(const Graph& g, int r) {
  if (g.has_isolated_edge()) {
    throw IsolatedEdge("the index is undefined for graphs with an isolated edge");
  }
  const RNeighborhoodCache rn(g, r);
  EdgeColoring c{std::vector<Color>(g.edge_count(), 0)};
  std::vector<std::int64_t> sum(g.vertex_count(), 0);
  std::vector<std::size_t> remaining(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) remaining[v] = g.degree(v);

  auto last_open_edge = [&](Vertex x, EdgeId skip) -> std::optional<EdgeId> {
    for (const Incidence& inc : g.incident(x)) {
      if (inc.edge != skip && c[inc.edge] == 0) return inc.edge;
    }
    return std::nullopt;
  };

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Vertex u = g.edge(e).u;
    const Vertex v = g.edge(e).v;
    std::unordered_set<std::int64_t> forbidden;  // forbidden colour values
    for (Vertex x : {u, v}) {
      for (const Incidence& inc : g.incident(x)) {
        if (c[inc.edge] != 0) forbidden.insert(c[inc.edge]);
      }
      const std::size_t left = remaining[x] - 1;
      if (left == 0) {
        for (Vertex y : rn.of(x)) {
          if (remaining[y] == 0) forbidden.insert(sum[y] - sum[x]);
        }
      } else if (left == 1) {
        // The last edge f = xz would close both ends at once if z has no
        // other open edge; their sums must already differ.
        EdgeId f = *last_open_edge(x, e);
        Vertex z = g.edge(f).other(x);
        const std::size_t z_left = remaining[z] - (z == u || z == v ? 1 : 0);
        if (z_left == 1) forbidden.insert(sum[z] - sum[x]);
      }
    }
    Color pick = 1;
    while (forbidden.contains(pick)) ++pick;
    c[e] = pick;
    sum[u] += pick;
    sum[v] += pick;
    --remaining[u];
    --remaining[v];
  }
  return c;
}

double theorem2_bound(const Graph& g, int r) {
  return 6.0 * std::pow(static_cast<double>(g.max_degree()), r - 1);
}

double conjecture1_bound(const Graph& g, int r) {
  return std::pow(static_cast<double>(g.max_degree()), r - 1);
}

BoundFn bound_by_name(const std::string& name) {
  if (name == "theorem2") return theorem2_bound;
  if (name == "conjecture1") return conjecture1_bound;
  if (name == "theorem3") {
    return [](const Graph& g, int r) {
      PlanParams p;
      p.delta_max = static_cast<std::int64_t>(g.max_degree());
      p.r = r;
      return p.theorem3_bound();
    };
  }
  throw InvalidParams("unknown bound '" + name + "'");
}

ScanReport conjecture_scan(std::span<const Graph> catalog, int r,
                           const BoundFn& bound,
                           std::chrono::milliseconds per_graph) {
  ScanReport report;
  for (const Graph& g : catalog) {
    ScanRecord rec;
    rec.n = g.vertex_count();
    rec.m = g.edge_count();
    rec.delta_max = g.max_degree();
    rec.delta_min = g.min_degree();
    rec.bound = bound(g, r);
    if (g.edge_count() == 0 || g.has_isolated_edge()) {
      rec.status = "skipped";
      report.records.push_back(rec);
      continue;
    }
    ExactResult exact = exact_index(g, r, per_graph);
    rec.k = exact.k;
    rec.status = exact.timed_out ? "timeout" : "ok";
    rec.ratio = rec.bound > 0 ? exact.k / rec.bound : 0.0;
    report.max_ratio = std::max(report.max_ratio, rec.ratio);
    report.records.push_back(rec);
  }
  return report;
}

std::string to_csv(const ScanReport& report) {
  std::ostringstream out;
  out << "n,m,delta_max,delta_min,k,bound,ratio,status\n";
  out << std::setprecision(10);
  for (const ScanRecord& rec : report.records) {
    out << rec.n << ',' << rec.m << ',' << rec.delta_max << ','
        << rec.delta_min << ',';
    if (rec.k) out << *rec.k;
    out << ',' << rec.bound << ',' << rec.ratio << ',' << rec.status << '\n';
  }
  return out.str();
}

}  // namespace chromasum
