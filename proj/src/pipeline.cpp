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

#include "chromasum/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "chromasum/error.hpp"
#include "chromasum/exact.hpp"

namespace chromasum {

namespace {

constexpr std::size_t kListSize = 32;
constexpr std::int64_t kListStride = 96;
constexpr std::int64_t kWindow = 31 * 93;

std::string vname(Vertex v) { return "vertex " + std::to_string(v); }
std::string ename(const Graph& g, EdgeId e) {
  return "edge " + std::to_string(g.edge(e).u) + "-" +
         std::to_string(g.edge(e).v);
}

void require_stage(const PipelineState& state, Stage want,
                   std::string_view op) {
  if (state.stage() != want) {
    throw InvariantViolation(std::string(op) + " requires stage " +
                             std::string(to_string(want)) + ", found " +
                             std::string(to_string(state.stage())));
  }
}

// Residues mod m of the edges adjacent to e (sharing an endpoint), optionally
// skipping E' edges.
std::unordered_set<std::int64_t> adjacent_residues(const PipelineState& state,
                                                   EdgeId e, std::int64_t m,
                                                   bool skip_e_prime) {
  const Graph& g = state.graph();
  std::unordered_set<std::int64_t> out;
  for (Vertex x : {g.edge(e).u, g.edge(e).v}) {
    for (const auto& inc : g.incident(x)) {
      if (inc.edge == e) continue;
      if (skip_e_prime && state.in_e_prime(inc.edge)) continue;
      out.insert(floor_mod(state.color(inc.edge), m));
    }
  }
  return out;
}

bool proper_modulo_outside_e_prime(const PipelineState& state,
                                   std::int64_t m) {
  const Graph& g = state.graph();
  std::unordered_set<std::int64_t> seen;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    seen.clear();
    for (const auto& inc : g.incident(v)) {
      if (state.in_e_prime(inc.edge)) continue;
      if (!seen.insert(floor_mod(state.color(inc.edge), m)).second) {
        return false;
      }
    }
  }
  return true;
}

std::int64_t pick(const std::vector<std::int64_t>& candidates,
           const ChoicePolicy& policy) {
  if (policy.rng == nullptr || candidates.size() == 1) return candidates[0];
  return candidates[uniform_below(*policy.rng, candidates.size())];
}

std::vector<std::int64_t> full_attainable(const PipelineState& state,
                                          Vertex v,
                                          const AttainableSums& lazy) {
  const auto& p = state.params();
  const auto anchor = *state.anchor(v);
  const std::int64_t base = state.sum(v) - state.color(anchor);
  std::set<std::int64_t> out;
  const auto minus = static_cast<std::int64_t>(lazy.minus_capacity());
  const auto plus = static_cast<std::int64_t>(lazy.plus_capacity());
  const auto fwd = static_cast<std::int64_t>(lazy.forward_capacity());
  for (std::int64_t j = -minus; j <= plus; ++j) {
    for (std::int64_t k = 0; k <= fwd; ++k) {
      for (Color t : lazy.anchor_options()) {
        out.insert(base + p.big_q * j + p.q * k + t);
      }
    }
  }
  return {out.begin(), out.end()};
}

void process_vertex(PipelineState& state, Vertex v, Band band, bool mod3,
                    const ChoicePolicy& policy) {
  const auto& part = state.partition();
  if (!part.in(v, band)) {
    throw InvariantViolation(vname(v) + " is not in band " +
                             std::string(to_string(band)));
  }
  if (state.processed(v)) {
    throw InvariantViolation(vname(v) + " already processed");
  }
  const std::int64_t big_q = state.params().big_q;
  std::unordered_set<std::int64_t> blocked;
  for (Vertex u : state.neighborhoods().of(v)) {
    if (state.processed(u)) blocked.insert(state.s_pair(u)->low);
  }
  auto admissible = [&](std::int64_t s) {
    if (mod3 && floor_mod(s, 3) != 0) return false;
    return !blocked.contains(pair_of(s, big_q).low);
  };

  AttainableSums sums(state, v);
  const std::size_t spread = std::max<std::size_t>(1, policy.spread);
  std::vector<std::int64_t> candidates;
  while (candidates.size() < spread) {
    auto s = sums.next();
    if (!s) break;
    if (admissible(*s)) candidates.push_back(*s);
  }
  if (candidates.empty()) {
    throw NoAdmissibleSum(vname(v) + ": no attainable sum with a free pair");
  }
  if (policy.audit) {
    auto all = full_attainable(state, v, sums);
    auto first = std::find_if(all.begin(), all.end(), admissible);
    if (first == all.end() || *first != candidates.front()) {
      throw InvariantViolation(vname(v) +
                               ": lazy enumeration disagrees with full scan");
    }
  }
  const std::int64_t chosen = pick(candidates, policy);
  apply_moves(state, sums.moves_for(chosen));
  if (state.sum(v) != chosen) {
    throw InvariantViolation(vname(v) + ": applied moves miss target sum");
  }
  state.set_s_pair(v, pair_of(chosen, big_q));
}

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kInit: return "Init";
    case Stage::kAProcessed: return "AProcessed";
    case Stage::kBProcessed: return "BProcessed";
    case Stage::kEppDone: return "EppDone";
    case Stage::kListsAssigned: return "ListsAssigned";
    case Stage::kRecolored: return "Recolored";
    case Stage::kBLowered: return "BLowered";
    case Stage::kDone: return "Done";
  }
  return "?";
}

PipelineState::PipelineState(const Graph& g,
                             std::shared_ptr<const RNeighborhoodCache> rn,
                             PlanParams params, OrderingPartition partition)
    : graph_(&g),
      rn_(std::move(rn)),
      params_(std::move(params)),
      partition_(std::move(partition)) {
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  if (partition_.band.size() != n) {
    throw InvalidParams("partition size does not match the graph");
  }
  coloring_.colors.assign(m, params_.min_color());
  sums_ = weighted_degrees(g, coloring_);
  s_pairs_.assign(n, std::nullopt);
  anchor_.assign(n, std::nullopt);
  e_prime_.assign(m, false);
  list_.assign(m, std::nullopt);
  final_sum_.assign(n, std::nullopt);
}

void PipelineState::set_color(EdgeId e, Color c) {
  if (c < params_.min_color() || c > params_.max_color()) {
    throw InvariantViolation(ename(*graph_, e) + ": colour " +
                             std::to_string(c) + " outside [" +
                             std::to_string(params_.min_color()) + ", " +
                             std::to_string(params_.max_color()) + "]");
  }
  const std::int64_t delta = c - coloring_[e];
  sums_.sums[graph_->edge(e).u] += delta;
  sums_.sums[graph_->edge(e).v] += delta;
  coloring_[e] = c;
}

void PipelineState::assign_initial(EdgeColoring c) {
  if (c.size() != graph_->edge_count()) {
    throw InvalidParams("colouring size does not match the graph");
  }
  for (Color x : c.colors) {
    if (x < params_.min_color() || x > params_.max_color()) {
      throw InvariantViolation("initial colour " + std::to_string(x) +
                               " outside the admissible window");
    }
  }
  coloring_ = std::move(c);
  sums_ = weighted_degrees(*graph_, coloring_);
}

PipelineState init_state(const Graph& g,
                         std::shared_ptr<const RNeighborhoodCache> rn,
                         const PlanParams& params,
                         OrderingPartition partition) {
  if (g.has_isolated_edge()) {
    throw IsolatedEdge("graph has an isolated edge");
  }
  const auto delta = static_cast<std::int64_t>(g.max_degree());
  if (params.q <= delta) {
    throw InvalidParams("q = " + std::to_string(params.q) +
                        " must exceed the maximum degree " +
                        std::to_string(delta));
  }
  PipelineState state(g, std::move(rn), params, std::move(partition));
  const auto& part = state.partition();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (part.in(v, Band::kC) || g.degree(v) == 0) continue;
    for (const auto& inc : g.incident(v)) {
      if (part.in(inc.neighbor, Band::kC)) {
        state.set_anchor(v, inc.edge);
        break;
      }
    }
    if (!state.anchor(v)) {
      throw InfeasiblePartition(vname(v) + " has no neighbour in C");
    }
  }
  state.assign_initial(
      shift(vizing_color(g), params.big_q + params.q - delta - 1));
  return state;
}

PipelineState init_state(const Graph& g, const PlanParams& params,
                         OrderingPartition partition) {
  return init_state(g, std::make_shared<RNeighborhoodCache>(g, params.r),
                    params, std::move(partition));
}

AttainableSums::AttainableSums(const PipelineState& state, Vertex v) {
  const Graph& g = state.graph();
  const auto& part = state.partition();
  const auto& p = state.params();
  if (part.in(v, Band::kC) || !state.anchor(v)) {
    throw InvalidParams(vname(v) + " is not an anchored A or B vertex");
  }
  for (Vertex u : state.neighborhoods().of(v)) {
    if (part.precedes(u, v) && !part.in(u, Band::kC) && !state.processed(u)) {
      throw UnprocessedBackwardNeighbor(vname(u) + " precedes " + vname(v) +
                                        " but is unprocessed");
    }
  }
  big_q_ = p.big_q;
  q_ = p.q;
  anchor_ = *state.anchor(v);
  base_ = state.sum(v) - state.color(anchor_);
  for (const auto& inc : g.incident(v)) {
    if (inc.edge == anchor_) continue;
    const Color c = state.color(inc.edge);
    if (part.precedes(inc.neighbor, v)) {
      if (!state.processed(inc.neighbor)) {
        throw UnprocessedBackwardNeighbor(vname(inc.neighbor) +
                                          " precedes " + vname(v) +
                                          " but is unprocessed");
      }
      const SumPair& sp = *state.s_pair(inc.neighbor);
      const std::int64_t su = state.sum(inc.neighbor);
      if (su == sp.low && c + big_q_ <= p.max_color()) {
        plus_.push_back(inc.edge);
      } else if (su == sp.high() && c - big_q_ >= p.min_color()) {
        minus_.push_back(inc.edge);
      }
    } else if (c + q_ <= p.max_color()) {
      forward_.push_back(inc.edge);
    }
  }

  auto blocked = adjacent_residues(state, anchor_, q_, false);
  anchor_options_.push_back(state.color(anchor_));
  for (Color t = big_q_ + q_; t <= big_q_ + 2 * q_; ++t) {
    if (!blocked.contains(floor_mod(t, q_))) anchor_options_.push_back(t);
  }
  std::sort(anchor_options_.begin(), anchor_options_.end());
  anchor_options_.erase(
      std::unique(anchor_options_.begin(), anchor_options_.end()),
      anchor_options_.end());

  const auto minus = static_cast<std::int64_t>(minus_.size());
  const auto plus = static_cast<std::int64_t>(plus_.size());
  const auto fwd = static_cast<std::int64_t>(forward_.size());
  for (std::int64_t j = -minus; j <= plus; ++j) {
    for (std::int64_t k = 0; k <= fwd; ++k) {
      shifts_.push_back(big_q_ * j + q_ * k);
    }
  }
  std::sort(shifts_.begin(), shifts_.end());
  shifts_.erase(std::unique(shifts_.begin(), shifts_.end()), shifts_.end());

  cursor_.assign(shifts_.size(), 0);
  for (std::size_t i = 0; i < shifts_.size(); ++i) {
    heap_.emplace_back(base_ + shifts_[i] + anchor_options_[0], i);
  }
  std::make_heap(heap_.begin(), heap_.end(), std::greater<>());
}

std::optional<std::int64_t> AttainableSums::next() {
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
    auto [s, i] = heap_.back();
    heap_.pop_back();
    if (++cursor_[i] < anchor_options_.size()) {
      heap_.emplace_back(base_ + shifts_[i] + anchor_options_[cursor_[i]], i);
      std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
    }
    if (!last_ || s != *last_) {
      last_ = s;
      return s;
    }
  }
  return std::nullopt;
}

MoveSet AttainableSums::moves_for(std::int64_t sum) const {
  const auto minus = static_cast<std::int64_t>(minus_.size());
  const auto plus = static_cast<std::int64_t>(plus_.size());
  const auto fwd = static_cast<std::int64_t>(forward_.size());
  // Smallest |j| first, negative before positive.
  std::vector<std::int64_t> js;
  js.push_back(0);
  for (std::int64_t a = 1; a <= std::max(minus, plus); ++a) {
    if (a <= minus) js.push_back(-a);
    if (a <= plus) js.push_back(a);
  }
  for (std::int64_t j : js) {
    for (std::int64_t k = 0; k <= fwd; ++k) {
      const Color t = sum - base_ - big_q_ * j - q_ * k;
      if (!std::binary_search(anchor_options_.begin(), anchor_options_.end(),
                              t)) {
        continue;
      }
      MoveSet m;
      for (std::size_t i = 0; i < plus_.size(); ++i) {
        m.backward.emplace_back(plus_[i],
                                j > 0 && static_cast<std::int64_t>(i) < j
                                    ? big_q_
                                    : 0);
      }
      for (std::size_t i = 0; i < minus_.size(); ++i) {
        m.backward.emplace_back(minus_[i],
                                j < 0 && static_cast<std::int64_t>(i) < -j
                                    ? -big_q_
                                    : 0);
      }
      for (std::size_t i = 0; i < forward_.size(); ++i) {
        m.forward.emplace_back(forward_[i],
                               static_cast<std::int64_t>(i) < k ? q_ : 0);
      }
      m.anchor = anchor_;
      m.anchor_target = t;
      return m;
    }
  }
  throw InvariantViolation("sum " + std::to_string(sum) +
                           " is not attainable");
}

std::vector<AttainableSum> attainable_sums(const PipelineState& state,
                                           Vertex v) {
  AttainableSums lazy(state, v);
  std::vector<AttainableSum> out;
  while (auto s = lazy.next()) out.push_back({*s, lazy.moves_for(*s)});
  return out;
}

void apply_moves(PipelineState& state, const MoveSet& moves) {
  for (const auto& [e, d] : moves.backward) {
    if (d != 0) state.set_color(e, state.color(e) + d);
  }
  for (const auto& [e, d] : moves.forward) {
    if (d != 0) state.set_color(e, state.color(e) + d);
  }
  if (state.color(moves.anchor) != moves.anchor_target) {
    state.set_color(moves.anchor, moves.anchor_target);
  }
}

void process_vertex_A(PipelineState& state, Vertex v, ChoicePolicy policy) {
  process_vertex(state, v, Band::kA, true, policy);
}

void process_vertex_B(PipelineState& state, Vertex v, ChoicePolicy policy) {
  process_vertex(state, v, Band::kB, false, policy);
}

void process_epp(PipelineState& state, const std::vector<EdgeId>& e_prime) {
  require_stage(state, Stage::kBProcessed, "process_epp");
  const Graph& g = state.graph();
  const auto& part = state.partition();
  const auto& p = state.params();
  for (EdgeId e : e_prime) {
    const Edge& ed = g.edge(e);
    if (!part.in(ed.u, Band::kC) || !part.in(ed.v, Band::kC)) {
      throw InvalidParams(ename(g, e) + " is not inside C");
    }
    state.set_e_prime(e);
    state.set_color(e, p.q);
  }
  std::vector<EdgeId> e_second;
  std::vector<bool> covered(g.vertex_count(), false);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (!part.in(ed.u, Band::kC) || !part.in(ed.v, Band::kC)) continue;
    if (state.in_e_prime(e)) continue;
    e_second.push_back(e);
    covered[ed.u] = covered[ed.v] = true;
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (part.in(v, Band::kC) && !covered[v] && g.degree(v) > 0) {
      throw InfeasiblePartition(vname(v) + " has no E'' edge");
    }
  }
  const std::int64_t limit = 6 * p.delta_max;
  for (EdgeId e : e_second) {
    const Edge& ed = g.edge(e);
    const auto blocked = adjacent_residues(state, e, p.q, true);
    const Color c0 = state.color(e);
    std::optional<std::int64_t> found;
    for (std::int64_t a = 0; a <= limit; ++a) {
      if (floor_mod(state.sum(ed.u) + a, 3) == 0) continue;
      if (floor_mod(state.sum(ed.v) + a, 3) == 0) continue;
      if (blocked.contains(floor_mod(c0 + a, p.q))) continue;
      if (c0 + a > p.max_color()) break;
      found = a;
      break;
    }
    if (!found) {
      throw NoAdmissibleAddition(ename(g, e) + ": no addition in [0, " +
                                 std::to_string(limit) + "]");
    }
    if (*found != 0) state.set_color(e, c0 + *found);
  }
  state.set_stage(Stage::kEppDone);
}

std::size_t list_count(const PlanParams& params) {
  if (params.big_q % kListStride != 0) {
    throw InvalidParams("Q = " + std::to_string(params.big_q) +
                        " is not a multiple of 96");
  }
  return static_cast<std::size_t>(params.big_q / kListStride);
}

std::int64_t list_element(std::size_t list, std::size_t index) {
  return kListStride * static_cast<std::int64_t>(list) +
         3 * static_cast<std::int64_t>(index);
}

std::vector<std::size_t> available_lists(const PipelineState& state,
                                         EdgeId e) {
  const auto& p = state.params();
  const std::size_t count = list_count(p);
  std::vector<bool> blocked(count, false);
  for (std::int64_t b : adjacent_residues(state, e, p.big_q, true)) {
    const std::int64_t x = floor_mod(b - p.q, p.big_q);
    if (x % 3 == 0) blocked[static_cast<std::size_t>(x / kListStride)] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (!blocked[i]) out.push_back(i);
  }
  return out;
}

ListCheck check_lists(const PipelineState& state) {
  const Graph& g = state.graph();
  const auto& part = state.partition();
  const auto& p = state.params();
  const std::int64_t big_q = p.big_q;
  const double lam3 = p.profile.lambda3(p.delta_max);
  ListCheck out;
  std::vector<std::int64_t> diff;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!part.in(v, Band::kC)) continue;

    std::size_t conflicted = 0;
    for (const auto& inc : g.incident(v)) {
      if (!state.in_e_prime(inc.edge)) continue;
      const auto li = state.list_of(inc.edge);
      bool shares = false;
      for (Vertex x : {v, inc.neighbor}) {
        for (const auto& other : g.incident(x)) {
          if (other.edge == inc.edge || !state.in_e_prime(other.edge)) continue;
          if (state.list_of(other.edge) == li) shares = true;
        }
      }
      if (shares) ++conflicted;
    }
    if (conflicted > kListSize - 1) ++out.r_failures;

    const double bound = p.profile.relax * 6000.0 *
                         static_cast<double>(g.degree(v)) / lam3;
    std::vector<std::int64_t> residues;
    for (Vertex u : state.neighborhoods().of(v)) {
      if (!part.in(u, Band::kC)) continue;
      if (!must_compare_degrees(p, g.degree(u), g.degree(v))) continue;
      residues.push_back(floor_mod(state.sum(u), big_q));
    }
    if (static_cast<double>(residues.size()) <= bound) continue;
    diff.assign(static_cast<std::size_t>(big_q) + 1, 0);
    std::int64_t everywhere = 0;
    for (std::int64_t s : residues) {
      if (2 * kWindow + 1 >= big_q) {
        ++everywhere;
        continue;
      }
      const std::int64_t lo = floor_mod(s - kWindow, big_q);
      const std::int64_t hi = floor_mod(s + kWindow, big_q);
      if (lo <= hi) {
        ++diff[lo];
        --diff[hi + 1];
      } else {
        ++diff[lo];
        --diff[big_q];
        ++diff[0];
        --diff[hi + 1];
      }
    }
    std::int64_t running = 0;
    for (std::int64_t t = 0; t < big_q; ++t) {
      running += diff[t];
      if (t % 3 == 0) continue;
      if (static_cast<double>(running + everywhere) > bound) ++out.t_failures;
    }
  }
  return out;
}

ListAssignment assign_lists(PipelineState& state, std::uint64_t seed,
                            int budget, bool strict) {
  require_stage(state, Stage::kEppDone, "assign_lists");
  if (budget < 1) throw InvalidParams("budget must be >= 1");
  const Graph& g = state.graph();
  const auto& p = state.params();
  list_count(p);
  std::vector<EdgeId> edges;
  std::vector<std::vector<std::size_t>> options;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!state.in_e_prime(e)) continue;
    auto avail = available_lists(state, e);
    if (avail.empty()) {
      throw NoAvailableList(ename(g, e) + " has no entirely available list");
    }
    edges.push_back(e);
    options.push_back(std::move(avail));
  }
  auto apply = [&](const std::vector<std::size_t>& lists) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      state.set_list(edges[i], lists[i]);
      state.set_color(edges[i], p.q + list_element(lists[i], 0));
    }
  };

  ListAssignment best;
  std::vector<std::size_t> best_lists;
  std::vector<std::size_t> lists(edges.size());
  for (int it = 0; it < budget; ++it) {
    Rng rng = make_rng(derive_seed(seed, "lists", it));
    for (std::size_t i = 0; i < edges.size(); ++i) {
      lists[i] = options[i][uniform_below(rng, options[i].size())];
    }
    apply(lists);
    ListCheck check = check_lists(state);
    if (check.passed()) {
      state.set_stage(Stage::kListsAssigned);
      return {check, it + 1};
    }
    const auto score = check.r_failures + check.t_failures;
    if (best_lists.empty() ||
        score < best.check.r_failures + best.check.t_failures) {
      best = {check, it + 1};
      best_lists = lists;
    }
  }
  if (strict) {
    throw BudgetExhausted("list assignment: no accepted sample in " +
                          std::to_string(budget) + " attempts");
  }
  apply(best_lists);
  best.iterations = budget;
  state.set_stage(Stage::kListsAssigned);
  return best;
}

void recolor_lists(PipelineState& state) {
  require_stage(state, Stage::kListsAssigned, "recolor_lists");
  const Graph& g = state.graph();
  const auto& p = state.params();
  std::map<std::size_t, std::vector<EdgeId>> groups;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (state.in_e_prime(e)) groups[*state.list_of(e)].push_back(e);
  }
  for (const auto& [list, edges] : groups) {
    std::unordered_map<Vertex, Vertex> local;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    auto id = [&](Vertex x) {
      auto [it, inserted] =
          local.emplace(x, static_cast<Vertex>(local.size()));
      return it->second;
    };
    for (EdgeId e : edges) {
      pairs.emplace_back(id(g.edge(e).u), id(g.edge(e).v));
    }
    Graph sub(local.size(), pairs);
    if (sub.max_degree() > kListSize - 1) {
      throw ListDegreeExceeded("list " + std::to_string(list) +
                               " subgraph has maximum degree " +
                               std::to_string(sub.max_degree()));
    }
    EdgeColoring c = vizing_color(sub);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const EdgeId le = *sub.find_edge(pairs[i].first, pairs[i].second);
      state.set_color(edges[i],
                      p.q + list_element(list, static_cast<std::size_t>(
                                                   c[le] - 1)));
    }
  }
  if (!proper_modulo(g, state.coloring(), p.big_q)) {
    throw InvariantViolation("colouring not proper mod Q after recolouring");
  }
  state.set_stage(Stage::kRecolored);
}

void lower_B(PipelineState& state) {
  require_stage(state, Stage::kRecolored, "lower_B");
  const Graph& g = state.graph();
  const auto& p = state.params();
  for (Vertex v : state.partition().members(Band::kB)) {
    if (g.degree(v) == 0) continue;
    const auto& sp = state.s_pair(v);
    if (!sp) throw InvariantViolation(vname(v) + " was never processed");
    if (state.sum(v) == sp->low) continue;
    const auto e = state.anchor(v);
    if (!e) throw MissingCEdge(vname(v) + " has no anchor edge");
    const Color c = state.color(*e);
    if (c < p.big_q + p.q - p.delta_max || c > p.big_q + 2 * p.q) {
      throw MissingCEdge(vname(v) + ": anchor " + ename(g, *e) +
                         " has colour " + std::to_string(c) +
                         " outside [Q+q-Delta, Q+2q]");
    }
    state.set_color(*e, c - p.big_q);
  }
  state.set_stage(Stage::kBLowered);
}

bool must_compare_degrees(const PlanParams& params, std::size_t du,
                          std::size_t dv) {
  if (!sum_ranges_disjoint(params, du, dv)) return true;
  const double hi = static_cast<double>(std::max(du, dv));
  const double lo = static_cast<double>(std::min(du, dv));
  double factor;
  if (params.profile.kind == ProfileKind::kPaper) {
    factor = 5.0 * log_delta(params.delta_max) * params.profile.relax;
  } else {
    factor = static_cast<double>(params.max_color()) /
             static_cast<double>(params.min_color());
  }
  return hi < factor * lo;
}

bool sum_ranges_disjoint(const PlanParams& params, std::size_t du,
                         std::size_t dv) {
  const auto lo = static_cast<std::int64_t>(std::min(du, dv));
  const auto hi = static_cast<std::int64_t>(std::max(du, dv));
  return lo * params.max_color() < hi * params.min_color();
}

void finalize_C(PipelineState& state, ChoicePolicy policy) {
  require_stage(state, Stage::kBLowered, "finalize_C");
  const Graph& g = state.graph();
  const auto& part = state.partition();
  const auto& p = state.params();
  const std::size_t spread = std::max<std::size_t>(1, policy.spread);
  for (Vertex v : part.members(Band::kC)) {
    std::vector<EdgeId> plus, minus;
    for (const auto& inc : g.incident(v)) {
      if (!part.in(inc.neighbor, Band::kA)) continue;
      const SumPair& sp = *state.s_pair(inc.neighbor);
      const Color c = state.color(inc.edge);
      const std::int64_t su = state.sum(inc.neighbor);
      if (su == sp.low && c + p.big_q <= p.max_color()) {
        plus.push_back(inc.edge);
      } else if (su == sp.high() && c - p.big_q >= p.min_color()) {
        minus.push_back(inc.edge);
      }
    }
    std::unordered_set<std::int64_t> forbidden;
    for (Vertex u : state.neighborhoods().of(v)) {
      if (part.in(u, Band::kB)) {
        forbidden.insert(state.sum(u));
      } else if (part.in(u, Band::kC) && state.finalized(u) &&
                 must_compare_degrees(p, g.degree(u), g.degree(v))) {
        forbidden.insert(state.sum(u));
      }
    }
    const auto np = static_cast<std::int64_t>(plus.size());
    const auto nm = static_cast<std::int64_t>(minus.size());
    std::vector<std::int64_t> ks{0};
    for (std::int64_t a = 1; a <= std::max(np, nm); ++a) {
      if (a <= nm) ks.push_back(-a);
      if (a <= np) ks.push_back(a);
    }
    std::vector<std::int64_t> candidates;
    for (std::int64_t k : ks) {
      if (!forbidden.contains(state.sum(v) + k * p.big_q)) {
        candidates.push_back(k);
        if (candidates.size() >= spread) break;
      }
    }
    if (candidates.empty()) {
      throw NoAdmissibleSum(vname(v) + ": every reachable sum in C clashes");
    }
    const std::int64_t k = pick(candidates, policy);
    for (std::int64_t i = 0; i < k; ++i) {
      state.set_color(plus[i], state.color(plus[i]) + p.big_q);
    }
    for (std::int64_t i = 0; i < -k; ++i) {
      state.set_color(minus[i], state.color(minus[i]) - p.big_q);
    }
    state.set_finalized(v);
  }
  state.set_stage(Stage::kDone);
}

std::vector<std::string> check_invariants(const PipelineState& state) {
  const Graph& g = state.graph();
  const auto& part = state.partition();
  const auto& p = state.params();
  const Stage stage = state.stage();
  std::vector<std::string> out;

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Color c = state.color(e);
    if (c < p.min_color() || c > p.max_color()) {
      out.push_back(ename(g, e) + ": colour " + std::to_string(c) +
                    " outside the admissible window");
    }
  }
  if (weighted_degrees(g, state.coloring()) != state.sums()) {
    out.push_back("maintained sums differ from recomputed weighted degrees");
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto& sp = state.s_pair(v);
    if (part.in(v, Band::kC)) {
      if (sp) out.push_back(vname(v) + " in C carries a pair");
    } else {
      const bool due = (part.in(v, Band::kA) && stage >= Stage::kAProcessed) ||
                       stage >= Stage::kBProcessed;
      if (due && !sp && g.degree(v) > 0) out.push_back(vname(v) + " was not processed");
      if (!sp) continue;
      if (!sp->contains(state.sum(v))) {
        out.push_back(vname(v) + ": sum " + std::to_string(state.sum(v)) +
                      " left its pair");
      }
      if (part.in(v, Band::kA) && floor_mod(state.sum(v), 3) != 0) {
        out.push_back(vname(v) + " in A has sum not divisible by 3");
      }
      if (part.in(v, Band::kB) && stage >= Stage::kBLowered &&
          state.sum(v) != sp->low) {
        out.push_back(vname(v) + " in B is not at the low element");
      }
      for (Vertex u : state.neighborhoods().of(v)) {
        if (u < v && state.processed(u) &&
            !pairs_disjoint(*state.s_pair(u), *sp)) {
          out.push_back(vname(u) + " and " + vname(v) + " share a pair");
        }
      }
    }
    if (state.finalized(v) && *state.final_sum(v) != state.sum(v)) {
      out.push_back(vname(v) + ": finalized sum changed");
    }
    if (stage >= Stage::kEppDone && part.in(v, Band::kC) && g.degree(v) > 0 &&
        floor_mod(state.sum(v), 3) == 0) {
      out.push_back(vname(v) + " in C has sum divisible by 3");
    }
    if (stage == Stage::kDone && part.in(v, Band::kC) && !state.finalized(v)) {
      out.push_back(vname(v) + " in C was not finalized");
    }
  }
  if (stage <= Stage::kBProcessed) {
    if (!proper_modulo(g, state.coloring(), p.q)) {
      out.push_back("colouring not proper mod q");
    }
  } else if (stage <= Stage::kListsAssigned) {
    if (!proper_modulo_outside_e_prime(state, p.q)) {
      out.push_back("edges outside E' not proper mod q");
    }
  } else if (!proper_modulo(g, state.coloring(), p.big_q)) {
    out.push_back("colouring not proper mod Q");
  }
  return out;
}

Fallback parse_fallback(std::string_view name) {
  if (name == "fail") return Fallback::kFail;
  if (name == "greedy") return Fallback::kGreedy;
  if (name == "exact") return Fallback::kExact;
  throw InvalidParams("unknown fallback '" + std::string(name) + "'");
}

std::string_view to_string(Fallback f) {
  switch (f) {
    case Fallback::kFail: return "fail";
    case Fallback::kGreedy: return "greedy";
    case Fallback::kExact: return "exact";
  }
  return "?";
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::kSuccess: return "success";
    case Outcome::kFallbackGreedy: return "fallback_greedy";
    case Outcome::kFallbackExact: return "fallback_exact";
    case Outcome::kFailed: return "failed";
  }
  return "?";
}

Outcome parse_outcome(std::string_view name) {
  for (Outcome o : {Outcome::kSuccess, Outcome::kFallbackGreedy,
                    Outcome::kFallbackExact, Outcome::kFailed}) {
    if (to_string(o) == name) return o;
  }
  throw InvalidParams("unknown outcome '" + std::string(name) + "'");
}

namespace {

class Runner {
 public:
  Runner(const Graph& g, const PipelineOptions& opt,
         std::shared_ptr<const RNeighborhoodCache> rn, PipelineLog& log)
      : g_(g), opt_(opt), rn_(std::move(rn)), log_(log) {}

  // One attempt from a fresh ordering; throws on the first unrecovered
  // stage error and records the stage name in stage_.
  EdgeColoring attempt(std::uint64_t seed) {
    const auto& p = log_.params;
    const auto& profile = p.profile;

    stage_ = "ordering";
    pairs_.clear();
    auto structure = [this](const OrderingPartition& part,
                            LemmaCheckReport& report) {
      for (Vertex v = 0; v < g_.vertex_count(); ++v) {
        if (g_.degree(v) == 0) continue;
        const auto dc = band_degree(g_, part, v, Band::kC);
        const std::size_t need = part.in(v, Band::kC) ? 2 : 1;
        if (dc < need) {
          report.failures.push_back({v, LemmaProperty::kStructure,
                                     static_cast<double>(dc),
                                     static_cast<double>(need), true});
        }
      }
    };
    OrderingSample ordering =
        sample_until_ordering(g_, *rn_, profile, derive_seed(seed, "ordering"),
                              opt_.budget, false, structure);
    log_.stage_retries["ordering"] += ordering.iterations - 1;
    log_.ordering_check_passed = ordering.report.passed();

    stage_ = "init";
    PipelineState state = init_state(g_, rn_, p, ordering.partition);
    audit(state);

    stage_ = "process_A";
    with_retries(state, seed, [&](PipelineState& s, ChoicePolicy policy) {
      for (Vertex v : s.partition().members(Band::kA)) {
        if (g_.degree(v) > 0) process_vertex_A(s, v, policy);
      }
      s.set_stage(Stage::kAProcessed);
    });

    stage_ = "process_B";
    with_retries(state, seed, [&](PipelineState& s, ChoicePolicy policy) {
      for (Vertex v : s.partition().members(Band::kB)) {
        if (g_.degree(v) > 0) process_vertex_B(s, v, policy);
      }
      s.set_stage(Stage::kBProcessed);
    });

    stage_ = "sparse";
    const auto c_members = state.partition().members(Band::kC);
    InducedSubgraph gc = induced_subgraph(g_, c_members);
    auto spanning = [&gc](const SparseSubgraph& sub, LemmaCheckReport& report) {
      for (Vertex v = 0; v < gc.graph.vertex_count(); ++v) {
        if (sub.degree[v] >= gc.graph.degree(v)) {
          report.failures.push_back({v, LemmaProperty::kStructure,
                                     static_cast<double>(sub.degree[v]),
                                     static_cast<double>(gc.graph.degree(v)),
                                     false});
        }
      }
    };
    SparseSample sparse =
        sample_sparse_subgraph(gc.graph, p.delta_max, profile,
                               derive_seed(seed, "sparse"), opt_.budget,
                               false, spanning);
    log_.stage_retries["sparse"] += sparse.iterations - 1;
    std::vector<EdgeId> e_prime;
    for (EdgeId le : sparse.subgraph.edges) e_prime.push_back(gc.host_edge[le]);

    stage_ = "process_epp";
    process_epp(state, e_prime);
    audit(state);

    stage_ = "assign_lists";
    ListAssignment lists =
        assign_lists(state, derive_seed(seed, "lists"), opt_.budget, false);
    log_.stage_retries["assign_lists"] += lists.iterations - 1;
    audit(state);

    stage_ = "recolor_lists";
    recolor_lists(state);
    audit(state);

    stage_ = "lower_B";
    lower_B(state);
    audit(state);

    stage_ = "finalize_C";
    with_retries(state, seed, [](PipelineState& s, ChoicePolicy policy) {
      finalize_C(s, policy);
    });

    stage_ = "verify";
    VerifyReport report = verify(g_, state.coloring(), *rn_);
    if (!report.ok()) {
      throw InvariantViolation("completed colouring failed verification");
    }
    return state.coloring();
  }

  const std::string& stage() const { return stage_; }

 private:
  // Runs a stage; on NoAdmissibleSum restores the entry snapshot and retries
  // with randomised tie-breaking.
  void with_retries(PipelineState& state, std::uint64_t seed,
                    const std::function<void(PipelineState&, ChoicePolicy)>&
                        body) {
    const PipelineState snapshot = state;
    for (int attempt = 0;; ++attempt) {
      Rng rng = make_rng(derive_seed(seed, stage_, attempt));
      ChoicePolicy policy;
      policy.audit = opt_.audit && attempt == 0;
      if (attempt > 0) {
        policy.rng = &rng;
        policy.spread = 8;
      }
      try {
        body(state, policy);
        audit(state);
        return;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kNoAdmissibleSum ||
            attempt >= opt_.local_retries) {
          throw;
        }
        state = snapshot;
        ++log_.stage_retries[stage_];
      }
    }
  }

  void audit(const PipelineState& state) {
    if (!opt_.instrument) return;
    auto problems = check_invariants(state);
    const std::size_t n = g_.vertex_count();
    if (pairs_.size() != n) pairs_.assign(n, std::nullopt);
    for (Vertex v = 0; v < n; ++v) {
      if (pairs_[v] && state.s_pair(v) != pairs_[v] &&
          state.stage() > Stage::kInit) {
        problems.push_back(vname(v) + ": pair changed after being set");
      }
      pairs_[v] = state.s_pair(v);
    }
    if (!problems.empty()) {
      std::string msg = "after " + std::string(to_string(state.stage())) + ":";
      for (const auto& s : problems) msg += " " + s + ";";
      throw InvariantViolation(msg);
    }
  }

  const Graph& g_;
  const PipelineOptions& opt_;
  std::shared_ptr<const RNeighborhoodCache> rn_;
  PipelineLog& log_;
  std::string stage_;
  std::vector<std::optional<SumPair>> pairs_;
};

}  // namespace

PipelineResult run_pipeline(const Graph& g, const PipelineOptions& options) {
  if (g.has_isolated_edge()) throw IsolatedEdge("graph has an isolated edge");
  if (options.restarts < 1) throw InvalidParams("restarts must be >= 1");
  if (options.local_retries < 0) {
    throw InvalidParams("local retries must be >= 0");
  }
  PipelineResult result;
  PipelineLog& log = result.log;
  const auto delta =
      std::max<std::int64_t>(2, static_cast<std::int64_t>(g.max_degree()));
  log.params = override_params(compute_params(delta, options.r,
                                              options.profile),
                               options.q_override, options.big_q_override);
  const auto& p = log.params;
  log.bound_2q_plus_2q = p.max_color();
  log.theorem3_bound = p.theorem3_bound();
  log.min_degree_condition =
      static_cast<double>(g.min_degree()) >= p.profile.lambda8(p.delta_max);
  auto rn = std::make_shared<const RNeighborhoodCache>(g, options.r);

  auto finish = [&](EdgeColoring c, Outcome outcome) {
    log.outcome = outcome;
    log.verify = verify(g, c, *rn);
    if (c.size() > 0) {
      log.max_color = *std::max_element(c.colors.begin(), c.colors.end());
      log.min_color = *std::min_element(c.colors.begin(), c.colors.end());
    }
    result.coloring = std::move(c);
    return result;
  };

  if (g.edge_count() == 0) {
    log.ordering_check_passed = true;
    return finish(EdgeColoring{}, Outcome::kSuccess);
  }

  Runner runner(g, options, rn, log);
  for (int restart = 0; restart < options.restarts; ++restart) {
    log.restarts_used = restart;
    try {
      EdgeColoring c =
          runner.attempt(derive_seed(options.seed, "restart", restart));
      return finish(std::move(c), Outcome::kSuccess);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kInvariantViolation) throw;
      log.failures.push_back({restart, runner.stage(),
                              std::string(to_string(e.kind())), e.what()});
    }
  }

  log.restarts_used = options.restarts;
  switch (options.fallback) {
    case Fallback::kFail:
      log.outcome = Outcome::kFailed;
      return result;
    case Fallback::kGreedy:
      return finish(greedy_distinguishing(g, options.r),
                    Outcome::kFallbackGreedy);
    case Fallback::kExact: {
      const auto ms = std::chrono::milliseconds(
          static_cast<std::int64_t>(options.exact_timeout_seconds * 1000.0));
      ExactResult exact = exact_index(g, options.r, ms);
      return finish(std::move(exact.witness), Outcome::kFallbackExact);
    }
  }
  return result;
}

}  // namespace chromasum
