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

#ifndef CHROMASUM_PIPELINE_HPP
#define CHROMASUM_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chromasum/coloring.hpp"
#include "chromasum/graph.hpp"
#include "chromasum/lemmas.hpp"
#include "chromasum/params.hpp"
#include "chromasum/rng.hpp"

namespace chromasum {

enum class Stage {
  kInit,
  kAProcessed,
  kBProcessed,
  kEppDone,
  kListsAssigned,
  kRecolored,
  kBLowered,
  kDone,
};

std::string_view to_string(Stage stage);

// Evolving colouring of one run. The graph and the r-neighbourhood cache are
// shared and must outlive the state; everything else is a value.
class PipelineState {
 public:
  PipelineState(const Graph& g, std::shared_ptr<const RNeighborhoodCache> rn,
                PlanParams params, OrderingPartition partition);

  const Graph& graph() const { return *graph_; }
  const RNeighborhoodCache& neighborhoods() const { return *rn_; }
  const PlanParams& params() const { return params_; }
  const OrderingPartition& partition() const { return partition_; }
  const EdgeColoring& coloring() const { return coloring_; }
  const SumProfile& sums() const { return sums_; }
  std::int64_t sum(Vertex v) const { return sums_[v]; }
  Color color(EdgeId e) const { return coloring_[e]; }

  // Keeps the weighted degrees in sync; throws InvariantViolation when the
  // colour leaves [q - Delta, 2Q + 2q].
  void set_color(EdgeId e, Color c);
  void assign_initial(EdgeColoring c);

  const std::optional<SumPair>& s_pair(Vertex v) const { return s_pairs_[v]; }
  void set_s_pair(Vertex v, SumPair p) { s_pairs_[v] = p; }
  bool processed(Vertex v) const { return s_pairs_[v].has_value(); }

  std::optional<EdgeId> anchor(Vertex v) const { return anchor_[v]; }
  void set_anchor(Vertex v, EdgeId e) { anchor_[v] = e; }

  Stage stage() const { return stage_; }
  void set_stage(Stage s) { stage_ = s; }

  // C-phase bookkeeping: E' membership and the list index of E' edges.
  bool in_e_prime(EdgeId e) const { return e_prime_[e]; }
  void set_e_prime(EdgeId e) { e_prime_[e] = true; }
  std::optional<std::size_t> list_of(EdgeId e) const { return list_[e]; }
  void set_list(EdgeId e, std::size_t list) { list_[e] = list; }

  bool finalized(Vertex v) const { return final_sum_[v].has_value(); }
  std::optional<std::int64_t> final_sum(Vertex v) const { return final_sum_[v]; }
  // Records the current sum as final.
  void set_finalized(Vertex v) { final_sum_[v] = sums_[v]; }

 private:
  const Graph* graph_;
  std::shared_ptr<const RNeighborhoodCache> rn_;
  PlanParams params_;
  OrderingPartition partition_;
  EdgeColoring coloring_;
  SumProfile sums_;
  std::vector<std::optional<SumPair>> s_pairs_;
  std::vector<std::optional<EdgeId>> anchor_;
  std::vector<bool> e_prime_;
  std::vector<std::optional<std::size_t>> list_;
  std::vector<std::optional<std::int64_t>> final_sum_;
  Stage stage_ = Stage::kInit;
};

// Vizing colouring shifted into [Q+q-Delta, Q+q]; anchors e_v chosen as the
// edge to the lowest-index C-neighbour. Throws IsolatedEdge,
// InfeasiblePartition.
PipelineState init_state(const Graph& g,
                         std::shared_ptr<const RNeighborhoodCache> rn,
                         const PlanParams& params, OrderingPartition partition);
PipelineState init_state(const Graph& g, const PlanParams& params,
                         OrderingPartition partition);

// Admissible colour changes at one vertex: +-Q on backward edges (keeping
// the other end inside its pair), 0 or +q on forward edges other than the
// anchor, and a new anchor colour.
struct MoveSet {
  std::vector<std::pair<EdgeId, std::int64_t>> backward;  // delta in {-Q,0,Q}
  std::vector<std::pair<EdgeId, std::int64_t>> forward;   // delta in {0,q}
  EdgeId anchor = 0;
  Color anchor_target = 0;
};

struct AttainableSum {
  std::int64_t sum;
  MoveSet moves;
};

// Lazy enumeration of the distinct attainable sums of one vertex in
// increasing order.
class AttainableSums {
 public:
  // Throws UnprocessedBackwardNeighbor.
  AttainableSums(const PipelineState& state, Vertex v);

  std::optional<std::int64_t> next();
  // Canonical move: smallest net backward shift, then fewest +q edges.
  MoveSet moves_for(std::int64_t sum) const;

  std::size_t plus_capacity() const { return plus_.size(); }
  std::size_t minus_capacity() const { return minus_.size(); }
  std::size_t forward_capacity() const { return forward_.size(); }
  const std::vector<Color>& anchor_options() const { return anchor_options_; }

 private:
  std::int64_t base_ = 0;
  std::int64_t big_q_ = 0;
  std::int64_t q_ = 0;
  EdgeId anchor_ = 0;
  std::vector<EdgeId> plus_;     // backward edges that may gain +Q
  std::vector<EdgeId> minus_;    // backward edges that may lose Q
  std::vector<EdgeId> forward_;  // forward edges other than the anchor
  std::vector<Color> anchor_options_;
  std::vector<std::int64_t> shifts_;  // distinct Q*j + q*k, sorted
  std::vector<std::size_t> cursor_;   // per shift index into anchor options
  std::vector<std::pair<std::int64_t, std::size_t>> heap_;
  std::optional<std::int64_t> last_;
};

std::vector<AttainableSum> attainable_sums(const PipelineState& state,
                                           Vertex v);

void apply_moves(PipelineState& state, const MoveSet& moves);

// How a vertex step picks among admissible candidates. The default takes the
// first (smallest sum); local retries pick uniformly among the first
// `spread`. With `audit`, the lazy choice is cross-checked against a full
// enumeration.
struct ChoicePolicy {
  Rng* rng = nullptr;
  std::size_t spread = 1;
  bool audit = false;
};

void process_vertex_A(PipelineState& state, Vertex v, ChoicePolicy policy = {});
void process_vertex_B(PipelineState& state, Vertex v, ChoicePolicy policy = {});

// E' edges (host edge ids) are set to q; every E'' edge of G[C] receives an
// addition in [0, 6 Delta] making both end sums nonzero mod 3 and avoiding
// the residues mod q of adjacent edges outside E'. Throws
// NoAdmissibleAddition, InfeasiblePartition.
void process_epp(PipelineState& state, const std::vector<EdgeId>& e_prime);

// Lists L_i = {96 i, 96 i + 3, ..., 96 i + 93}, i in [0, Q/96).
std::size_t list_count(const PlanParams& params);
std::int64_t list_element(std::size_t list, std::size_t index);

// Lists none of whose shifted elements q + L_i collide mod Q with an edge
// outside E' adjacent to e.
std::vector<std::size_t> available_lists(const PipelineState& state, EdgeId e);

struct ListCheck {
  std::size_t r_failures = 0;  // vertices with 32+ same-list conflicted edges
  std::size_t t_failures = 0;  // (v, t) windows over the crowding bound
  bool passed() const { return r_failures == 0 && t_failures == 0; }
};

// Evaluates the R_v and T_{v,t} events on the current temporary colours.
ListCheck check_lists(const PipelineState& state);

struct ListAssignment {
  ListCheck check;
  int iterations = 0;
};

// Random entirely-available list per E' edge, resampled until no R_v or
// T_{v,t} event occurs. Throws NoAvailableList, BudgetExhausted (strict).
ListAssignment assign_lists(PipelineState& state, std::uint64_t seed,
                            int budget, bool strict);

// Properly recolours each per-list subgraph from its own list. Throws
// ListDegreeExceeded.
void recolor_lists(PipelineState& state);

// Moves every B sum to the low element of its pair. Throws MissingCEdge.
void lower_B(PipelineState& state);

// Remark-9 style degree class: true when sums of u and v could coincide and
// must therefore be compared.
bool must_compare_degrees(const PlanParams& params, std::size_t du,
                          std::size_t dv);
// True when the weighted-degree ranges [d(q-Delta), d(2Q+2q)] are disjoint.
bool sum_ranges_disjoint(const PlanParams& params, std::size_t du,
                         std::size_t dv);

// Final pass over C, adjusting the edges to A by +-Q. Throws NoAdmissibleSum.
void finalize_C(PipelineState& state, ChoicePolicy policy = {});

// Checks every stage invariant that applies at state.stage(); returns one
// message per violation.
std::vector<std::string> check_invariants(const PipelineState& state);

enum class Fallback { kFail, kGreedy, kExact };

Fallback parse_fallback(std::string_view name);
std::string_view to_string(Fallback f);

struct PipelineOptions {
  int r = 4;
  ScaleProfile profile = ScaleProfile::desk();
  std::uint64_t seed = 0;
  int budget = 500;        // per sampler
  int restarts = 10;       // whole-run resamples
  int local_retries = 3;   // per stage before a restart
  Fallback fallback = Fallback::kFail;
  bool instrument = false; // assert invariants after every stage
  bool audit = false;      // cross-check lazy against full enumeration
  std::optional<std::int64_t> q_override;
  std::optional<std::int64_t> big_q_override;
  double exact_timeout_seconds = 10.0;
};

struct StageFailure {
  int restart;
  std::string stage;
  std::string error;
  std::string message;

  friend bool operator==(const StageFailure&, const StageFailure&) = default;
};

enum class Outcome { kSuccess, kFallbackGreedy, kFallbackExact, kFailed };

std::string_view to_string(Outcome o);
Outcome parse_outcome(std::string_view name);

struct PipelineLog {
  PlanParams params;
  std::map<std::string, int> stage_retries;
  std::vector<StageFailure> failures;
  int restarts_used = 0;
  bool ordering_check_passed = false;
  bool min_degree_condition = false;  // delta >= lambda8(Delta)
  Outcome outcome = Outcome::kFailed;
  Color max_color = 0;
  Color min_color = 0;
  std::int64_t bound_2q_plus_2q = 0;
  double theorem3_bound = 0.0;
  std::optional<VerifyReport> verify;
};

struct PipelineResult {
  std::optional<EdgeColoring> coloring;
  PipelineLog log;

  bool success() const { return log.outcome == Outcome::kSuccess; }
};

// Throws IsolatedEdge before any work.
PipelineResult run_pipeline(const Graph& g, const PipelineOptions& options);

}  // namespace chromasum

#endif  // CHROMASUM_PIPELINE_HPP
