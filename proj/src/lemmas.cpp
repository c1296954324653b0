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

#include "chromasum/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "chromasum/error.hpp"
#include "chromasum/rng.hpp"
#include "json.hpp"

namespace chromasum {

std::string_view to_string(Band band) {
  switch (band) {
    case Band::kA: return "A";
    case Band::kB: return "B";
    case Band::kC: return "C";
  }
  return "?";
}

std::string_view to_string(LemmaProperty p) {
  switch (p) {
    case LemmaProperty::kI: return "i";
    case LemmaProperty::kII: return "ii";
    case LemmaProperty::kIII: return "iii";
    case LemmaProperty::kIV: return "iv";
    case LemmaProperty::kV: return "v";
    case LemmaProperty::kVI: return "vi";
    case LemmaProperty::kSparse: return "sparse";
    case LemmaProperty::kStructure: return "structure";
  }
  return "?";
}

std::vector<Vertex> OrderingPartition::members(Band b) const {
  std::vector<Vertex> out;
  for (Vertex v : order) {
    if (band[v] == b) out.push_back(v);
  }
  return out;
}

OrderingPartition make_partition(std::vector<double> x, double a_threshold,
                                 double c_threshold) {
  OrderingPartition part;
  part.x = std::move(x);
  part.a_threshold = a_threshold;
  part.c_threshold = c_threshold;
  const std::size_t n = part.x.size();
  part.order.resize(n);
  std::iota(part.order.begin(), part.order.end(), Vertex{0});
  std::sort(part.order.begin(), part.order.end(), [&](Vertex a, Vertex b) {
    return part.x[a] != part.x[b] ? part.x[a] < part.x[b] : a < b;
  });
  part.position.resize(n);
  for (std::size_t i = 0; i < n; ++i) part.position[part.order[i]] = i;
  part.band.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    if (part.x[v] < a_threshold) {
      part.band[v] = Band::kA;
    } else if (part.x[v] > c_threshold) {
      part.band[v] = Band::kC;
    } else {
      part.band[v] = Band::kB;
    }
  }
  return part;
}

std::size_t backward_degree(const Graph& g, const OrderingPartition& part,
                            Vertex v) {
  return static_cast<std::size_t>(std::count_if(
      g.incident(v).begin(), g.incident(v).end(),
      [&](const Incidence& inc) { return part.precedes(inc.neighbor, v); }));
}

std::size_t forward_degree(const Graph& g, const OrderingPartition& part,
                           Vertex v) {
  return g.degree(v) - backward_degree(g, part, v);
}

std::size_t band_degree(const Graph& g, const OrderingPartition& part, Vertex v,
                        Band b) {
  return static_cast<std::size_t>(std::count_if(
      g.incident(v).begin(), g.incident(v).end(),
      [&](const Incidence& inc) { return part.in(inc.neighbor, b); }));
}

std::size_t backward_r_degree(const RNeighborhoodCache& rn,
                              const OrderingPartition& part, Vertex v) {
  auto members = rn.of(v);
  return static_cast<std::size_t>(
      std::count_if(members.begin(), members.end(),
                    [&](Vertex u) { return part.precedes(u, v); }));
}

std::size_t band_r_degree(const RNeighborhoodCache& rn,
                          const OrderingPartition& part, Vertex v, Band b) {
  auto members = rn.of(v);
  return static_cast<std::size_t>(std::count_if(
      members.begin(), members.end(), [&](Vertex u) { return part.in(u, b); }));
}

std::string to_json(const LemmaCheckReport& report, int indent) {
  nlohmann::ordered_json j;
  j["passed"] = report.passed();
  auto failures = nlohmann::ordered_json::array();
  for (const LemmaFailure& f : report.failures) {
    failures.push_back({{"vertex", f.vertex},
                        {"property", to_string(f.property)},
                        {"observed", f.observed},
                        {"bound", f.bound},
                        {"relation", f.lower ? ">=" : "<="}});
  }
  j["failures"] = std::move(failures);
  return j.dump(indent);
}

OrderingPartition sample_ordering(const Graph& g, int r,
                                  const ScaleProfile& profile,
                                  std::uint64_t seed) {
  (void)r;
  const auto delta = static_cast<std::int64_t>(g.max_degree());
  Rng rng = make_rng(seed);
  std::vector<double> x(g.vertex_count());
  for (double& value : x) value = uniform_unit(rng);
  return make_partition(std::move(x), 1.0 / profile.lambda2(delta),
                        1.0 - 1.0 / profile.lambda3(delta));
}

LemmaCheckReport check_ordering(const Graph& g, const OrderingPartition& part,
                                int r, const ScaleProfile& profile) {
  return check_ordering(g, part, RNeighborhoodCache(g, r), profile);
}

LemmaCheckReport check_ordering(const Graph& g, const OrderingPartition& part,
                                const RNeighborhoodCache& rn,
                                const ScaleProfile& profile) {
  const auto delta = static_cast<std::int64_t>(g.max_degree());
  const double rho = profile.relax;
  const double lam2 = profile.lambda2(delta);
  const double lam3 = profile.lambda3(delta);
  const double ln_delta = log_delta(delta);
  const double power = std::pow(static_cast<double>(std::max<std::int64_t>(delta, 1)),
                                rn.radius() - 1);
  const bool desk = profile.kind == ProfileKind::kDesk;

  LemmaCheckReport report;
  auto upper = [&](Vertex v, LemmaProperty p, double observed, double bound) {
    if (observed > bound) report.failures.push_back({v, p, observed, bound, false});
  };
  auto lower = [&](Vertex v, LemmaProperty p, double observed, double bound) {
    if (observed < bound) report.failures.push_back({v, p, observed, bound, true});
  };
  // Desk profile: a lower bound that cannot force even one neighbour is void.
  auto band_lower = [&](double bound) {
    return desk && bound < 1.0 ? 0.0 : bound;
  };

  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const double d = static_cast<double>(g.degree(v));
    std::size_t r_in_a = 0, r_in_c = 0, r_backward = 0;
    for (Vertex u : rn.of(v)) {
      r_in_a += part.in(u, Band::kA);
      r_in_c += part.in(u, Band::kC);
      r_backward += part.precedes(u, v);
    }
    const double d_a = static_cast<double>(band_degree(g, part, v, Band::kA));
    const double d_c = static_cast<double>(band_degree(g, part, v, Band::kC));

    upper(v, LemmaProperty::kI, static_cast<double>(r_in_a),
          rho * 2.0 * d * power / lam2);
    upper(v, LemmaProperty::kII, static_cast<double>(r_in_c),
          rho * 2.0 * d * power / lam3);
    lower(v, LemmaProperty::kIII, d_a, band_lower(0.5 * d / lam2 / rho));
    upper(v, LemmaProperty::kIII, d_a, rho * 2.0 * d / lam2);
    lower(v, LemmaProperty::kIV, d_c, band_lower(0.5 * d / lam3 / rho));
    upper(v, LemmaProperty::kIV, d_c, rho * 2.0 * d / lam3);

    if (part.in(v, Band::kB)) {
      const double xd = part.x[v] * d;
      lower(v, LemmaProperty::kV,
            static_cast<double>(backward_degree(g, part, v)),
            std::ceil(xd - rho * std::sqrt(xd) * ln_delta));
      upper(v, LemmaProperty::kVI, static_cast<double>(r_backward),
            std::floor(xd * power + rho * std::sqrt(xd * power) * ln_delta));
    }
  }
  return report;
}

namespace {

// Structural failures make a sample unusable, so they dominate the count.
std::pair<std::size_t, std::size_t> rank(const LemmaCheckReport& report) {
  std::size_t structural = 0;
  for (const auto& f : report.failures) {
    if (f.property == LemmaProperty::kStructure) ++structural;
  }
  return {structural, report.failures.size()};
}

}  // namespace

OrderingSample sample_until_ordering(const Graph& g, int r,
                                     const ScaleProfile& profile,
                                     std::uint64_t seed, int budget,
                                     bool strict, const ExtraCheck& extra) {
  return sample_until_ordering(g, RNeighborhoodCache(g, r), profile, seed,
                               budget, strict, extra);
}

OrderingSample sample_until_ordering(const Graph& g,
                                     const RNeighborhoodCache& rn,
                                     const ScaleProfile& profile,
                                     std::uint64_t seed, int budget,
                                     bool strict, const ExtraCheck& extra) {
  if (budget < 1) throw InvalidParams("budget must be >= 1");
  OrderingSample best;
  bool have_best = false;
  for (int i = 0; i < budget; ++i) {
    OrderingPartition part = sample_ordering(
        g, rn.radius(), profile, derive_seed(seed, "ordering", i));
    LemmaCheckReport report = check_ordering(g, part, rn, profile);
    if (extra) extra(part, report);
    if (report.passed()) return {std::move(part), std::move(report), i + 1};
    if (!have_best || rank(report) < rank(best.report)) {
      best = {std::move(part), std::move(report), i + 1};
      have_best = true;
    }
  }
  if (strict) {
    throw BudgetExhausted("ordering sampler: no accepted sample in " +
                          std::to_string(budget) + " attempts");
  }
  best.iterations = budget;
  return best;
}

bool SparseSubgraph::contains(EdgeId e) const {
  return std::binary_search(edges.begin(), edges.end(), e);
}

SparseSubgraph sample_sparse_once(const Graph& g_prime, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  SparseSubgraph sub;
  sub.choice.resize(g_prime.vertex_count());
  for (Vertex v = 0; v < g_prime.vertex_count(); ++v) {
    auto inc = g_prime.incident(v);
    if (inc.empty()) {
      throw IsolatedVertex("vertex " + std::to_string(v) +
                           " has no incident edge");
    }
    sub.choice[v] = inc[uniform_below(rng, inc.size())].edge;
  }
  sub.edges = sub.choice;
  std::sort(sub.edges.begin(), sub.edges.end());
  sub.edges.erase(std::unique(sub.edges.begin(), sub.edges.end()),
                  sub.edges.end());
  sub.degree.assign(g_prime.vertex_count(), 0);
  for (EdgeId e : sub.edges) {
    ++sub.degree[g_prime.edge(e).u];
    ++sub.degree[g_prime.edge(e).v];
  }
  return sub;
}

LemmaCheckReport check_sparse_subgraph(const Graph& g_prime,
                                       const SparseSubgraph& sub,
                                       std::int64_t delta_max,
                                       const ScaleProfile& profile) {
  LemmaCheckReport report;
  const double lam3 = profile.lambda3(delta_max);
  for (Vertex v = 0; v < g_prime.vertex_count(); ++v) {
    const double bound = std::max(
        1.0, profile.relax * static_cast<double>(g_prime.degree(v)) / lam3);
    const auto observed = static_cast<double>(sub.degree[v]);
    if (observed > bound) {
      report.failures.push_back(
          {v, LemmaProperty::kSparse, observed, bound, false});
    }
  }
  return report;
}

SparseSample sample_sparse_subgraph(const Graph& g_prime,
                                    std::int64_t delta_max,
                                    const ScaleProfile& profile,
                                    std::uint64_t seed, int budget, bool strict,
                                    const SparseExtraCheck& extra) {
  if (budget < 1) throw InvalidParams("budget must be >= 1");
  SparseSample best;
  bool have_best = false;
  for (int i = 0; i < budget; ++i) {
    SparseSubgraph sub =
        sample_sparse_once(g_prime, derive_seed(seed, "sparse", i));
    LemmaCheckReport report =
        check_sparse_subgraph(g_prime, sub, delta_max, profile);
    if (extra) extra(sub, report);
    if (report.passed()) return {std::move(sub), std::move(report), i + 1};
    if (!have_best || rank(report) < rank(best.report)) {
      best = {std::move(sub), std::move(report), i + 1};
      have_best = true;
    }
  }
  if (strict) {
    throw BudgetExhausted("sparse subgraph sampler: no accepted sample in " +
                          std::to_string(budget) + " attempts");
  }
  best.iterations = budget;
  return best;
}

}  // namespace chromasum
