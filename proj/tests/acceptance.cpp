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

// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "chromasum/error.hpp"
#include "chromasum/exact.hpp"
#include "chromasum/generate.hpp"
#include "chromasum/lemmas.hpp"
#include "chromasum/pipeline.hpp"
#include "chromasum/report.hpp"
#include "chromasum/rng.hpp"
#include "oracles.hpp"

using namespace chromasum;

namespace {

int failures = 0;

void run(const char* name, const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    detail = body();
    ok = detail.rfind("FAIL", 0) != 0;
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  if (!ok) ++failures;
  std::printf("%s %s (%.1fs) %s\n", ok ? "PASS" : "FAIL", name, secs,
              detail.c_str());
  std::fflush(stdout);
}

std::string fail(const std::string& why) { return "FAIL: " + why; }

std::string oracle_equivalence() {
  int compared = 0;
  for (const Graph& g : oracle::small_catalog()) {
    if (g.edge_count() == 0 || g.has_isolated_edge()) continue;
    for (int r = 1; r <= 3; ++r) {
      auto res = exact_index(g, r, std::chrono::minutes(1));
      const int naive = oracle::naive_index(g, r);
      if (res.timed_out || res.k != naive) {
        return fail(to_graph6(g) + " r=" + std::to_string(r) + ": pruned " +
                    std::to_string(res.k) + ", naive " + std::to_string(naive));
      }
      if (!oracle::proper(g, res.witness.colors) ||
          !oracle::distinguishing(g, res.witness.colors, r,
                                  oracle::distances(g))) {
        return fail("invalid witness for " + to_graph6(g));
      }
      ++compared;
    }
  }
  return std::to_string(compared) + " (graph, r) pairs match";
}

std::string theorem2_envelope() {
  const auto catalog = oracle::small_catalog();
  auto report = conjecture_scan(catalog, 4, theorem2_bound,
                                std::chrono::minutes(1));
  int ok = 0;
  for (const auto& rec : report.records) {
    if (rec.status == "skipped") continue;
    if (rec.status != "ok" || !rec.k) return fail("scan status " + rec.status);
    const double bound = 6.0 * std::pow(static_cast<double>(rec.delta_max), 3);
    if (*rec.k > bound) {
      return fail("k=" + std::to_string(*rec.k) + " exceeds 6 Delta^3");
    }
    ++ok;
  }
  std::ostringstream out;
  out << ok << " graphs, max k/bound " << report.max_ratio;
  return out.str();
}

std::string parameter_arithmetic() {
  const auto table = oracle::param_table();
  if (table.size() != 99 * 5) return fail("table size");
  for (const auto& row : table) {
    auto p = compute_params(row.delta, row.r, ScaleProfile::paper());
    const long double power = std::pow((long double)row.delta, row.r - 1);
    const long double ratio = power / std::log((long double)row.delta);
    const bool q_ok = p.q % 96 == 0 && p.q >= ratio && p.q < ratio + 96;
    const bool big_q_ok = p.big_q % p.q == 0 && p.big_q >= 2 * power + ratio &&
                     p.big_q < 2 * power + 2 * ratio + 96;
    if (!q_ok || !big_q_ok || p.q != row.q || p.big_q != row.big_q) {
      return fail("delta=" + std::to_string(row.delta) +
                  " r=" + std::to_string(row.r));
    }
  }
  auto w = compute_params(10, 4, ScaleProfile::paper());
  if (w.q != 480 || w.big_q != 2880) return fail("worked example");
  return "495 (Delta, r) pairs; q=480, Q=2880 at Delta=10, r=4";
}

struct DeskStats {
  int runs = 0;
  int successes = 0;
  int invariant_failures = 0;
  std::string first_problem;
};

DeskStats desk_runs() {
  DeskStats stats;
  for (std::size_t n : {40, 80}) {
    for (std::size_t d : {8, 12}) {
      for (std::uint64_t s = 0; s < 25; ++s) {
        Graph g = random_regular(n, d, derive_seed(2024, "graph", n * 1000 + d * 100 + s));
        PipelineOptions opt;
        opt.r = 4;
        opt.seed = derive_seed(2024, "run", s);
        opt.instrument = true;
        ++stats.runs;
        PipelineResult res;
        try {
          res = run_pipeline(g, opt);
        } catch (const Error& e) {
          ++stats.invariant_failures;
          if (stats.first_problem.empty()) stats.first_problem = e.what();
          continue;
        }
        if (!res.success()) continue;
        ++stats.successes;
        const auto& p = res.log.params;
        const auto& c = res.coloring->colors;
        bool in_window = true;
        for (Color x : c) in_window &= x >= p.min_color() && x <= p.max_color();
        if (!in_window || !oracle::proper(g, c) ||
            !oracle::distinguishing(g, c, 4, oracle::distances(g))) {
          ++stats.invariant_failures;
          if (stats.first_problem.empty()) {
            stats.first_problem = "unsound colouring n=" + std::to_string(n) +
                                  " d=" + std::to_string(d);
          }
        }
      }
    }
  }
  return stats;
}

std::string lemma_samplers() {
  // Monotonicity in relax.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Graph g = gnp(25 + seed % 20, 0.2, seed);
    for (auto base : {ScaleProfile::desk(1.0), ScaleProfile::paper(1.0)}) {
      auto part = sample_ordering(g, 1 + seed % 4, base, seed);
      bool passed = false;
      for (double rho : {1.0, 1.1, 1.5, 2.0, 4.0, 8.0, 50.0}) {
        ScaleProfile p = base;
        p.relax = rho;
        const bool now = check_ordering(g, part, 1 + seed % 4, p).passed();
        if (passed && !now) return fail("checker not monotone");
        passed = now;
      }
    }
  }
  // Strict-mode sparse returns.
  int strict_returns = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Graph g = random_regular(30, 3 + seed % 8, seed);
    const auto profile = ScaleProfile::desk(1.0);
    const auto delta = static_cast<std::int64_t>(g.max_degree());
    try {
      auto s = sample_sparse_subgraph(g, delta, profile, seed, 100, true);
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const double bound =
            std::max(1.0, static_cast<double>(g.degree(v)) / profile.lambda3(delta));
        if (s.subgraph.degree[v] > bound) return fail("strict sparse bound");
      }
      ++strict_returns;
    } catch (const BudgetExhausted&) {
    }
  }
  // C6 against the 64 choice vectors.
  Graph c6 = cycle_graph(6);
  std::set<std::vector<EdgeId>> allowed;
  std::vector<double> mean(6, 0.0), sq(6, 0.0);
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    std::set<EdgeId> f;
    for (Vertex v = 0; v < 6; ++v) f.insert(c6.incident(v)[(mask >> v) & 1].edge);
    for (Vertex v = 0; v < 6; ++v) {
      double d = 0;
      for (EdgeId e : f) d += c6.edge(e).u == v || c6.edge(e).v == v;
      mean[v] += d / 64;
      sq[v] += d * d / 64;
    }
    allowed.insert(std::vector<EdgeId>(f.begin(), f.end()));
  }
  const int trials = 10000;
  std::vector<double> total(6, 0.0);
  for (int s = 0; s < trials; ++s) {
    auto sample = sample_sparse_subgraph(c6, 2, ScaleProfile::desk(), s, 10, true);
    if (!allowed.contains(sample.subgraph.edges)) return fail("C6 outcome");
    for (Vertex v = 0; v < 6; ++v) total[v] += sample.subgraph.degree[v];
  }
  double worst = 0.0;
  for (Vertex v = 0; v < 6; ++v) {
    if (std::abs(mean[v] - 1.5) > 1e-12) return fail("C6 exact mean");
    const double se = std::sqrt((sq[v] - mean[v] * mean[v]) / trials);
    const double z = std::abs(total[v] / trials - mean[v]) / se;
    worst = std::max(worst, z);
    if (z > 3.0) return fail("C6 mean off by " + std::to_string(z) + " SE");
  }
  std::ostringstream out;
  out << "monotone on 200 orderings; " << strict_returns
      << " strict sparse returns; C6 max |z| " << worst;
  return out.str();
}

std::string vizing() {
  Rng rng = make_rng(77);
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + uniform_below(rng, 499);
    const double avg_deg = 1.0 + 30.0 * uniform_unit(rng);
    const double p = std::min(0.99, avg_deg / static_cast<double>(n));
    Graph g = gnp(n, p, rng());
    auto c = vizing_color(g);
    auto rep = verify(g, c, 1);
    if (!rep.proper) return fail("improper colouring, n=" + std::to_string(n));
    if (g.edge_count() > 0 &&
        rep.max_color > static_cast<Color>(g.max_degree()) + 1) {
      return fail("more than Delta+1 colours");
    }
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  if (secs >= 60.0) return fail("took " + std::to_string(secs) + "s");
  return "1000 graphs";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string reproducibility() {
  Graph g = random_regular(80, 12, 31);
  PipelineOptions opt;
  opt.seed = 4242;
  std::string first;
  for (int i = 0; i < 2; ++i) {
    auto res = run_pipeline(g, opt);
    std::string bytes = to_json(make_report("in-process", opt.seed, res.log));
    if (res.coloring) bytes += to_text(g, *res.coloring);
    if (i == 0) {
      first = bytes;
    } else if (bytes != first) {
      return fail("in-process runs differ");
    }
  }
#ifdef CHROMASUM_CLI
  const std::string dir = std::string(CHROMASUM_WORK_DIR);
  const std::string graph = dir + "/repro.el";
  {
    std::ofstream out(graph);
    out << to_edge_list(g);
  }
  const std::string col = dir + "/repro.txt";
  const std::string rep = dir + "/repro.json";
  std::string outputs[2];
  for (int i = 0; i < 2; ++i) {
    std::remove(col.c_str());
    std::remove(rep.c_str());
    const std::string cmd = std::string(CHROMASUM_CLI) + " solve --input " +
                            graph + " --seed 7 --out " + col + " --report " +
                            rep + " 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) return fail("cli solve failed");
    outputs[i] = slurp(col) + slurp(rep);
  }
  if (outputs[0] != outputs[1] || outputs[0].empty()) {
    return fail("cli outputs differ");
  }
  return "in-process and cli outputs byte-identical";
#else
  return "in-process outputs byte-identical";
#endif
}

}  // namespace

int main() {
  run("oracle-equivalence r=1..3, connected graphs n<=6", oracle_equivalence);
  run("theorem2-envelope r=4, k <= 6 Delta^3", theorem2_envelope);
  run("parameter-arithmetic Delta 2..100, r 2..6", parameter_arithmetic);

  DeskStats stats;
  run("pipeline-soundness desk runs on random regular graphs", [&] {
    stats = desk_runs();
    std::ostringstream out;
    out << stats.runs << " runs, success rate "
        << static_cast<double>(stats.successes) / stats.runs << " ("
        << stats.successes << "/" << stats.runs << ")";
    if (stats.runs < 100) return fail("fewer than 100 runs");
    if (!stats.first_problem.empty() &&
        stats.first_problem.rfind("unsound", 0) == 0) {
      return fail(stats.first_problem);
    }
    return out.str();
  });
  run("stage-invariants instrumented runs", [&] {
    if (stats.invariant_failures > 0) {
      return fail(std::to_string(stats.invariant_failures) +
                  " runs tripped an assertion: " + stats.first_problem);
    }
    return std::to_string(stats.runs) + " instrumented runs clean";
  });
  run("lemma-samplers monotonicity, strict bound, C6 distribution",
      lemma_samplers);
  run("vizing proper with <= Delta+1 colours", vizing);
  run("reproducibility identical seeds", reproducibility);

  std::printf("%s\n", failures == 0 ? "ALL PASS" : "SOME FAILED");
  return failures == 0 ? 0 : 1;
}
