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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "chromasum/coloring.hpp"
#include "chromasum/error.hpp"
#include "chromasum/exact.hpp"
#include "chromasum/generate.hpp"
#include "chromasum/graph_io.hpp"
#include "chromasum/lemmas.hpp"
#include "chromasum/params.hpp"
#include "chromasum/pipeline.hpp"
#include "chromasum/report.hpp"
#include "json.hpp"

namespace cs = chromasum;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct InputOptions {
  std::string input;
  std::string format;
};

struct ProfileOptions {
  std::string profile;
  double relax = 0.0;  // 0 selects the profile default
  std::int64_t q = 0;
  std::int64_t big_q = 0;

  cs::ScaleProfile make() const {
    cs::ScaleProfile p = cs::parse_profile_kind(profile) == cs::ProfileKind::kPaper
                             ? cs::ScaleProfile::paper()
                             : cs::ScaleProfile::desk();
    if (relax > 0.0) p.relax = relax;
    return p;
  }
};

std::string default_profile() {
  const char* env = std::getenv("CHROMASUM_PROFILE");
  return env != nullptr && *env != '\0' ? env : "desk";
}

cs::Graph load_graph(const InputOptions& in) {
  const auto format = in.format.empty() ? cs::format_from_path(in.input)
                                        : cs::parse_format_name(in.format);
  return cs::parse_graph(cs::read_file(in.input), format);
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cs::InvalidParams("cannot write '" + path + "'");
  out << data;
}

// Accepts "60", "60s", "500ms" or "2m".
std::chrono::milliseconds parse_duration(const std::string& text) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw CLI::ValidationError("duration", "cannot parse '" + text + "'");
  }
  const std::string unit = text.substr(pos);
  double ms;
  if (unit.empty() || unit == "s") {
    ms = value * 1000.0;
  } else if (unit == "ms") {
    ms = value;
  } else if (unit == "m") {
    ms = value * 60000.0;
  } else {
    throw CLI::ValidationError("duration", "unknown unit in '" + text + "'");
  }
  if (ms < 0) throw CLI::ValidationError("duration", "negative duration");
  return std::chrono::milliseconds(static_cast<std::int64_t>(ms));
}

std::string command_line(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) out += ' ';
    out += argv[i];
  }
  return out;
}

void add_input(CLI::App* app, InputOptions& in) {
  app->add_option("--input", in.input, "graph file")->required();
  app->add_option("--format", in.format, "graph6 | edgelist (default: by extension)")
      ->check(CLI::IsMember({"graph6", "g6", "edgelist", "el"}));
}

void add_profile(CLI::App* app, ProfileOptions& p) {
  p.profile = default_profile();
  app->add_option("--profile", p.profile, "paper | desk")
      ->check(CLI::IsMember({"paper", "desk"}));
  app->add_option("--relax", p.relax, "relaxation factor rho");
}

void add_overrides(CLI::App* app, ProfileOptions& p) {
  app->add_option("--q", p.q, "override q");
  app->add_option("--Q", p.big_q, "override Q");
}

struct SolveOptions {
  InputOptions in;
  ProfileOptions prof;
  int r = 4;
  std::uint64_t seed = 0;
  int budget = 500;
  int restarts = 10;
  int local_retries = 3;
  std::string fallback = "fail";
  std::string timeout = "10s";
  std::string out;
  std::string report;
  bool instrument = false;
  bool audit = false;
  bool timing = false;
};

int run_solve(const SolveOptions& o, const std::string& command) {
  const cs::Graph g = load_graph(o.in);
  cs::PipelineOptions opt;
  opt.r = o.r;
  opt.profile = o.prof.make();
  opt.seed = o.seed;
  opt.budget = o.budget;
  opt.restarts = o.restarts;
  opt.local_retries = o.local_retries;
  opt.fallback = cs::parse_fallback(o.fallback);
  opt.instrument = o.instrument;
  opt.audit = o.audit;
  if (o.prof.q > 0) opt.q_override = o.prof.q;
  if (o.prof.big_q > 0) opt.big_q_override = o.prof.big_q;
  opt.exact_timeout_seconds =
      static_cast<double>(parse_duration(o.timeout).count()) / 1000.0;

  const auto start = std::chrono::steady_clock::now();
  const cs::PipelineResult result = cs::run_pipeline(g, opt);
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();

  cs::RunReport report = cs::make_report(command, o.seed, result.log);
  if (o.timing) report.wall_seconds = elapsed;
  if (!o.report.empty()) write_output(o.report, cs::to_json(report) + "\n");

  if (!result.coloring) {
    std::cerr << "solve: pipeline failed after " << result.log.restarts_used
              << " restarts\n";
    for (const auto& f : result.log.failures) {
      std::cerr << "  restart " << f.restart << " [" << f.stage << "] "
                << f.error << ": " << f.message << "\n";
    }
    return kExitFailure;
  }
  write_output(o.out, cs::to_text(g, *result.coloring));
  std::cerr << "solve: " << cs::to_string(result.log.outcome)
            << ", max colour " << result.log.max_color << " (2Q+2q = "
            << result.log.bound_2q_plus_2q << ")\n";
  return kExitOk;
}

struct VerifyOptions {
  InputOptions in;
  std::string coloring;
  int r = 1;
  std::int64_t modulus = 0;
  std::string out;
};

int run_verify(const VerifyOptions& o) {
  const cs::Graph g = load_graph(o.in);
  const cs::EdgeColoring c =
      cs::parse_coloring(g, cs::read_file(o.coloring));
  std::optional<std::int64_t> modulus;
  if (o.modulus > 0) modulus = o.modulus;
  const cs::VerifyReport report = cs::verify(g, c, o.r, modulus);
  write_output(o.out, cs::to_json(report) + "\n");
  return report.ok() ? kExitOk : kExitFailure;
}

struct ExactOptions {
  InputOptions in;
  int r = 1;
  std::string timeout = "60s";
  std::string out;
};

int run_exact(const ExactOptions& o) {
  const cs::Graph g = load_graph(o.in);
  const cs::ExactResult res =
      cs::exact_index(g, o.r, parse_duration(o.timeout));
  nlohmann::json j = {{"k", res.k},
                      {"timed_out", res.timed_out},
                      {"nodes_explored", res.nodes_explored},
                      {"r", o.r}};
  std::cout << j.dump(2) << "\n";
  if (!o.out.empty()) write_output(o.out, cs::to_text(g, res.witness));
  return kExitOk;
}

struct ScanOptions {
  std::string catalog;
  int r = 4;
  std::string timeout = "10s";
  std::string bound = "theorem2";
  std::string out;
};

int run_scan(const ScanOptions& o) {
  const auto graphs = cs::parse_graph6_catalog(cs::read_file(o.catalog));
  const cs::ScanReport report = cs::conjecture_scan(
      graphs, o.r, cs::bound_by_name(o.bound), parse_duration(o.timeout));
  write_output(o.out, cs::to_csv(report));
  std::cerr << "scan: " << report.records.size()
            << " graphs, max k/bound ratio " << report.max_ratio << "\n";
  return kExitOk;
}

struct GenOptions {
  std::string family;
  std::size_t n = 0;
  std::size_t d = 3;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::string format = "edgelist";
  std::string out;
};

cs::Graph generate(const std::string& family, std::size_t n, std::size_t d,
                   double p, std::uint64_t seed) {
  if (family == "cycle") return cs::cycle_graph(n);
  if (family == "path") return cs::path_graph(n);
  if (family == "complete") return cs::complete_graph(n);
  if (family == "star") return cs::star_graph(n);
  if (family == "petersen") return cs::petersen_graph();
  if (family == "regular") return cs::random_regular(n, d, seed);
  if (family == "gnp") return cs::gnp(n, p, seed);
  throw cs::InvalidParams("unknown family '" + family + "'");
}

const std::vector<std::string> kFamilies = {
    "cycle", "path", "complete", "star", "petersen", "regular", "gnp"};

int run_gen(const GenOptions& o) {
  const cs::Graph g = generate(o.family, o.n, o.d, o.p, o.seed);
  const auto format = cs::parse_format_name(o.format);
  write_output(o.out, format == cs::GraphFormat::kGraph6
                          ? cs::to_graph6(g) + "\n"
                          : cs::to_edge_list(g));
  return kExitOk;
}

struct LemmaOptions {
  InputOptions in;
  ProfileOptions prof;
  std::string lemma = "ordering";
  int r = 4;
  std::uint64_t seed = 0;
  int budget = 500;
  bool strict = false;
  std::string out;
};

int run_lemma(const LemmaOptions& o) {
  const cs::Graph g = load_graph(o.in);
  const cs::ScaleProfile profile = o.prof.make();
  nlohmann::json j;
  j["lemma"] = o.lemma;
  j["profile"] = profile.name();
  j["relax"] = profile.relax;
  j["seed"] = o.seed;
  cs::LemmaCheckReport report;
  if (o.lemma == "ordering") {
    auto sample =
        cs::sample_until_ordering(g, o.r, profile, o.seed, o.budget, o.strict);
    report = sample.report;
    j["r"] = o.r;
    j["iterations"] = sample.iterations;
    j["bands"] = {
        {"A", sample.partition.members(cs::Band::kA).size()},
        {"B", sample.partition.members(cs::Band::kB).size()},
        {"C", sample.partition.members(cs::Band::kC).size()}};
  } else {
    const auto delta =
        std::max<std::int64_t>(2, static_cast<std::int64_t>(g.max_degree()));
    auto sample = cs::sample_sparse_subgraph(g, delta, profile, o.seed,
                                             o.budget, o.strict);
    report = sample.report;
    j["iterations"] = sample.iterations;
    j["edges"] = sample.subgraph.edges.size();
  }
  j["passed"] = report.passed();
  j["check"] = nlohmann::json::parse(cs::to_json(report));
  write_output(o.out, j.dump(2) + "\n");
  return kExitOk;
}

struct BenchOptions {
  std::string family = "regular";
  std::size_t n = 100;
  std::size_t d = 12;
  double p = 0.2;
  int r = 4;
  int seeds = 20;
  std::uint64_t seed = 0;
  ProfileOptions prof;
  int budget = 500;
  unsigned threads = 0;
};

struct BenchRun {
  bool success = false;
  cs::Color max_color = 0;
  int retries = 0;
  int restarts = 0;
  std::string error;
};

int run_bench(const BenchOptions& o) {
  if (o.seeds < 1) throw cs::InvalidParams("--seeds must be >= 1");
  std::vector<BenchRun> runs(static_cast<std::size_t>(o.seeds));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      BenchRun& run = runs[i];
      try {
        const cs::Graph g = generate(o.family, o.n, o.d, o.p,
                                     cs::derive_seed(o.seed, "bench-graph", i));
        cs::PipelineOptions opt;
        opt.r = o.r;
        opt.profile = o.prof.make();
        opt.seed = cs::derive_seed(o.seed, "bench-run", i);
        opt.budget = o.budget;
        const auto res = cs::run_pipeline(g, opt);
        run.success = res.success();
        run.max_color = res.log.max_color;
        run.restarts = res.log.restarts_used;
        for (const auto& [stage, count] : res.log.stage_retries) {
          run.retries += count;
        }
      } catch (const std::exception& e) {
        run.error = e.what();
      }
    }
  };
  unsigned threads = o.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(runs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int ok = 0;
  double max_sum = 0.0, retry_sum = 0.0, restart_sum = 0.0;
  std::printf("%-6s %-8s %-10s %-8s %-8s\n", "seed", "success", "max_color",
              "retries", "restarts");
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& run = runs[i];
    std::printf("%-6zu %-8s %-10lld %-8d %-8d%s\n", i,
                run.success ? "yes" : "no",
                static_cast<long long>(run.max_color), run.retries,
                run.restarts, run.error.empty() ? "" : "  (error)");
    retry_sum += run.retries;
    restart_sum += run.restarts;
    if (run.success) {
      ++ok;
      max_sum += static_cast<double>(run.max_color);
    }
  }
  const double n = static_cast<double>(runs.size());
  std::printf("success_rate %.3f\n", ok / n);
  std::printf("mean_max_color %.1f\n", ok > 0 ? max_sum / ok : 0.0);
  std::printf("mean_retries %.2f\n", retry_sum / n);
  std::printf("mean_restarts %.2f\n", restart_sum / n);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance-r sum-distinguishing edge colourings"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "run the randomized pipeline");
  add_input(solve_cmd, solve.in);
  add_profile(solve_cmd, solve.prof);
  add_overrides(solve_cmd, solve.prof);
  solve_cmd->add_option("--r", solve.r)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", solve.seed);
  solve_cmd->add_option("--budget", solve.budget)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--restarts", solve.restarts)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--local-retries", solve.local_retries)
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--fallback", solve.fallback)
      ->check(CLI::IsMember({"fail", "greedy", "exact"}));
  solve_cmd->add_option("--timeout", solve.timeout, "exact fallback budget");
  solve_cmd->add_option("--out", solve.out, "colouring file (default stdout)");
  solve_cmd->add_option("--report", solve.report, "JSON run report");
  solve_cmd->add_flag("--instrument", solve.instrument,
                      "check stage invariants after every stage");
  solve_cmd->add_flag("--audit", solve.audit,
                      "cross-check lazy enumeration against a full one");
  solve_cmd->add_flag("--timing", solve.timing, "record wall time in report");

  VerifyOptions ver;
  auto* verify_cmd = app.add_subcommand("verify", "check a colouring");
  add_input(verify_cmd, ver.in);
  verify_cmd->add_option("--coloring", ver.coloring)->required();
  verify_cmd->add_option("--r", ver.r)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--modulus", ver.modulus, "also check properness mod m");
  verify_cmd->add_option("--out", ver.out);

  ExactOptions ex;
  auto* exact_cmd = app.add_subcommand("exact", "exact index by search");
  add_input(exact_cmd, ex.in);
  exact_cmd->add_option("--r", ex.r)->check(CLI::PositiveNumber);
  exact_cmd->add_option("--timeout", ex.timeout);
  exact_cmd->add_option("--out", ex.out, "witness colouring");

  ScanOptions scan;
  auto* scan_cmd = app.add_subcommand("scan", "exact index over a catalog");
  scan_cmd->add_option("--catalog", scan.catalog)->required();
  scan_cmd->add_option("--r", scan.r)->check(CLI::PositiveNumber);
  scan_cmd->add_option("--timeout-per-graph", scan.timeout);
  scan_cmd->add_option("--bound", scan.bound)
      ->check(CLI::IsMember({"theorem2", "conjecture1", "theorem3"}));
  scan_cmd->add_option("--out", scan.out, "CSV file (default stdout)");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a graph");
  gen_cmd->add_option("--family", gen.family)
      ->required()
      ->check(CLI::IsMember(kFamilies));
  gen_cmd->add_option("--n", gen.n);
  gen_cmd->add_option("--d", gen.d);
  gen_cmd->add_option("--p", gen.p);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--format", gen.format)
      ->check(CLI::IsMember({"graph6", "g6", "edgelist", "el"}));
  gen_cmd->add_option("--out", gen.out);

  LemmaOptions lem;
  auto* lemma_cmd = app.add_subcommand("lemma", "run a lemma sampler");
  add_input(lemma_cmd, lem.in);
  add_profile(lemma_cmd, lem.prof);
  lemma_cmd->add_option("--lemma", lem.lemma)
      ->check(CLI::IsMember({"ordering", "sparse"}));
  lemma_cmd->add_option("--r", lem.r)->check(CLI::PositiveNumber);
  lemma_cmd->add_option("--seed", lem.seed);
  lemma_cmd->add_option("--budget", lem.budget)->check(CLI::PositiveNumber);
  lemma_cmd->add_flag("--strict", lem.strict);
  lemma_cmd->add_option("--out", lem.out);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "success rate over seeds");
  add_profile(bench_cmd, bench.prof);
  bench_cmd->add_option("--family", bench.family)
      ->check(CLI::IsMember({"regular", "gnp"}));
  bench_cmd->add_option("--n", bench.n);
  bench_cmd->add_option("--d", bench.d);
  bench_cmd->add_option("--p", bench.p);
  bench_cmd->add_option("--r", bench.r)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seeds", bench.seeds)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--budget", bench.budget)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--threads", bench.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve, command_line(argc, argv));
    if (*verify_cmd) return run_verify(ver);
    if (*exact_cmd) return run_exact(ex);
    if (*scan_cmd) return run_scan(scan);
    if (*gen_cmd) return run_gen(gen);
    if (*lemma_cmd) return run_lemma(lem);
    if (*bench_cmd) return run_bench(bench);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "chromasum: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cs::Error& e) {
    std::cerr << "chromasum: " << cs::to_string(e.kind()) << ": " << e.what()
              << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "chromasum: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
