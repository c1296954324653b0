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

#include "chromasum/error.hpp"
#include "chromasum/generate.hpp"
#include "chromasum/report.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace chromasum;

TEST_CASE("run report round trips") {
  PipelineOptions opt;
  opt.seed = 9;
  opt.fallback = Fallback::kGreedy;
  opt.restarts = 2;
  auto res = run_pipeline(random_regular(40, 8, 2), opt);
  RunReport report = make_report("chromasum solve --seed 9", 9, res.log);
  CHECK(report.outcome == to_string(res.log.outcome));
  CHECK(report.q == res.log.params.q);
  CHECK(report.verify.has_value());
  CHECK_FALSE(report.wall_seconds.has_value());

  const std::string text = to_json(report);
  CHECK(report_from_json(text) == report);
  CHECK(to_json(report_from_json(text)) == text);

  auto j = nlohmann::json::parse(text);
  for (const char* key : {"stage_retries", "max_color", "bound_2Q_plus_2q",
                          "theorem3_bound", "verify", "params", "outcome"}) {
    CHECK(j.contains(key));
  }
  CHECK_FALSE(j.contains("wall_seconds"));

  report.wall_seconds = 1.25;
  report.failures.push_back({0, "process_A", "NoAdmissibleSum", "x"});
  CHECK(report_from_json(to_json(report)) == report);

  auto failed = run_pipeline(cycle_graph(5), [] {
    PipelineOptions o;
    o.restarts = 1;
    o.budget = 5;
    return o;
  }());
  RunReport none = make_report("c5", 0, failed.log);
  CHECK_FALSE(none.verify.has_value());
  CHECK(report_from_json(to_json(none)) == none);
}

TEST_CASE("malformed reports are rejected") {
  CHECK_THROWS_AS(report_from_json("{"), ParseError);
  CHECK_THROWS_AS(report_from_json("{\"command\": 3}"), ParseError);
}
