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

#include "chromasum/report.hpp"

#include "chromasum/error.hpp"
#include "json.hpp"

namespace chromasum {

using nlohmann::json;

bool operator==(const RunReport& a, const RunReport& b) {
  return a.command == b.command && a.seed == b.seed && a.r == b.r &&
         a.profile == b.profile && a.relax == b.relax &&
         a.delta_max == b.delta_max && a.q == b.q && a.big_q == b.big_q &&
         a.stage_retries == b.stage_retries &&
         a.restarts_used == b.restarts_used && a.failures == b.failures &&
         a.ordering_check_passed == b.ordering_check_passed &&
         a.min_degree_condition == b.min_degree_condition &&
         a.outcome == b.outcome && a.max_color == b.max_color &&
         a.min_color == b.min_color &&
         a.bound_2q_plus_2q == b.bound_2q_plus_2q &&
         a.theorem3_bound == b.theorem3_bound && a.verify == b.verify &&
         a.wall_seconds == b.wall_seconds;
}

VerifySummary summarize(const VerifyReport& report) {
  return {report.proper,           report.distinguishing_r,
          report.r,                report.violations.size(),
          report.max_color,        report.min_color};
}

RunReport make_report(const std::string& command, std::uint64_t seed,
                      const PipelineLog& log) {
  RunReport out;
  out.command = command;
  out.seed = seed;
  out.r = log.params.r;
  out.profile = log.params.profile.name();
  out.relax = log.params.profile.relax;
  out.delta_max = log.params.delta_max;
  out.q = log.params.q;
  out.big_q = log.params.big_q;
  out.stage_retries = log.stage_retries;
  out.restarts_used = log.restarts_used;
  out.failures = log.failures;
  out.ordering_check_passed = log.ordering_check_passed;
  out.min_degree_condition = log.min_degree_condition;
  out.outcome = std::string(to_string(log.outcome));
  out.max_color = log.max_color;
  out.min_color = log.min_color;
  out.bound_2q_plus_2q = log.bound_2q_plus_2q;
  out.theorem3_bound = log.theorem3_bound;
  if (log.verify) out.verify = summarize(*log.verify);
  return out;
}

std::string to_json(const RunReport& report, int indent) {
  json j;
  j["command"] = report.command;
  j["seed"] = report.seed;
  j["params"] = {{"r", report.r},
                 {"profile", report.profile},
                 {"relax", report.relax},
                 {"delta_max", report.delta_max},
                 {"q", report.q},
                 {"Q", report.big_q}};
  j["stage_retries"] = report.stage_retries;
  j["restarts_used"] = report.restarts_used;
  json failures = json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"restart", f.restart},
                        {"stage", f.stage},
                        {"error", f.error},
                        {"message", f.message}});
  }
  j["failures"] = std::move(failures);
  j["ordering_check_passed"] = report.ordering_check_passed;
  j["min_degree_condition"] = report.min_degree_condition;
  j["outcome"] = report.outcome;
  j["max_color"] = report.max_color;
  j["min_color"] = report.min_color;
  j["bound_2Q_plus_2q"] = report.bound_2q_plus_2q;
  j["theorem3_bound"] = report.theorem3_bound;
  if (report.verify) {
    const auto& v = *report.verify;
    j["verify"] = {{"proper", v.proper},
                   {"distinguishing_r", v.distinguishing_r},
                   {"r", v.r},
                   {"violations", v.violations},
                   {"max_color", v.max_color},
                   {"min_color", v.min_color}};
  } else {
    j["verify"] = nullptr;
  }
  if (report.wall_seconds) j["wall_seconds"] = *report.wall_seconds;
  return j.dump(indent);
}

RunReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 1, e.byte);
  }
  RunReport out;
  try {
    out.command = j.at("command").get<std::string>();
    out.seed = j.at("seed").get<std::uint64_t>();
    const auto& p = j.at("params");
    out.r = p.at("r").get<int>();
    out.profile = p.at("profile").get<std::string>();
    out.relax = p.at("relax").get<double>();
    out.delta_max = p.at("delta_max").get<std::int64_t>();
    out.q = p.at("q").get<std::int64_t>();
    out.big_q = p.at("Q").get<std::int64_t>();
    out.stage_retries =
        j.at("stage_retries").get<std::map<std::string, int>>();
    out.restarts_used = j.at("restarts_used").get<int>();
    for (const auto& f : j.at("failures")) {
      out.failures.push_back({f.at("restart").get<int>(),
                              f.at("stage").get<std::string>(),
                              f.at("error").get<std::string>(),
                              f.at("message").get<std::string>()});
    }
    out.ordering_check_passed = j.at("ordering_check_passed").get<bool>();
    out.min_degree_condition = j.at("min_degree_condition").get<bool>();
    out.outcome = j.at("outcome").get<std::string>();
    out.max_color = j.at("max_color").get<Color>();
    out.min_color = j.at("min_color").get<Color>();
    out.bound_2q_plus_2q = j.at("bound_2Q_plus_2q").get<std::int64_t>();
    out.theorem3_bound = j.at("theorem3_bound").get<double>();
    if (!j.at("verify").is_null()) {
      const auto& v = j.at("verify");
      out.verify = VerifySummary{v.at("proper").get<bool>(),
                                 v.at("distinguishing_r").get<bool>(),
                                 v.at("r").get<int>(),
                                 v.at("violations").get<std::size_t>(),
                                 v.at("max_color").get<Color>(),
                                 v.at("min_color").get<Color>()};
    }
    if (j.contains("wall_seconds")) {
      out.wall_seconds = j.at("wall_seconds").get<double>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what(), 1, 0);
  }
  return out;
}

}  // namespace chromasum
