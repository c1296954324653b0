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

#ifndef CHROMASUM_REPORT_HPP
#define CHROMASUM_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chromasum/pipeline.hpp"

namespace chromasum {

// Summary of the final check; the violation list is reduced to a count.
struct VerifySummary {
  bool proper = false;
  bool distinguishing_r = false;
  int r = 0;
  std::size_t violations = 0;
  Color max_color = 0;
  Color min_color = 0;

  friend bool operator==(const VerifySummary&, const VerifySummary&) = default;
};

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  int r = 0;
  std::string profile;
  double relax = 1.0;
  std::int64_t delta_max = 0;
  std::int64_t q = 0;
  std::int64_t big_q = 0;
  std::map<std::string, int> stage_retries;
  int restarts_used = 0;
  std::vector<StageFailure> failures;
  bool ordering_check_passed = false;
  bool min_degree_condition = false;
  std::string outcome;
  Color max_color = 0;
  Color min_color = 0;
  std::int64_t bound_2q_plus_2q = 0;
  double theorem3_bound = 0.0;
  std::optional<VerifySummary> verify;
  // Only filled when timing is requested; keeps reports reproducible.
  std::optional<double> wall_seconds;

  friend bool operator==(const RunReport&, const RunReport&);
};

VerifySummary summarize(const VerifyReport& report);

RunReport make_report(const std::string& command, std::uint64_t seed,
                      const PipelineLog& log);

std::string to_json(const RunReport& report, int indent = 2);
// Throws ParseError on malformed input.
RunReport report_from_json(const std::string& text);

}  // namespace chromasum

#endif  // CHROMASUM_REPORT_HPP
