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

#ifndef CHROMASUM_PARAMS_HPP
#define CHROMASUM_PARAMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace chromasum {

enum class ProfileKind { kPaper, kDesk };

// Stand-ins for the ln^k(Delta) thresholds of the construction. The paper
// profile uses the literal powers of ln(Delta); the desk profile replaces
// each with a constant max(1, c_k) so the lemma checkers stay meaningful on
// graphs small enough to verify exhaustively. Every inequality is further
// relaxed by the factor `relax` (upper bounds multiplied, lower bounds
// divided).
struct ScaleProfile {
  ProfileKind kind = ProfileKind::kPaper;
  double c2 = 5.0;
  double c3 = 2.0;
  double c5 = 2.0;
  double c8 = 4.0;
  double relax = 1.0;

  static ScaleProfile paper(double relax = 1.0);
  static ScaleProfile desk(double relax = 2.0);

  double lambda(int k, std::int64_t delta) const;
  double lambda2(std::int64_t delta) const { return lambda(2, delta); }
  double lambda3(std::int64_t delta) const { return lambda(3, delta); }
  double lambda5(std::int64_t delta) const { return lambda(5, delta); }
  double lambda8(std::int64_t delta) const { return lambda(8, delta); }

  std::string name() const;
};

ProfileKind parse_profile_kind(std::string_view name);

// ln(max(delta, 2)); the profile functions are only defined for delta >= 2.
double log_delta(std::int64_t delta);

std::int64_t int_pow(std::int64_t base, int exponent);

struct PlanParams {
  int r = 4;
  std::int64_t delta_max = 2;
  std::int64_t q = 96;
  std::int64_t big_q = 96;  // Q
  ScaleProfile profile;

  std::int64_t min_color() const { return q - delta_max; }
  std::int64_t max_color() const { return 2 * big_q + 2 * q; }

  // 4 Delta^(r-1) (1 + 3 / (2 ln Delta)) + 384, for comparison only.
  double theorem3_bound() const;
};

// q: least multiple of 96 with q >= Delta^(r-1)/ln Delta.
// Q: least multiple of q with Q >= 2 Delta^(r-1) + Delta^(r-1)/ln Delta.
PlanParams compute_params(std::int64_t delta_max, int r,
                          const ScaleProfile& profile);

// Explicit q / Q for experiments. q must be a positive multiple of 3 and Q a
// positive multiple of q.
PlanParams override_params(PlanParams base, std::optional<std::int64_t> q,
                           std::optional<std::int64_t> big_q);

// One member {low, low + Q} of the partition of the integers into pairs with
// low mod 2Q in [0, Q-1].
struct SumPair {
  std::int64_t low = 0;
  std::int64_t big_q = 1;

  std::int64_t high() const { return low + big_q; }
  bool contains(std::int64_t s) const { return s == low || s == high(); }

  friend bool operator==(const SumPair&, const SumPair&) = default;
};

std::int64_t floor_mod(std::int64_t a, std::int64_t m);

SumPair pair_of(std::int64_t sum, std::int64_t big_q);

// Pairs from the same family are identical or disjoint. Throws MixedQ.
bool pairs_disjoint(const SumPair& a, const SumPair& b);

}  // namespace chromasum

#endif  // CHROMASUM_PARAMS_HPP
