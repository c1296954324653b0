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

#include "chromasum/params.hpp"

#include <algorithm>
#include <cmath>

#include "chromasum/error.hpp"

namespace chromasum {

ScaleProfile ScaleProfile::paper(double relax) {
  ScaleProfile p;
  p.kind = ProfileKind::kPaper;
  p.relax = relax;
  return p;
}

ScaleProfile ScaleProfile::desk(double relax) {
  ScaleProfile p;
  p.kind = ProfileKind::kDesk;
  p.relax = relax;
  return p;
}

double ScaleProfile::lambda(int k, std::int64_t delta) const {
  if (kind == ProfileKind::kPaper) return std::pow(log_delta(delta), k);
  double c = k == 2 ? c2 : k == 3 ? c3 : k == 5 ? c5 : c8;
  return std::max(1.0, c);
}

std::string ScaleProfile::name() const {
  return kind == ProfileKind::kPaper ? "paper" : "desk";
}

ProfileKind parse_profile_kind(std::string_view name) {
  if (name == "paper") return ProfileKind::kPaper;
  if (name == "desk") return ProfileKind::kDesk;
  throw InvalidParams("unknown profile '" + std::string(name) + "'");
}

double log_delta(std::int64_t delta) {
  return std::log(static_cast<double>(std::max<std::int64_t>(delta, 2)));
}

std::int64_t int_pow(std::int64_t base, int exponent) {
  std::int64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(out, base, &out)) {
      throw ArithmeticOverflow("integer power overflows");
    }
  }
  return out;
}

double PlanParams::theorem3_bound() const {
  double power = static_cast<double>(int_pow(delta_max, r - 1));
  return 4.0 * power * (1.0 + 3.0 / (2.0 * log_delta(delta_max))) + 384.0;
}

namespace {

// Smallest multiple of `step` that is >= power / ln(delta) + extra. The
// target is irrational for integer delta >= 2, so the comparison is never an
// exact tie; long double with a correction pass keeps the ceiling exact.
std::int64_t ceil_multiple(std::int64_t power, std::int64_t extra,
                           long double log_d, std::int64_t step) {
  const long double target =
      static_cast<long double>(power) / log_d + static_cast<long double>(extra);
  auto meets = [&](std::int64_t m) {
    return static_cast<long double>(m) >= target;
  };
  std::int64_t m =
      static_cast<std::int64_t>(std::ceil(target / static_cast<long double>(step))) *
      step;
  while (m > step && meets(m - step)) m -= step;
  while (!meets(m)) m += step;
  return m;
}

}  // namespace

PlanParams compute_params(std::int64_t delta_max, int r,
                          const ScaleProfile& profile) {
  if (delta_max < 2) throw InvalidParams("compute_params needs Delta >= 2");
  if (r < 1) throw InvalidParams("compute_params needs r >= 1");
  PlanParams p;
  p.r = r;
  p.delta_max = delta_max;
  p.profile = profile;
  const std::int64_t power = int_pow(delta_max, r - 1);
  const long double log_d = std::log(static_cast<long double>(delta_max));
  p.q = ceil_multiple(power, 0, log_d, 96);
  p.big_q = ceil_multiple(power, 2 * power, log_d, p.q);
  return p;
}

PlanParams override_params(PlanParams base, std::optional<std::int64_t> q,
                           std::optional<std::int64_t> big_q) {
  if (q) base.q = *q;
  if (big_q) base.big_q = *big_q;
  if (base.q < 3 || base.q % 3 != 0) {
    throw InvalidParams("q must be a positive multiple of 3");
  }
  if (base.big_q < base.q || base.big_q % base.q != 0) {
    throw InvalidParams("Q must be a positive multiple of q");
  }
  return base;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

SumPair pair_of(std::int64_t sum, std::int64_t big_q) {
  if (big_q < 1) throw InvalidParams("pair_of needs Q >= 1");
  std::int64_t m = floor_mod(sum, 2 * big_q);
  return SumPair{m < big_q ? sum : sum - big_q, big_q};
}

bool pairs_disjoint(const SumPair& a, const SumPair& b) {
  if (a.big_q != b.big_q) {
    throw MixedQ("pairs built with Q=" + std::to_string(a.big_q) + " and Q=" +
                 std::to_string(b.big_q));
  }
  return a.low != b.low;
}

}  // namespace chromasum
