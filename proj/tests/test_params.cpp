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

#include <cmath>

#include "chromasum/error.hpp"
#include "chromasum/params.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chromasum;

TEST_CASE("worked parameter values") {
  auto p = compute_params(10, 4, ScaleProfile::paper());
  CHECK(p.q == 480);
  CHECK(p.big_q == 2880);
  CHECK(p.min_color() == 470);
  CHECK(p.max_color() == 2 * 2880 + 2 * 480);

  auto small = compute_params(3, 4, ScaleProfile::desk());
  CHECK(small.q == 96);
  CHECK(small.big_q == 96);
  CHECK_THROWS_AS(compute_params(1, 4, ScaleProfile::desk()), InvalidParams);
}

TEST_CASE("parameters match the offline table") {
  const auto rows = oracle::param_table();
  REQUIRE(rows.size() == 99 * 5);
  for (const auto& row : rows) {
    auto p = compute_params(row.delta, row.r, ScaleProfile::paper());
    INFO("delta=" << row.delta << " r=" << row.r);
    CHECK(p.q == row.q);
    CHECK(p.big_q == row.big_q);
  }
}

TEST_CASE("parameter sandwiches") {
  for (std::int64_t delta = 2; delta <= 100; ++delta) {
    for (int r = 2; r <= 6; ++r) {
      auto p = compute_params(delta, r, ScaleProfile::desk());
      const long double power = std::pow((long double)delta, r - 1);
      const long double ratio = power / std::log((long double)delta);
      INFO("delta=" << delta << " r=" << r);
      CHECK(p.q % 96 == 0);
      CHECK(p.q >= ratio);
      CHECK(p.q < ratio + 96);
      CHECK(p.big_q % p.q == 0);
      CHECK(p.big_q >= 2 * power + ratio);
      CHECK(p.big_q < 2 * power + 2 * ratio + 96);
      CHECK(p.big_q % 3 == 0);
    }
  }
}

TEST_CASE("pair family") {
  CHECK(pair_of(5, 7) == SumPair{5, 7});
  CHECK(pair_of(12, 7) == SumPair{5, 7});
  CHECK(pair_of(0, 7) == SumPair{0, 7});
  CHECK(pair_of(19, 7) == SumPair{19, 7});
  CHECK(pair_of(-3, 7) == SumPair{-10, 7});
  CHECK(pair_of(-9, 7) == SumPair{-9, 7});
  CHECK_FALSE(pairs_disjoint(SumPair{5, 7}, SumPair{5, 7}));
  CHECK(pairs_disjoint(SumPair{5, 7}, SumPair{6, 7}));
  CHECK(pairs_disjoint(pair_of(19, 7), SumPair{5, 7}));
  CHECK_THROWS_AS(pairs_disjoint(SumPair{5, 7}, SumPair{5, 8}), MixedQ);

  for (std::int64_t big_q : {1, 7, 96}) {
    for (std::int64_t s = -300; s <= 300; ++s) {
      auto p = pair_of(s, big_q);
      CHECK(p.contains(s));
      CHECK(p.high() - p.low == big_q);
      CHECK(floor_mod(p.low, 2 * big_q) < big_q);
      for (std::int64_t t = s - 2 * big_q - 1; t <= s + 2 * big_q + 1; ++t) {
        const bool same = t == p.low || t == p.low + big_q;
        CHECK((pair_of(t, big_q) == p) == same);
      }
    }
  }
}

TEST_CASE("scale profiles") {
  auto paper = ScaleProfile::paper();
  CHECK(paper.lambda2(10) == doctest::Approx(std::pow(std::log(10.0), 2)));
  CHECK(paper.lambda8(10) == doctest::Approx(std::pow(std::log(10.0), 8)));
  CHECK(paper.relax == 1.0);
  auto desk = ScaleProfile::desk();
  CHECK(desk.lambda2(1000) == 5.0);
  CHECK(desk.lambda3(1000) == 2.0);
  desk.c3 = 0.5;
  CHECK(desk.lambda3(1000) == 1.0);
  CHECK(parse_profile_kind("paper") == ProfileKind::kPaper);
  CHECK_THROWS_AS(parse_profile_kind("fast"), InvalidParams);
  CHECK(log_delta(1) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("overrides and theorem bound") {
  auto base = compute_params(10, 4, ScaleProfile::desk());
  auto o = override_params(base, 6, 12);
  CHECK(o.q == 6);
  CHECK(o.big_q == 12);
  CHECK_THROWS_AS(override_params(base, 5, std::nullopt), InvalidParams);
  CHECK_THROWS_AS(override_params(base, 6, 15), InvalidParams);
  CHECK(base.theorem3_bound() ==
        doctest::Approx(4000.0 * (1 + 3 / (2 * std::log(10.0))) + 384));
  CHECK_THROWS_AS(int_pow(10, 30), ArithmeticOverflow);
}
