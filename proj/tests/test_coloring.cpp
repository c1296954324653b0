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

#include <limits>
#include <set>

#include "chromasum/coloring.hpp"
#include "chromasum/error.hpp"
#include "chromasum/generate.hpp"
#include "chromasum/graph_io.hpp"
#include "chromasum/rng.hpp"
#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"

using namespace chromasum;

namespace {

EdgeColoring colors(std::vector<Color> c) { return EdgeColoring{std::move(c)}; }

}  // namespace

TEST_CASE("weighted degrees") {
  Graph p3 = path_graph(3);
  CHECK(weighted_degrees(p3, colors({1, 2})).sums ==
        std::vector<std::int64_t>{1, 3, 2});
  // Edges of K3 in canonical order: 01, 02, 12.
  CHECK(weighted_degrees(complete_graph(3), colors({1, 2, 3})).sums ==
        std::vector<std::int64_t>{3, 4, 5});
  Graph k2(2, {{0, 1}});
  CHECK(weighted_degrees(k2, colors({7})).sums ==
        std::vector<std::int64_t>{7, 7});
  const Color huge = std::numeric_limits<Color>::max() / 2 + 1;
  CHECK_THROWS_AS(weighted_degrees(p3, colors({huge, huge})),
                  ArithmeticOverflow);
  CHECK_THROWS_AS(require_total(p3, colors({1})), InvalidParams);
  CHECK_THROWS_AS(require_total(p3, colors({1, 0})), NonPositiveColor);
}

TEST_CASE("vizing on named graphs") {
  Graph c4 = cycle_graph(4);
  auto a = vizing_color(c4);
  CHECK(oracle::proper(c4, a.colors));
  CHECK(*std::max_element(a.colors.begin(), a.colors.end()) <= 3);

  Graph k3 = complete_graph(3);
  auto b = vizing_color(k3);
  CHECK(oracle::proper(k3, b.colors));
  std::set<Color> distinct(b.colors.begin(), b.colors.end());
  CHECK(distinct.size() == 3);

  Graph pet = petersen_graph();
  auto c = vizing_color(pet);
  CHECK(verify(pet, c, 1).proper);
  CHECK(*std::max_element(c.colors.begin(), c.colors.end()) <= 4);
}

TEST_CASE("vizing is proper with at most Delta+1 colours on random graphs") {
  Rng rng = make_rng(11);
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = 2 + uniform_below(rng, 120);
    const double p = 0.02 + 0.5 * uniform_unit(rng);
    Graph g = gnp(n, p, rng());
    auto c = vizing_color(g);
    REQUIRE(c.size() == g.edge_count());
    CHECK(oracle::proper(g, c.colors));
    for (Color x : c.colors) {
      CHECK(x >= 1);
      CHECK(x <= static_cast<Color>(g.max_degree()) + 1);
    }
  }
}

TEST_CASE("shift") {
  Graph k3 = complete_graph(3);
  CHECK(shift(colors({1, 2, 3}), 10).colors == std::vector<Color>{11, 12, 13});
  CHECK(shift(colors({1, 2, 3}), 0) == colors({1, 2, 3}));
  CHECK_THROWS_AS(shift(colors({1, 2, 3}), -1), NonPositiveColor);
  // A multiple of the modulus keeps properness modulo it.
  Graph g = random_regular(30, 5, 2);
  auto c = vizing_color(g);
  for (std::int64_t m : {7, 9, 96}) {
    CHECK(proper_modulo(g, shift(c, 3 * m), m) == proper_modulo(g, c, m));
  }
}

TEST_CASE("verify examples") {
  Graph p3 = path_graph(3);
  auto ok = verify(p3, colors({1, 2}), 2);
  CHECK(ok.proper);
  CHECK(ok.distinguishing_r);
  CHECK(ok.max_color == 2);
  CHECK(ok.min_color == 1);
  CHECK(ok.violations.empty());

  auto bad = verify(p3, colors({2, 2}), 2);
  CHECK_FALSE(bad.proper);

  Graph c4 = cycle_graph(4);
  // Canonical order 01, 03, 12, 23: alternating around the cycle.
  auto alt = verify(c4, colors({1, 2, 2, 1}), 1);
  CHECK(alt.proper);
  CHECK_FALSE(alt.distinguishing_r);
  CHECK(alt.violations.size() == 4);
  for (const auto& v : alt.violations) {
    CHECK(v.kind == ViolationKind::kSumConflict);
  }

  auto mod = verify(p3, colors({1, 4}), 1, 3);
  REQUIRE(mod.proper_mod.has_value());
  CHECK_FALSE(mod.proper_mod->proper);
  CHECK(mod.proper);
}

TEST_CASE("verify agrees with the brute-force definition") {
  Rng rng = make_rng(5);
  for (int i = 0; i < 200; ++i) {
    Graph g = gnp(3 + uniform_below(rng, 10), 0.4, rng());
    if (g.edge_count() == 0) continue;
    std::vector<Color> c(g.edge_count());
    for (auto& x : c) x = 1 + static_cast<Color>(uniform_below(rng, 5));
    const int r = 1 + static_cast<int>(uniform_below(rng, 3));
    const std::int64_t m = 2 + static_cast<std::int64_t>(uniform_below(rng, 3));
    auto rep = verify(g, EdgeColoring{c}, r, m);
    CHECK(rep.proper == oracle::proper(g, c));
    CHECK(rep.proper_mod->proper == oracle::proper(g, c, m));
    CHECK(rep.distinguishing_r ==
          oracle::distinguishing(g, c, r, oracle::distances(g)));
    CHECK(rep == verify(g, EdgeColoring{c}, r, m));
  }
}

TEST_CASE("colouring text and report json") {
  Graph p3 = path_graph(3);
  auto c = colors({5, 9});
  const std::string text = to_text(p3, c);
  CHECK(text == "0 1 5\n1 2 9\n");
  CHECK(parse_coloring(p3, text) == c);
  CHECK_THROWS_AS(parse_coloring(p3, "0 1 5\n"), ParseError);
  CHECK_THROWS_AS(parse_coloring(p3, "0 2 5\n1 2 9\n"), ParseError);

  auto j = nlohmann::json::parse(to_json(verify(p3, colors({1, 1}), 2)));
  CHECK(j["proper"] == false);
  CHECK(j["distinguishing_r"] == false);
  CHECK(j["r"] == 2);
  CHECK(j["violating_pairs"].size() == 2);
  CHECK(j["proper_mod"].is_null());
}
