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

#ifndef CHROMASUM_COLORING_HPP
#define CHROMASUM_COLORING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chromasum/graph.hpp"

namespace chromasum {

using Color = std::int64_t;

// Colour of every edge of a graph, indexed by EdgeId. Colours are >= 1.
struct EdgeColoring {
  std::vector<Color> colors;

  Color operator[](EdgeId e) const { return colors[e]; }
  Color& operator[](EdgeId e) { return colors[e]; }
  std::size_t size() const noexcept { return colors.size(); }

  friend bool operator==(const EdgeColoring&, const EdgeColoring&) = default;
};

// Weighted degree of every vertex: the sum of its incident colours.
struct SumProfile {
  std::vector<std::int64_t> sums;

  std::int64_t operator[](Vertex v) const { return sums[v]; }
  friend bool operator==(const SumProfile&, const SumProfile&) = default;
};

// Throws InvalidParams when c is not total on g, NonPositiveColor on c < 1.
void require_total(const Graph& g, const EdgeColoring& c);

SumProfile weighted_degrees(const Graph& g, const EdgeColoring& c);

// Misra-Gries fan/Kempe-chain construction; colours in 1..max_degree+1.
EdgeColoring vizing_color(const Graph& g);

EdgeColoring shift(const EdgeColoring& c, Color offset);

enum class ViolationKind { kColorClash, kResidueClash, kSumConflict };

std::string_view to_string(ViolationKind kind);

// For clashes a and b are edge ids; for sum conflicts they are vertices.
struct Violation {
  ViolationKind kind;
  std::uint32_t a;
  std::uint32_t b;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ModCheck {
  std::int64_t modulus;
  bool proper;

  friend bool operator==(const ModCheck&, const ModCheck&) = default;
};

struct VerifyReport {
  bool proper = true;
  std::optional<ModCheck> proper_mod;
  bool distinguishing_r = true;
  int r = 1;
  std::vector<Violation> violations;
  Color max_color = 0;
  Color min_color = 0;

  bool ok() const { return proper && distinguishing_r; }
  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

VerifyReport verify(const Graph& g, const EdgeColoring& c, int r,
                    std::optional<std::int64_t> modulus = std::nullopt);
VerifyReport verify(const Graph& g, const EdgeColoring& c,
                    const RNeighborhoodCache& neighborhoods,
                    std::optional<std::int64_t> modulus = std::nullopt);

// True when no two adjacent edges have congruent colours modulo `modulus`.
bool proper_modulo(const Graph& g, const EdgeColoring& c, std::int64_t modulus);

// "u v color" per line in canonical edge order.
std::string to_text(const Graph& g, const EdgeColoring& c);
EdgeColoring parse_coloring(const Graph& g, std::string_view text);

std::string to_json(const VerifyReport& report);

}  // namespace chromasum

#endif  // CHROMASUM_COLORING_HPP
