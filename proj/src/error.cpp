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

namespace chromasum {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kDuplicateEdge: return "DuplicateEdge";
    case ErrorKind::kLoopEdge: return "LoopEdge";
    case ErrorKind::kGenerationBudgetExhausted: return "GenerationBudgetExhausted";
    case ErrorKind::kArithmeticOverflow: return "ArithmeticOverflow";
    case ErrorKind::kNonPositiveColor: return "NonPositiveColor";
    case ErrorKind::kMixedQ: return "MixedQ";
    case ErrorKind::kInvalidParams: return "InvalidParams";
    case ErrorKind::kBudgetExhausted: return "BudgetExhausted";
    case ErrorKind::kIsolatedVertex: return "IsolatedVertex";
    case ErrorKind::kIsolatedEdge: return "IsolatedEdge";
    case ErrorKind::kInfeasiblePartition: return "InfeasiblePartition";
    case ErrorKind::kUnprocessedBackwardNeighbor: return "UnprocessedBackwardNeighbor";
    case ErrorKind::kNoAdmissibleSum: return "NoAdmissibleSum";
    case ErrorKind::kNoAdmissibleAddition: return "NoAdmissibleAddition";
    case ErrorKind::kNoAvailableList: return "NoAvailableList";
    case ErrorKind::kListDegreeExceeded: return "ListDegreeExceeded";
    case ErrorKind::kMissingCEdge: return "MissingCEdge";
    case ErrorKind::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace chromasum
