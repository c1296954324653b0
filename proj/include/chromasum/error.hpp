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

#ifndef CHROMASUM_ERROR_HPP
#define CHROMASUM_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chromasum {

enum class ErrorKind {
  kParse,
  kDuplicateEdge,
  kLoopEdge,
  kGenerationBudgetExhausted,
  kArithmeticOverflow,
  kNonPositiveColor,
  kMixedQ,
  kInvalidParams,
  kBudgetExhausted,
  kIsolatedVertex,
  kIsolatedEdge,
  kInfeasiblePartition,
  kUnprocessedBackwardNeighbor,
  kNoAdmissibleSum,
  kNoAdmissibleAddition,
  kNoAvailableList,
  kListDegreeExceeded,
  kMissingCEdge,
  kInvariantViolation,
};

std::string_view to_string(ErrorKind kind);

// Base for every domain failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& message) : Error(K, message) {}
};

using DuplicateEdge = KindedError<ErrorKind::kDuplicateEdge>;
using LoopEdge = KindedError<ErrorKind::kLoopEdge>;
using GenerationBudgetExhausted =
    KindedError<ErrorKind::kGenerationBudgetExhausted>;
using ArithmeticOverflow = KindedError<ErrorKind::kArithmeticOverflow>;
using NonPositiveColor = KindedError<ErrorKind::kNonPositiveColor>;
using MixedQ = KindedError<ErrorKind::kMixedQ>;
using InvalidParams = KindedError<ErrorKind::kInvalidParams>;
using BudgetExhausted = KindedError<ErrorKind::kBudgetExhausted>;
using IsolatedVertex = KindedError<ErrorKind::kIsolatedVertex>;
using IsolatedEdge = KindedError<ErrorKind::kIsolatedEdge>;
using InfeasiblePartition = KindedError<ErrorKind::kInfeasiblePartition>;
using UnprocessedBackwardNeighbor =
    KindedError<ErrorKind::kUnprocessedBackwardNeighbor>;
using NoAdmissibleSum = KindedError<ErrorKind::kNoAdmissibleSum>;
using NoAdmissibleAddition = KindedError<ErrorKind::kNoAdmissibleAddition>;
using NoAvailableList = KindedError<ErrorKind::kNoAvailableList>;
using ListDegreeExceeded = KindedError<ErrorKind::kListDegreeExceeded>;
using MissingCEdge = KindedError<ErrorKind::kMissingCEdge>;
using InvariantViolation = KindedError<ErrorKind::kInvariantViolation>;

// Malformed input; line is 1-based, offset is the byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t offset)
      : Error(ErrorKind::kParse, "line " + std::to_string(line) + ", byte " +
                                     std::to_string(offset) + ": " + message),
        line_(line),
        offset_(offset) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

}  // namespace chromasum

#endif  // CHROMASUM_ERROR_HPP
