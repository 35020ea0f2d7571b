// Copyright 2026 The ExeDec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "exedec/dc_dsl.hpp"
#include "exedec/split.hpp"

namespace exedec {

struct DcEnumConfig {
  // Enumerated intermediate states (all layers) before BudgetExceeded.
  std::size_t max_states = 20'000'000;
};

inline constexpr std::size_t kDcMaxExamples = 4;
inline constexpr std::size_t kDcMaxInputs = 2;
inline constexpr std::size_t kDcMaxEnumLength = 5;
inline constexpr std::size_t kDcMaxListLength = 5;

// Shortest programs mapping the example inputs to the target outputs.
struct MinimalSolutions {
  int min_length = 0;             // 0 when no program up to max_length exists
  bool any_train = false;         // some shortest program is in the train distribution
  bool all_test = true;           // every shortest program is in the test distribution
  std::uint64_t num_programs = 0; // shortest programs found, after state merging
  std::optional<dc::Program> shortest;        // canonical variable names
  std::optional<dc::Program> shortest_train;
  std::size_t num_states = 0;
};

// Breadth-first over statement sequences without dead code or repeated
// values; such sequences cover every shortest program. Inputs are one row
// per example; lists longer than kDcMaxListLength are rejected.
MinimalSolutions find_minimal_solutions(std::span<const std::vector<dc::Value>> inputs,
                                        std::span<const dc::Value> outputs, int max_length,
                                        const GeneralizationSplit& split,
                                        const DcEnumConfig& config = {});

namespace detail {
// The enumerator's packed evaluator on a single example, for cross-checks.
std::optional<dc::Value> packed_apply(dc::Op op, const dc::Lambda& lambda,
                                      std::span<const dc::Value* const> operands);
}  // namespace detail

}  // namespace exedec
