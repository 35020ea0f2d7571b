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

// Train/test task construction for both domains.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "exedec/dc_enumerator.hpp"
#include "exedec/domain.hpp"
#include "exedec/split.hpp"
#include "exedec/task.hpp"

namespace exedec {

using Rng = std::mt19937_64;

// Deterministic generator for (seed, purpose tag, ...) tuples.
Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint32_t> tags);

// What one subprogram position must look like. Unset fields are free.
struct SlotConstraint {
  std::optional<Concept> group;
  std::optional<bool> special;
  std::optional<bool> extended;

  bool admits(const SubprogramFeatures& f) const;
};

// Program length for a side: uniform over its range, except that one
// quarter of NEW_OP training programs have length 1.
int sample_length(Rng& rng, const GeneralizationSplit& split, Side side);

// Per-position constraints; any program meeting them is in the side's
// distribution.
std::vector<SlotConstraint> slot_plan(Rng& rng, const GeneralizationSplit& split, Side side, int length);

// ---------------------------------------------------------------------------
// RobustFill

inline constexpr std::size_t kRfMaxInputLength = 20;

struct RfGenConfig {
  int max_attempts = 1000;     // whole-task rejections before GenerationTimeout
  int expression_tries = 100;  // per subprogram slot within one attempt
};

std::vector<std::string> sample_rf_inputs(std::uint64_t seed);
std::vector<std::string> sample_rf_inputs(Rng& rng);

// Uniform over the grammar, with positions drawn from [-20, -1] U [1, 20].
rf::Regex random_regex(Rng& rng);
rf::Substring random_substring(Rng& rng);
rf::Modification random_modification(Rng& rng);
rf::Compose random_compose(Rng& rng);
rf::Expression random_expression(Rng& rng);
rf::Expression random_expression(Rng& rng, rf::Category category);
rf::Expression random_expression(Rng& rng, const SlotConstraint& slot);
rf::Program random_rf_program(Rng& rng, int length);

// Throws GenerationTimeout.
Task<RobustFill> sample_rf_task(std::uint64_t seed, SplitKind split, Side side,
                                const RfGenConfig& config = {});

// ---------------------------------------------------------------------------
// DeepCoder

struct DcGenConfig {
  int max_attempts = 2000;     // sampled programs before GenerationTimeout
  int statement_tries = 200;   // per statement within one attempt
  DcEnumConfig enumeration;
};

inline constexpr dc::Int kDcInputBound = 50;
inline constexpr dc::Int kDcMaxIntInput = 5;

// 3 examples, each holding 1 or 2 input values (first a list; the optional
// second a list or a small integer).
std::vector<std::vector<dc::Value>> sample_dc_inputs(std::uint64_t seed);
std::vector<std::vector<dc::Value>> sample_dc_inputs(Rng& rng);

// Uniform over operations whose operand sorts are available and whose
// features can satisfy `slot`, then over lambdas and operands. Operands are
// variable positions; the target is the next position.
std::optional<dc::Statement> random_statement(Rng& rng, std::span<const dc::Type> var_types,
                                              const SlotConstraint& slot = {});
dc::Program random_dc_program(Rng& rng, std::span<const dc::Type> input_types, int length);

// Shortest-solution test for outputs produced by a length-`length` program
// on `inputs`: nothing shorter solves them, and on the test side every
// solution of that length is in the test distribution.
bool dc_minimality_holds(std::span<const std::vector<dc::Value>> inputs, std::span<const dc::Value> outputs,
                         int length, const GeneralizationSplit& split, Side side,
                         const DcEnumConfig& config = {});

// Throws GenerationTimeout.
Task<DeepCoder> build_dc_task(std::uint64_t seed, SplitKind split, Side side,
                              const DcGenConfig& config = {});

bool verify_dc_minimality(const Task<DeepCoder>& task, const DcEnumConfig& config = {});

// Task invariants: example counts, solution executes to the outputs, side
// predicate holds; DeepCoder additionally checks minimality when asked.
bool verify_task(const Task<RobustFill>& task, std::string* why = nullptr);
bool verify_task(const Task<DeepCoder>& task, bool check_minimality, std::string* why = nullptr);

}  // namespace exedec
