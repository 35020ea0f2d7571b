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

// The five compositional-generalization tasks (plus the no-generalization
// control) as membership predicates over programs.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <type_traits>
#include <vector>

#include "exedec/common.hpp"
#include "exedec/dc_dsl.hpp"
#include "exedec/rf_dsl.hpp"

namespace exedec {

enum class SplitKind : std::uint8_t {
  None,
  Length,
  ConceptMix,
  ConceptOrder,
  NewOp,
  OpFunctionality,
};
inline constexpr std::size_t kNumSplits = 6;

enum class Side : std::uint8_t { Train, Test };

// Stable identifiers: NONE, LENGTH, CONCEPT_MIX, CONCEPT_ORDER, NEW_OP,
// OP_FUNCTIONALITY.
std::string_view split_id(SplitKind k);
SplitKind parse_split(std::string_view id);
std::string_view side_id(Side s);
Side parse_side(std::string_view id);

// RobustFill: First = substring ops, Second = modifications and Const,
// Excluded = Compose. DeepCoder: First = first-order ops and Map, Second =
// Filter, Count, ZipWith, Scanl1.
enum class Concept : std::uint8_t { First, Second, Excluded };
std::string_view concept_name(Domain d, Concept c);  // S/M or F/H

Concept concept_of(const rf::Expression& e);
Concept concept_of(dc::Op op);

// What the split predicates need to know about one subprogram.
struct SubprogramFeatures {
  Concept group = Concept::First;
  bool special = false;   // Compose (RF) / Scanl1 (DC)
  bool extended = false;  // substring inside Compose (RF) / Scanl1 with (+), (*), (max) (DC)
  bool operator==(const SubprogramFeatures&) const = default;
};

SubprogramFeatures features_of(const rf::Expression& e);
SubprogramFeatures features_of(const dc::Statement& s);
std::vector<SubprogramFeatures> features_of(const rf::Program& p);
std::vector<SubprogramFeatures> features_of(const dc::Program& p);

struct LengthRange {
  int min = 1;
  int max = 1;
  bool contains(int n) const { return n >= min && n <= max; }
};

struct GeneralizationSplit {
  SplitKind kind = SplitKind::None;
  Domain domain = Domain::RobustFill;
  // Lengths that can satisfy each side's predicate.
  LengthRange train_lengths;
  LengthRange test_lengths;

  static GeneralizationSplit make(SplitKind kind, Domain domain);

  bool in_train(std::span<const SubprogramFeatures> program) const;
  bool in_test(std::span<const SubprogramFeatures> program) const;
  bool in_side(Side side, std::span<const SubprogramFeatures> program) const {
    return side == Side::Train ? in_train(program) : in_test(program);
  }
  const LengthRange& lengths(Side side) const {
    return side == Side::Train ? train_lengths : test_lengths;
  }
  int max_length() const { return std::max(train_lengths.max, test_lengths.max); }

  template <class Program>
    requires(!std::is_convertible_v<const Program&, std::span<const SubprogramFeatures>>)
  bool in_train(const Program& p) const {
    return in_train(features_of(p));
  }
  template <class Program>
    requires(!std::is_convertible_v<const Program&, std::span<const SubprogramFeatures>>)
  bool in_test(const Program& p) const {
    return in_test(features_of(p));
  }
};

}  // namespace exedec
