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

#include "exedec/split.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <string>

namespace exedec {
namespace {

constexpr std::array<std::string_view, kNumSplits> kSplitIds = {
    "NONE", "LENGTH", "CONCEPT_MIX", "CONCEPT_ORDER", "NEW_OP", "OP_FUNCTIONALITY"};

bool all_of(std::span<const SubprogramFeatures> p, auto pred) {
  return std::all_of(p.begin(), p.end(), pred);
}
bool any_of(std::span<const SubprogramFeatures> p, auto pred) {
  return std::any_of(p.begin(), p.end(), pred);
}

bool has_concept(const SubprogramFeatures& f, Concept c) { return f.group == c; }

bool no_excluded(std::span<const SubprogramFeatures> p) {
  return all_of(p, [](const auto& f) { return f.group != Concept::Excluded; });
}

// Positions [0, split) carry `head`, the rest carry `tail`.
bool concept_blocks(std::span<const SubprogramFeatures> p, std::size_t split, Concept head,
                    Concept tail) {
  for (std::size_t j = 0; j < p.size(); ++j)
    if (p[j].group != (j < split ? head : tail)) return false;
  return true;
}

}  // namespace

std::string_view split_id(SplitKind k) { return kSplitIds[static_cast<std::size_t>(k)]; }

SplitKind parse_split(std::string_view id) {
  std::string upper(id);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (std::size_t j = 0; j < kSplitIds.size(); ++j)
    if (kSplitIds[j] == upper) return static_cast<SplitKind>(j);
  throw std::invalid_argument("unknown split '" + std::string(id) + "'");
}

std::string_view side_id(Side s) { return s == Side::Train ? "train" : "test"; }

Side parse_side(std::string_view id) {
  if (id == "train") return Side::Train;
  if (id == "test") return Side::Test;
  throw std::invalid_argument("unknown side '" + std::string(id) + "'");
}

std::string_view concept_name(Domain d, Concept c) {
  if (c == Concept::Excluded) return "-";
  if (d == Domain::RobustFill) return c == Concept::First ? "S" : "M";
  return c == Concept::First ? "F" : "H";
}

Concept concept_of(const rf::Expression& e) {
  switch (rf::category_of(e)) {
    case rf::Category::Substring: return Concept::First;
    case rf::Category::Compose: return Concept::Excluded;
    default: return Concept::Second;
  }
}

Concept concept_of(dc::Op op) {
  switch (op) {
    case dc::Op::Filter:
    case dc::Op::Count:
    case dc::Op::ZipWith:
    case dc::Op::Scanl1: return Concept::Second;
    default: return Concept::First;
  }
}

SubprogramFeatures features_of(const rf::Expression& e) {
  SubprogramFeatures f;
  f.group = concept_of(e);
  if (const auto* c = std::get_if<rf::Compose>(&e)) {
    f.special = true;
    f.extended = std::holds_alternative<rf::Substring>(c->inner);
  }
  return f;
}

SubprogramFeatures features_of(const dc::Statement& s) {
  SubprogramFeatures f;
  f.group = concept_of(s.op);
  if (s.op == dc::Op::Scanl1) {
    f.special = true;
    const auto* l = std::get_if<dc::IntPair>(&s.lambda);
    f.extended = l != nullptr && (*l == dc::IntPair::Add || *l == dc::IntPair::Multiply ||
                                  *l == dc::IntPair::Max);
  }
  return f;
}

std::vector<SubprogramFeatures> features_of(const rf::Program& p) {
  std::vector<SubprogramFeatures> out;
  for (const auto& e : p.expressions) out.push_back(features_of(e));
  return out;
}

std::vector<SubprogramFeatures> features_of(const dc::Program& p) {
  std::vector<SubprogramFeatures> out;
  for (const auto& s : p.statements) out.push_back(features_of(s));
  return out;
}

GeneralizationSplit GeneralizationSplit::make(SplitKind kind, Domain domain) {
  const bool rf = domain == Domain::RobustFill;
  const int max_len = rf ? 6 : 4;
  GeneralizationSplit s{kind, domain, {1, max_len}, {1, max_len}};
  switch (kind) {
    case SplitKind::None:
    case SplitKind::OpFunctionality: break;
    case SplitKind::Length:
      s.test_lengths = rf ? LengthRange{7, 10} : LengthRange{5, 5};
      break;
    case SplitKind::ConceptMix:
    case SplitKind::ConceptOrder:
      if (rf) s.train_lengths = {2, 6};
      s.test_lengths = {2, max_len};
      break;
    case SplitKind::NewOp:
      s.test_lengths = {2, max_len};
      break;
  }
  return s;
}

bool GeneralizationSplit::in_train(std::span<const SubprogramFeatures> p) const {
  const int n = static_cast<int>(p.size());
  if (!train_lengths.contains(n)) return false;
  switch (kind) {
    case SplitKind::None:
    case SplitKind::Length: return true;
    case SplitKind::ConceptMix:
      return no_excluded(p) && (all_of(p, [](const auto& f) { return has_concept(f, Concept::First); }) ||
                                all_of(p, [](const auto& f) { return has_concept(f, Concept::Second); }));
    case SplitKind::ConceptOrder:
      return concept_blocks(p, (p.size() + 1) / 2, Concept::First, Concept::Second);
    case SplitKind::NewOp:
      if (n == 1) return p[0].special;
      return !any_of(p, [](const auto& f) { return f.special; });
    case SplitKind::OpFunctionality:
      return !any_of(p, [](const auto& f) { return f.extended; });
  }
  return false;
}

bool GeneralizationSplit::in_test(std::span<const SubprogramFeatures> p) const {
  const int n = static_cast<int>(p.size());
  if (!test_lengths.contains(n)) return false;
  switch (kind) {
    case SplitKind::None:
    case SplitKind::Length: return true;
    case SplitKind::ConceptMix:
      return no_excluded(p) && any_of(p, [](const auto& f) { return has_concept(f, Concept::First); }) &&
             any_of(p, [](const auto& f) { return has_concept(f, Concept::Second); });
    case SplitKind::ConceptOrder:
      // The train concept sequence reversed: floor(n/2) Second, then First.
      return n >= 2 && concept_blocks(p, p.size() / 2, Concept::Second, Concept::First);
    case SplitKind::NewOp:
      return any_of(p, [](const auto& f) { return f.special; });
    case SplitKind::OpFunctionality:
      return any_of(p, [](const auto& f) { return f.extended; });
  }
  return false;
}

}  // namespace exedec
