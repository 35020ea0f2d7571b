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

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "exedec/common.hpp"
#include "exedec/taskgen.hpp"

namespace exedec {
namespace {

constexpr std::string_view kUpper = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
constexpr std::string_view kLower = "abcdefghijklmnopqrstuvwxyz";
constexpr std::string_view kDigits = "0123456789";
constexpr int kMaxSampledPosition = 20;
constexpr std::uint32_t kTagRfInputs = 1;
constexpr std::uint32_t kTagRfTask = 2;

template <class T>
const T& pick(Rng& rng, std::span<const T> xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

char pick_char(Rng& rng, std::string_view chars) {
  return chars[std::uniform_int_distribution<std::size_t>(0, chars.size() - 1)(rng)];
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

int random_index(Rng& rng) {
  const int i = uniform(rng, 1, rf::kMaxIndex);
  return coin(rng, 0.5) ? i : -i;
}

int random_position(Rng& rng) {
  const int k = uniform(rng, 1, kMaxSampledPosition);
  return coin(rng, 0.5) ? k : -k;
}

std::string non_space_delimiters() {
  std::string out;
  for (char c : rf::kDelimiters)
    if (c != ' ') out += c;
  return out;
}

std::string all_characters() {
  return std::string(kUpper) + std::string(kLower) + std::string(kDigits) + std::string(rf::kDelimiters);
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint32_t> tags) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  words.insert(words.end(), tags.begin(), tags.end());
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

bool SlotConstraint::admits(const SubprogramFeatures& f) const {
  return (!group || *group == f.group) && (!special || *special == f.special) &&
         (!extended || *extended == f.extended);
}

int sample_length(Rng& rng, const GeneralizationSplit& split, Side side) {
  const LengthRange& range = split.lengths(side);
  if (split.kind == SplitKind::NewOp && side == Side::Train && range.min <= 1) {
    if (coin(rng, 0.25)) return 1;
    return uniform(rng, std::max(2, range.min), range.max);
  }
  return uniform(rng, range.min, range.max);
}

std::vector<SlotConstraint> slot_plan(Rng& rng, const GeneralizationSplit& split, Side side, int length) {
  const auto n = static_cast<std::size_t>(length);
  std::vector<SlotConstraint> plan(n);
  const bool train = side == Side::Train;
  switch (split.kind) {
    case SplitKind::None:
    case SplitKind::Length: break;
    case SplitKind::ConceptMix:
      if (train) {
        const Concept c = coin(rng, 0.5) ? Concept::First : Concept::Second;
        for (auto& s : plan) s.group = c;
      } else {
        for (auto& s : plan) s.group = coin(rng, 0.5) ? Concept::First : Concept::Second;
        // Force both concepts to appear.
        const std::size_t a = static_cast<std::size_t>(uniform(rng, 0, length - 1));
        std::size_t b = static_cast<std::size_t>(uniform(rng, 0, length - 2));
        if (b >= a) ++b;
        plan[a].group = Concept::First;
        plan[b].group = Concept::Second;
      }
      break;
    case SplitKind::ConceptOrder: {
      const std::size_t head = train ? (n + 1) / 2 : n / 2;
      const Concept lead = train ? Concept::First : Concept::Second;
      const Concept tail = train ? Concept::Second : Concept::First;
      for (std::size_t j = 0; j < n; ++j) plan[j].group = j < head ? lead : tail;
      break;
    }
    case SplitKind::NewOp:
      if (train) {
        for (auto& s : plan) s.special = length == 1;
      } else {
        plan[static_cast<std::size_t>(uniform(rng, 0, length - 1))].special = true;
      }
      break;
    case SplitKind::OpFunctionality:
      if (train) {
        for (auto& s : plan) s.extended = false;
      } else {
        plan[static_cast<std::size_t>(uniform(rng, 0, length - 1))].extended = true;
      }
      break;
  }
  return plan;
}

// ---------------------------------------------------------------------------
// RobustFill sampling

std::vector<std::string> sample_rf_inputs(std::uint64_t seed) {
  Rng rng = make_rng(seed, {kTagRfInputs});
  return sample_rf_inputs(rng);
}

// Characters: 60% letters, 20% digits, 10% other delimiters, 10% space. Each
// string holds at least one letter.
std::vector<std::string> sample_rf_inputs(Rng& rng) {
  static const std::string kLetters = std::string(kUpper) + std::string(kLower);
  static const std::string kOther = non_space_delimiters();
  std::discrete_distribution<int> kind({60, 20, 10, 10});
  std::vector<std::string> out;
  for (std::size_t e = 0; e < RobustFill::kNumExamples; ++e) {
    const int len = uniform(rng, 1, static_cast<int>(kRfMaxInputLength));
    std::string s;
    for (int j = 0; j < len; ++j) {
      switch (kind(rng)) {
        case 0: s += pick_char(rng, kLetters); break;
        case 1: s += pick_char(rng, kDigits); break;
        case 2: s += pick_char(rng, kOther); break;
        default: s += ' '; break;
      }
    }
    if (std::none_of(s.begin(), s.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); }))
      s[static_cast<std::size_t>(uniform(rng, 0, len - 1))] = pick_char(rng, kLetters);
    out.push_back(std::move(s));
  }
  return out;
}

rf::Regex random_regex(Rng& rng) {
  const int k = uniform(rng, 0, rf::kNumRegexClasses);
  if (k == rf::kNumRegexClasses) return rf::Regex::delim(pick_char(rng, rf::kDelimiters));
  return rf::Regex::of(static_cast<rf::RegexClass>(k));
}

rf::Substring random_substring(Rng& rng) {
  switch (uniform(rng, 0, 4)) {
    case 0: return rf::SubStr{random_position(rng), random_position(rng)};
    case 1: {
      rf::GetSpan s;
      s.r1 = random_regex(rng);
      s.i1 = random_index(rng);
      s.b1 = coin(rng, 0.5) ? rf::Boundary::Start : rf::Boundary::End;
      s.r2 = random_regex(rng);
      s.i2 = random_index(rng);
      s.b2 = coin(rng, 0.5) ? rf::Boundary::Start : rf::Boundary::End;
      return s;
    }
    case 2: return rf::GetToken{random_regex(rng), random_index(rng)};
    case 3: return rf::GetUpto{random_regex(rng)};
    default: return rf::GetFrom{random_regex(rng)};
  }
}

rf::Modification random_modification(Rng& rng) {
  static const std::string kChars = all_characters();
  switch (uniform(rng, 0, 8)) {
    case 0: return rf::ToCase{static_cast<rf::Case>(uniform(rng, 0, 2))};
    case 1: return rf::Replace{pick_char(rng, rf::kDelimiters), pick_char(rng, rf::kDelimiters)};
    case 2: return rf::Trim{};
    case 3: return rf::GetFirst{random_regex(rng), random_index(rng)};
    case 4: return rf::GetAll{random_regex(rng)};
    case 5: return rf::Substitute{random_regex(rng), random_index(rng), pick_char(rng, kChars)};
    case 6: return rf::SubstituteAll{random_regex(rng), pick_char(rng, kChars)};
    case 7: return rf::Remove{random_regex(rng), random_index(rng)};
    default: return rf::RemoveAll{random_regex(rng)};
  }
}

rf::Compose random_compose(Rng& rng) {
  rf::Compose c;
  c.outer = random_modification(rng);
  if (coin(rng, 0.5)) c.inner = random_substring(rng);
  else c.inner = random_modification(rng);
  return c;
}

rf::Expression random_expression(Rng& rng, rf::Category category) {
  switch (category) {
    case rf::Category::Const: return rf::ConstStr{pick_char(rng, rf::kDelimiters)};
    case rf::Category::Substring: return random_substring(rng);
    case rf::Category::Modification: return random_modification(rng);
    case rf::Category::Compose: return random_compose(rng);
  }
  return rf::ConstStr{'.'};
}

rf::Expression random_expression(Rng& rng) {
  return random_expression(rng, static_cast<rf::Category>(uniform(rng, 0, 3)));
}

rf::Expression random_expression(Rng& rng, const SlotConstraint& slot) {
  static constexpr std::array kSecond = {rf::Category::Const, rf::Category::Modification};
  static constexpr std::array kNoCompose = {rf::Category::Const, rf::Category::Substring,
                                            rf::Category::Modification};
  for (int t = 0; t < 100000; ++t) {
    rf::Category cat;
    if (slot.special.value_or(false) || slot.extended.value_or(false) || slot.group == Concept::Excluded) {
      cat = rf::Category::Compose;
    } else if (slot.group == Concept::First) {
      cat = rf::Category::Substring;
    } else if (slot.group == Concept::Second) {
      cat = pick(rng, std::span<const rf::Category>(kSecond));
    } else if (slot.special == false) {
      cat = pick(rng, std::span<const rf::Category>(kNoCompose));
    } else {
      cat = static_cast<rf::Category>(uniform(rng, 0, 3));
    }
    rf::Expression e = random_expression(rng, cat);
    if (slot.admits(features_of(e))) return e;
  }
  throw std::logic_error("unsatisfiable subprogram constraint");
}

rf::Program random_rf_program(Rng& rng, int length) {
  rf::Program p;
  for (int j = 0; j < length; ++j) p.expressions.push_back(random_expression(rng));
  return p;
}

Task<RobustFill> sample_rf_task(std::uint64_t seed, SplitKind split_kind, Side side, const RfGenConfig& config) {
  const auto split = GeneralizationSplit::make(split_kind, Domain::RobustFill);
  Rng rng = make_rng(seed, {kTagRfTask, static_cast<std::uint32_t>(split_kind), static_cast<std::uint32_t>(side)});
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    const auto inputs = sample_rf_inputs(rng);
    const int length = sample_length(rng, split, side);
    const auto plan = slot_plan(rng, split, side, length);
    rf::Program program;
    std::vector<std::string> outputs(inputs.size());
    for (const SlotConstraint& slot : plan) {
      bool placed = false;
      for (int t = 0; t < config.expression_tries && !placed; ++t) {
        rf::Expression e = random_expression(rng, slot);
        std::vector<std::string> parts;
        for (const auto& in : inputs) {
          auto r = rf::execute(e, in);
          if (!r || r->empty()) break;
          parts.push_back(std::move(*r));
        }
        if (parts.size() != inputs.size()) continue;
        for (std::size_t i = 0; i < inputs.size(); ++i) outputs[i] += parts[i];
        program.expressions.push_back(std::move(e));
        placed = true;
      }
      if (!placed) break;
    }
    if (program.expressions.size() != static_cast<std::size_t>(length)) continue;
    if (!split.in_side(side, features_of(program))) continue;
    Task<RobustFill> task{split_kind, side, seed, {}, std::move(program)};
    for (std::size_t i = 0; i < inputs.size(); ++i) task.spec.examples.push_back({inputs[i], outputs[i]});
    return task;
  }
  throw GenerationTimeout("no RobustFill task after " + std::to_string(config.max_attempts) + " attempts");
}

bool verify_task(const Task<RobustFill>& task, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (task.spec.examples.size() != RobustFill::kNumExamples) return fail("expected 4 examples");
  if (!rf::well_formed(task.solution)) return fail("solution is not well formed");
  for (const auto& ex : task.spec.examples) {
    if (ex.input.empty() || ex.input.size() > kRfMaxInputLength) return fail("input length out of range");
    for (const auto& e : task.solution.expressions) {
      const auto r = rf::execute(e, ex.input);
      if (!r || r->empty()) return fail("expression " + rf::to_string(e) + " fails or is empty on an input");
    }
  }
  if (!satisfies<RobustFill>(task.solution, task.spec)) return fail("solution does not produce the outputs");
  const auto split = GeneralizationSplit::make(task.split, Domain::RobustFill);
  if (!split.in_side(task.side, features_of(task.solution))) return fail("solution outside its side");
  return true;
}

}  // namespace exedec
