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

// Per-domain specification types and the domain-specific pieces of the
// decomposition loop: executing one subprogram against the current
// specification, the specification update, and program assembly.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "exedec/common.hpp"
#include "exedec/dc_dsl.hpp"
#include "exedec/rf_dsl.hpp"
#include "exedec/split.hpp"

namespace exedec {

namespace rf {

// `output` is the part of the task output that remains to be produced.
struct Example {
  std::string input;
  std::string output;
  bool operator==(const Example&) const = default;
};

struct Spec {
  std::vector<Example> examples;
  bool operator==(const Spec&) const = default;
};

}  // namespace rf

namespace dc {

// `state` holds the values of x0, x1, ... for one example; the first
// `num_inputs` of them are program inputs.
struct Example {
  std::vector<Value> state;
  Value output;
  bool operator==(const Example&) const = default;
};

struct Spec {
  std::size_t num_inputs = 1;
  std::vector<Example> examples;
  bool operator==(const Spec&) const = default;
};

}  // namespace dc

// The result did not leave a valid specification; `example` is the index of
// the first offending example.
struct InvalidUpdate {
  std::size_t example = 0;
};

struct RobustFill {
  static constexpr Domain kDomain = Domain::RobustFill;
  static constexpr int kDefaultMaxSteps = 10;
  static constexpr std::size_t kNumExamples = 4;

  using Value = std::string;
  using Subprogram = rf::Expression;
  using Program = rf::Program;
  using Spec = rf::Spec;

  static std::optional<Value> execute(const Subprogram& s, const Spec& spec, std::size_t example) {
    return rf::execute(s, spec.examples[example].input);
  }

  // Removes each result from the front of the remaining output.
  static std::variant<Spec, InvalidUpdate> update_specification(const Spec& spec,
                                                                std::span<const Value> results) {
    Spec next = spec;
    for (std::size_t i = 0; i < spec.examples.size(); ++i) {
      if (!spec.examples[i].output.starts_with(results[i])) return InvalidUpdate{i};
      next.examples[i].output.erase(0, results[i].size());
    }
    return next;
  }

  static Program combine(std::span<const Subprogram> parts, std::size_t /*num_inputs*/) {
    return Program{{parts.begin(), parts.end()}};
  }

  static std::vector<Subprogram> subprograms(const Program& p) { return p.expressions; }
  static std::size_t num_inputs(const Spec&) { return 1; }

  // Execution of a whole program on example `i` of an original spec.
  static std::optional<Value> run(const Program& p, const Spec& spec, std::size_t i) {
    return rf::execute(p, spec.examples[i].input);
  }

  static std::string to_text(const Subprogram& s) { return rf::to_string(s); }
  static std::string to_text(const Program& p) { return rf::to_string(p); }
  static Subprogram parse_subprogram(std::string_view text) { return rf::parse_expression(text); }
  static Program parse_program(std::string_view text) { return rf::parse_program(text); }
  static std::string value_text(const Value& v) { return rf::quote(v); }
  static Value parse_value(std::string_view text) { return rf::unquote(text); }
};

struct DeepCoder {
  static constexpr Domain kDomain = Domain::DeepCoder;
  static constexpr int kDefaultMaxSteps = 5;
  static constexpr std::size_t kNumExamples = 3;

  using Value = dc::Value;
  using Subprogram = dc::Statement;
  using Program = dc::Program;
  using Spec = dc::Spec;

  // Executes the right-hand side over the example's state; the statement's
  // own target is ignored.
  static std::optional<Value> execute(const Subprogram& s, const Spec& spec, std::size_t example) {
    const auto& state = spec.examples[example].state;
    const dc::OpSignature& sig = dc::signature(s.op);
    if (s.args.size() != sig.operands.size()) return std::nullopt;
    std::array<const Value*, 2> operands{};
    for (std::size_t j = 0; j < s.args.size(); ++j) {
      if (s.args[j] < 0 || static_cast<std::size_t>(s.args[j]) >= state.size()) return std::nullopt;
      operands[j] = &state[static_cast<std::size_t>(s.args[j])];
    }
    auto v = dc::apply(s.op, s.lambda, std::span(operands.data(), s.args.size()));
    if (!v || !dc::in_range(*v)) return std::nullopt;
    return v;
  }

  // Binds each result to the next variable; outputs are unchanged.
  static std::variant<Spec, InvalidUpdate> update_specification(const Spec& spec,
                                                                std::span<const Value> results) {
    Spec next = spec;
    for (std::size_t i = 0; i < spec.examples.size(); ++i)
      next.examples[i].state.push_back(results[i]);
    return next;
  }

  static Program combine(std::span<const Subprogram> parts, std::size_t num_inputs) {
    Program p;
    for (std::size_t j = 0; j < num_inputs; ++j) p.inputs.push_back(static_cast<int>(j));
    int next = static_cast<int>(num_inputs);
    for (const Subprogram& s : parts) {
      Subprogram t = s;
      t.target = next++;
      p.statements.push_back(std::move(t));
    }
    return p;
  }

  static std::vector<Subprogram> subprograms(const Program& p) {
    return dc::canonicalize(p).statements;
  }
  static std::size_t num_inputs(const Spec& spec) { return spec.num_inputs; }

  static std::optional<Value> run(const Program& p, const Spec& spec, std::size_t i) {
    const auto& state = spec.examples[i].state;
    return dc::execute(p, std::span(state.data(), spec.num_inputs));
  }

  static std::string to_text(const Subprogram& s) { return dc::rhs_string(s); }
  static std::string to_text(const Program& p) { return dc::to_string(p); }
  static Subprogram parse_subprogram(std::string_view text) { return dc::parse_statement(text); }
  static Program parse_program(std::string_view text) { return dc::parse_program(text); }
  static std::string value_text(const Value& v) { return dc::to_string(v); }
  static Value parse_value(std::string_view text) { return dc::parse_value(text); }
};

// Per-example values written as "v1 | v2 | ...", the subgoal text format.
template <class D>
std::string values_text(std::span<const typename D::Value> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += " | ";
    out += D::value_text(values[i]);
  }
  return out;
}

// Inverse of values_text. Throws ParseError.
template <class D>
std::vector<typename D::Value> parse_values_text(std::string_view text) {
  std::vector<typename D::Value> out;
  std::size_t start = 0;
  bool in_quotes = false;
  for (std::size_t j = 0; j <= text.size(); ++j) {
    if (j < text.size()) {
      const char c = text[j];
      if (c == '\\' && in_quotes) {
        ++j;
        continue;
      }
      if (c == '"') in_quotes = !in_quotes;
      if (c != '|' || in_quotes) continue;
    }
    auto part = text.substr(start, j - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    try {
      out.push_back(D::parse_value(part));
    } catch (const ParseError& e) {
      throw ParseError("bad value in subgoal list", start + e.position());
    }
    start = j + 1;
  }
  return out;
}

// The specification with outputs replaced by subgoals: the problem handed to
// a synthesizer.
template <class D>
typename D::Spec with_outputs(const typename D::Spec& spec, std::span<const typename D::Value> outputs) {
  typename D::Spec out = spec;
  for (std::size_t i = 0; i < out.examples.size(); ++i) out.examples[i].output = outputs[i];
  return out;
}

template <class D>
std::vector<typename D::Value> outputs_of(const typename D::Spec& spec) {
  std::vector<typename D::Value> out;
  for (const auto& e : spec.examples) out.push_back(e.output);
  return out;
}

}  // namespace exedec
